#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "minla/errors.hpp"
#include "minla/permutation.hpp"

namespace minla {

/// Shape of every revealed graph: disjoint cliques or disjoint simple paths.
enum class Model { cliques, lines };

std::string_view to_string(Model model) noexcept;
std::optional<Model> parse_model(std::string_view text) noexcept;

/// One reveal: the components holding `u` and `v` merge. For lines this is
/// the new edge u-v, and both must be path endpoints.
struct RevealEvent {
    NodeId u = 0;
    NodeId v = 0;

    friend bool operator==(const RevealEvent&, const RevealEvent&) = default;
};

/// An instance: the fixed starting permutation and the reveal order.
struct RevealTrace {
    Model model = Model::lines;
    std::size_t n = 0;
    Permutation pi0;
    std::vector<RevealEvent> events;

    std::size_t k() const noexcept { return events.size(); }
};

/// Components of one revealed graph.
///
/// `components[c]` lists the nodes of component `c`. For lines this is the
/// path order from one endpoint to the other; for cliques the ids ascend.
/// Components are ordered by their smallest node id.
struct ComponentPartition {
    Model model = Model::lines;
    std::vector<std::size_t> component_of;
    std::vector<std::vector<NodeId>> components;

    std::size_t node_count() const noexcept { return component_of.size(); }
};

/// Incremental component tracker: union by size, member sequences merged
/// from the smaller side.
///
/// Each component keeps its nodes as a sequence. For lines a merge of u's
/// and v's components yields (u's path ending at u) ++ (v's path starting at
/// v); orientation flips are O(1) through a per-component flag. For cliques
/// the sequence is just the concatenation of the two member lists.
class ComponentTracker {
public:
    using ComponentId = NodeId;

    struct Merge {
        ComponentId x = 0;  // component that held u
        ComponentId z = 0;  // component that held v
        ComponentId merged = 0;
        std::size_t x_size = 0;
        std::size_t z_size = 0;
    };

    ComponentTracker() = default;
    ComponentTracker(Model model, std::size_t n);

    Model model() const noexcept { return model_; }
    std::size_t node_count() const noexcept { return parent_.size(); }
    std::size_t component_count() const noexcept { return components_; }

    ComponentId find(NodeId v) const;
    bool same(NodeId a, NodeId b) const { return find(a) == find(b); }
    std::size_t size_of(ComponentId c) const { return seq_[c].size(); }

    /// Node sequence of component `c` (path order for lines).
    std::vector<NodeId> nodes(ComponentId c) const;
    NodeId front(ComponentId c) const;
    NodeId back(ComponentId c) const;
    /// The `i`-th node of component `c` in sequence order.
    NodeId at(ComponentId c, std::size_t i) const {
        return flipped_[c] ? seq_[c][seq_[c].size() - 1 - i] : seq_[c][i];
    }
    bool is_endpoint(NodeId v) const;

    /// Merges the components of `u` and `v`. Throws InvalidInput when they
    /// already share a component or, for lines, when either is not an
    /// endpoint.
    Merge merge(NodeId u, NodeId v);

    /// Current component representatives, ascending.
    std::vector<ComponentId> roots() const;

    ComponentPartition snapshot() const;

private:
    void orient(ComponentId c, NodeId last_or_first, bool want_last);

    Model model_ = Model::lines;
    std::vector<NodeId> parent_;
    std::vector<std::deque<NodeId>> seq_;
    std::vector<bool> flipped_;
    std::size_t components_ = 0;
};

/// First problem found while replaying a trace.
struct TraceDiagnostic {
    static constexpr std::size_t header = static_cast<std::size_t>(-1);

    std::size_t event_index = header;  // `header` for problems before any event
    std::string reason;
};

std::optional<TraceDiagnostic> validate_trace(const RevealTrace& trace);

/// Components after the first `step` events.
ComponentPartition replay_components(const RevealTrace& trace, std::size_t step);

/// Parse failure carrying the offending 1-based line.
class TraceParseError : public InvalidInput {
public:
    TraceParseError(std::size_t line, const std::string& what)
        : InvalidInput("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

RevealTrace parse_trace(std::string_view text);
std::string emit_trace(const RevealTrace& trace);

RevealTrace load_trace(const std::string& path);
void save_trace(const RevealTrace& trace, const std::string& path);

}  // namespace minla
