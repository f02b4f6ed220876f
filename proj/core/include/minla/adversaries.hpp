#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "minla/instance.hpp"
#include "minla/permutation.hpp"

namespace minla {

struct TreeAdversaryConfig {
    unsigned q = 1;  // tree depth; n = 2^q
    std::uint64_t seed = 0;

    std::size_t n() const noexcept { return std::size_t{1} << q; }
};

/// Requests of the balanced-binary-tree construction over the leaf order
/// `leaves`, level by level bottom-up: for each internal node, the rightmost
/// leaf under its left child paired with the leftmost leaf under its right
/// child. Throws InvalidInput unless |leaves| is a power of two >= 2.
std::vector<RevealEvent> tree_requests(std::span<const NodeId> leaves);

/// Uniform random leaf order drawn from `cfg.seed`.
std::vector<NodeId> tree_leaf_order(const TreeAdversaryConfig& cfg);

/// Lines trace whose final graph is the single path P = tree_leaf_order(cfg).
RevealTrace tree_adversary(const TreeAdversaryConfig& cfg, const Permutation& pi0);
RevealTrace tree_adversary(const TreeAdversaryConfig& cfg);

/// An adversary that picks each request after seeing the algorithm's
/// current permutation.
class AdaptiveAdversary {
public:
    virtual ~AdaptiveAdversary() = default;

    /// Next request given the algorithm's permutation after the previous
    /// one, or nullopt when the sequence is complete.
    virtual std::optional<RevealEvent> next(const Permutation& current) = 0;

    /// Everything requested so far, as a replayable trace.
    virtual const RevealTrace& induced_trace() const = 0;
};

/// Grows one path around the middle node x of the line pi0, always
/// extending it on the side where the algorithm currently keeps x. Ends
/// after n-2 requests with x the only node left out.
class MiddleLineAdversary final : public AdaptiveAdversary {
public:
    enum class Side { left, right };

    /// Throws InvalidInput unless n is odd and n >= 5.
    explicit MiddleLineAdversary(std::size_t n);
    MiddleLineAdversary(std::size_t n, Permutation pi0);

    std::optional<RevealEvent> next(const Permutation& current) override;
    const RevealTrace& induced_trace() const override { return trace_; }

    NodeId middle() const noexcept { return x_; }

    /// Side of x relative to the grown path in `current`. Throws
    /// ProtocolError if the path is not laid out contiguously in order.
    Side side_of_middle(const Permutation& current) const;

private:
    RevealTrace trace_;
    NodeId x_ = 0;
    Position mid_ = 0;
    Position left_ = 0;   // pi0 position of the path's left end
    Position right_ = 0;  // pi0 position of the path's right end
    bool started_ = false;
};

/// Uniform random pi0, then `events` merges of uniformly random distinct
/// components (n - 1 when omitted). For lines each side of the merge uses a
/// uniformly chosen endpoint of its path. Valid by construction.
RevealTrace random_trace(Model model, std::size_t n, std::uint64_t seed,
                         std::optional<std::size_t> events = std::nullopt);

}  // namespace minla
