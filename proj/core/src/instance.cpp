#include "minla/instance.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace minla {

std::string_view to_string(Model model) noexcept {
    return model == Model::cliques ? "cliques" : "lines";
}

std::optional<Model> parse_model(std::string_view text) noexcept {
    if (text == "cliques") return Model::cliques;
    if (text == "lines") return Model::lines;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// ComponentTracker

ComponentTracker::ComponentTracker(Model model, std::size_t n)
    : model_(model), parent_(n), seq_(n), flipped_(n, false), components_(n) {
    for (std::size_t v = 0; v < n; ++v) {
        parent_[v] = static_cast<NodeId>(v);
        seq_[v].push_back(static_cast<NodeId>(v));
    }
}

ComponentTracker::ComponentId ComponentTracker::find(NodeId v) const {
    while (parent_[v] != v) v = parent_[v];
    return v;
}

std::vector<NodeId> ComponentTracker::nodes(ComponentId c) const {
    const auto& s = seq_[c];
    if (flipped_[c]) return {s.rbegin(), s.rend()};
    return {s.begin(), s.end()};
}

NodeId ComponentTracker::front(ComponentId c) const {
    return flipped_[c] ? seq_[c].back() : seq_[c].front();
}

NodeId ComponentTracker::back(ComponentId c) const {
    return flipped_[c] ? seq_[c].front() : seq_[c].back();
}

bool ComponentTracker::is_endpoint(NodeId v) const {
    const auto c = find(v);
    return front(c) == v || back(c) == v;
}

void ComponentTracker::orient(ComponentId c, NodeId node, bool want_last) {
    const NodeId current = want_last ? back(c) : front(c);
    if (current != node) flipped_[c] = !flipped_[c];
}

ComponentTracker::Merge ComponentTracker::merge(NodeId u, NodeId v) {
    const ComponentId x = find(u);
    const ComponentId z = find(v);
    if (x == z) {
        throw InvalidInput("nodes " + std::to_string(u) + " and " + std::to_string(v) +
                           " are already in the same component");
    }
    if (model_ == Model::lines && !(is_endpoint(u) && is_endpoint(v))) {
        throw InvalidInput("node " + std::to_string(is_endpoint(u) ? v : u) + " is not a path endpoint");
    }
    Merge result{x, z, x, seq_[x].size(), seq_[z].size()};

    if (model_ == Model::lines) {
        orient(x, u, /*want_last=*/true);
        orient(z, v, /*want_last=*/false);
    }

    if (seq_[x].size() >= seq_[z].size()) {
        // append Z's logical sequence after X's logical back
        for (const NodeId w : nodes(z)) {
            if (flipped_[x]) {
                seq_[x].push_front(w);
            } else {
                seq_[x].push_back(w);
            }
        }
        parent_[z] = x;
        seq_[z] = {};
        result.merged = x;
    } else {
        // prepend X's logical sequence before Z's logical front
        const auto xs = nodes(x);
        for (auto it = xs.rbegin(); it != xs.rend(); ++it) {
            if (flipped_[z]) {
                seq_[z].push_back(*it);
            } else {
                seq_[z].push_front(*it);
            }
        }
        parent_[x] = z;
        seq_[x] = {};
        result.merged = z;
    }
    --components_;
    return result;
}

std::vector<ComponentTracker::ComponentId> ComponentTracker::roots() const {
    std::vector<ComponentId> out;
    out.reserve(components_);
    for (std::size_t v = 0; v < parent_.size(); ++v) {
        if (parent_[v] == v) out.push_back(static_cast<ComponentId>(v));
    }
    return out;
}

ComponentPartition ComponentTracker::snapshot() const {
    ComponentPartition part;
    part.model = model_;
    for (const auto root : roots()) {
        auto members = nodes(root);
        if (model_ == Model::cliques) std::sort(members.begin(), members.end());
        part.components.push_back(std::move(members));
    }
    std::sort(part.components.begin(), part.components.end(), [](const auto& a, const auto& b) {
        return *std::min_element(a.begin(), a.end()) < *std::min_element(b.begin(), b.end());
    });
    part.component_of.assign(parent_.size(), 0);
    for (std::size_t c = 0; c < part.components.size(); ++c) {
        for (const NodeId v : part.components[c]) part.component_of[v] = c;
    }
    return part;
}

// ---------------------------------------------------------------------------
// validation and replay

std::optional<TraceDiagnostic> validate_trace(const RevealTrace& trace) {
    if (trace.n == 0) return TraceDiagnostic{TraceDiagnostic::header, "n must be positive"};
    if (trace.pi0.size() != trace.n) {
        return TraceDiagnostic{TraceDiagnostic::header,
                               "n mismatch: n=" + std::to_string(trace.n) + " but pi0 has " +
                                   std::to_string(trace.pi0.size()) + " entries"};
    }
    if (trace.events.size() >= trace.n) {
        return TraceDiagnostic{trace.n - 1, "more than n-1 events"};
    }
    ComponentTracker tracker(trace.model, trace.n);
    for (std::size_t i = 0; i < trace.events.size(); ++i) {
        const auto [u, v] = trace.events[i];
        if (u >= trace.n || v >= trace.n) {
            return TraceDiagnostic{i, "node id out of range"};
        }
        if (u == v) return TraceDiagnostic{i, "duplicate node " + std::to_string(u)};
        if (tracker.same(u, v)) {
            return TraceDiagnostic{i, "nodes " + std::to_string(u) + " and " + std::to_string(v) +
                                          " already share a component"};
        }
        if (trace.model == Model::lines) {
            for (const NodeId w : {u, v}) {
                if (!tracker.is_endpoint(w)) {
                    return TraceDiagnostic{i, "node " + std::to_string(w) + " is not a path endpoint"};
                }
            }
        }
        tracker.merge(u, v);
    }
    return std::nullopt;
}

ComponentPartition replay_components(const RevealTrace& trace, std::size_t step) {
    if (step > trace.events.size()) {
        throw InvalidInput("step " + std::to_string(step) + " beyond trace length " +
                           std::to_string(trace.events.size()));
    }
    ComponentTracker tracker(trace.model, trace.n);
    for (std::size_t i = 0; i < step; ++i) tracker.merge(trace.events[i].u, trace.events[i].v);
    return tracker.snapshot();
}

// ---------------------------------------------------------------------------
// text format

namespace {

constexpr std::string_view kMagic = "minla-trace v1";

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct Line {
    std::size_t number;
    std::string_view text;  // comment and surrounding blanks stripped
};

std::vector<Line> content_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        ++number;
        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        raw = trim(raw);
        if (!raw.empty()) out.push_back({number, raw});
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return out;
}

std::string_view expect_key(const Line& line, std::string_view key) {
    const auto colon = line.text.find(':');
    if (colon == std::string_view::npos || trim(line.text.substr(0, colon)) != key) {
        throw TraceParseError(line.number, "expected '" + std::string(key) + ":'");
    }
    return trim(line.text.substr(colon + 1));
}

std::vector<std::uint64_t> parse_ints(const Line& line, std::string_view body) {
    std::vector<std::uint64_t> out;
    std::size_t i = 0;
    while (i < body.size()) {
        while (i < body.size() && (body[i] == ' ' || body[i] == '\t')) ++i;
        if (i == body.size()) break;
        std::uint64_t value = 0;
        const auto [ptr, ec] = std::from_chars(body.data() + i, body.data() + body.size(), value);
        const bool separated = ptr == body.data() + body.size() || *ptr == ' ' || *ptr == '\t';
        if (ec != std::errc{} || !separated) {
            throw TraceParseError(line.number, "expected non-negative integers, got '" + std::string(body) + "'");
        }
        out.push_back(value);
        i = static_cast<std::size_t>(ptr - body.data());
    }
    return out;
}

}  // namespace

RevealTrace parse_trace(std::string_view text) {
    const auto lines = content_lines(text);
    if (lines.empty() || lines[0].text != kMagic) {
        throw TraceParseError(lines.empty() ? 1 : lines[0].number, "expected header 'minla-trace v1'");
    }
    if (lines.size() < 4) {
        throw TraceParseError(lines.back().number + 1, "truncated header (need model, n, pi0)");
    }

    RevealTrace trace;
    const auto model_text = expect_key(lines[1], "model");
    const auto model = parse_model(model_text);
    if (!model) throw TraceParseError(lines[1].number, "unknown model '" + std::string(model_text) + "'");
    trace.model = *model;

    const auto n_values = parse_ints(lines[2], expect_key(lines[2], "n"));
    if (n_values.size() != 1 || n_values[0] == 0 || n_values[0] > (std::uint64_t{1} << 31)) {
        throw TraceParseError(lines[2].number, "n must be a single positive integer");
    }
    trace.n = static_cast<std::size_t>(n_values[0]);

    const auto pi0_values = parse_ints(lines[3], expect_key(lines[3], "pi0"));
    if (pi0_values.size() != trace.n) {
        throw TraceParseError(lines[3].number, "pi0 has " + std::to_string(pi0_values.size()) +
                                                   " entries, expected n=" + std::to_string(trace.n));
    }
    try {
        trace.pi0 = Permutation(std::vector<NodeId>(pi0_values.begin(), pi0_values.end()));
    } catch (const InvalidInput& e) {
        throw TraceParseError(lines[3].number, e.what());
    }

    std::vector<std::size_t> event_lines;
    for (std::size_t i = 4; i < lines.size(); ++i) {
        const auto ids = parse_ints(lines[i], expect_key(lines[i], "event"));
        if (ids.size() != 2) throw TraceParseError(lines[i].number, "event needs exactly two node ids");
        if (ids[0] >= trace.n || ids[1] >= trace.n) {
            throw TraceParseError(lines[i].number, "node id out of range for n=" + std::to_string(trace.n));
        }
        trace.events.push_back({static_cast<NodeId>(ids[0]), static_cast<NodeId>(ids[1])});
        event_lines.push_back(lines[i].number);
    }

    if (const auto diag = validate_trace(trace)) {
        const std::size_t line = diag->event_index < event_lines.size() ? event_lines[diag->event_index]
                                                                        : lines[2].number;
        const std::string where =
            diag->event_index == TraceDiagnostic::header ? "" : "event " + std::to_string(diag->event_index) + ": ";
        throw TraceParseError(line, where + diag->reason);
    }
    return trace;
}

std::string emit_trace(const RevealTrace& trace) {
    std::string out;
    out += kMagic;
    out += "\nmodel: ";
    out += to_string(trace.model);
    out += "\nn: " + std::to_string(trace.n);
    out += "\npi0: " + to_string(trace.pi0) + "\n";
    for (const auto& e : trace.events) {
        out += "event: " + std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
    }
    return out;
}

RevealTrace load_trace(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open trace file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_trace(buffer.str());
}

void save_trace(const RevealTrace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write trace file '" + path + "'");
    out << emit_trace(trace);
}

}  // namespace minla
