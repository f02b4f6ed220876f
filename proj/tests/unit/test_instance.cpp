#include <doctest.h>

#include <algorithm>
#include <set>

#include "minla/adversaries.hpp"
#include "minla/instance.hpp"

using namespace minla;

namespace {

RevealTrace make(Model model, std::size_t n, std::vector<RevealEvent> events) {
    return {model, n, Permutation::identity(n), std::move(events)};
}

bool is_subpath(const std::vector<NodeId>& small, const std::vector<NodeId>& big) {
    auto fwd = std::search(big.begin(), big.end(), small.begin(), small.end());
    auto rev = std::search(big.begin(), big.end(), small.rbegin(), small.rend());
    return fwd != big.end() || rev != big.end();
}

}  // namespace

TEST_CASE("model names") {
    CHECK(to_string(Model::cliques) == "cliques");
    CHECK(parse_model("lines") == Model::lines);
    CHECK_FALSE(parse_model("trees"));
}

TEST_CASE("replay merges cliques") {
    const auto trace = make(Model::cliques, 3, {{0, 2}, {1, 0}});
    const auto parts = replay_components(trace, 2);
    REQUIRE(parts.components.size() == 1);
    CHECK(parts.components[0] == std::vector<NodeId>{0, 1, 2});
    CHECK(replay_components(trace, 1).components.size() == 2);
    CHECK(replay_components(trace, 0).components.size() == 3);
    CHECK_THROWS_AS(replay_components(trace, 3), InvalidInput);
}

TEST_CASE("line components keep path order") {
    const auto trace = make(Model::lines, 5, {{3, 1}, {1, 4}, {0, 3}});
    const auto parts = replay_components(trace, 3);
    REQUIRE(parts.components.size() == 2);
    const auto& path = parts.components[0];
    const std::vector<NodeId> expect{0, 3, 1, 4};
    CHECK((path == expect || std::equal(path.begin(), path.end(), expect.rbegin())));
    CHECK(parts.components[1] == std::vector<NodeId>{2});
    CHECK(parts.component_of[2] == 1);
}

TEST_CASE("each event refines into one fewer component") {
    for (const Model model : {Model::cliques, Model::lines}) {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const auto trace = random_trace(model, 9, seed);
            for (std::size_t i = 0; i < trace.k(); ++i) {
                const auto before = replay_components(trace, i);
                const auto after = replay_components(trace, i + 1);
                CHECK(after.components.size() + 1 == before.components.size());
                for (const auto& c : before.components) {
                    const auto& host = after.components[after.component_of[c[0]]];
                    for (const NodeId v : c) CHECK(after.component_of[v] == after.component_of[c[0]]);
                    if (model == Model::lines) CHECK(is_subpath(c, host));
                }
            }
        }
    }
}

TEST_CASE("tracker merge orientation and endpoints") {
    ComponentTracker t(Model::lines, 6);
    t.merge(0, 1);
    t.merge(2, 3);
    const auto m = t.merge(0, 2);  // 1-0 then 2-3
    CHECK(m.x_size == 2);
    CHECK(m.z_size == 2);
    const auto seq = t.nodes(t.find(0));
    const std::vector<NodeId> expect{1, 0, 2, 3};
    CHECK((seq == expect || std::equal(seq.begin(), seq.end(), expect.rbegin())));
    CHECK(t.is_endpoint(1));
    CHECK(t.is_endpoint(3));
    CHECK_FALSE(t.is_endpoint(0));
    CHECK_THROWS_AS(t.merge(0, 4), InvalidInput);
    CHECK_THROWS_AS(t.merge(1, 3), InvalidInput);
    CHECK(t.component_count() == 3);
    for (std::size_t i = 0; i < 4; ++i) CHECK(t.at(t.find(0), i) == seq[i]);
}

TEST_CASE("validate_trace diagnostics") {
    CHECK_FALSE(validate_trace(make(Model::lines, 4, {{0, 1}, {1, 2}})));

    auto d = validate_trace(make(Model::lines, 4, {{0, 1}, {1, 0}}));
    REQUIRE(d);
    CHECK(d->event_index == 1);

    d = validate_trace(make(Model::lines, 4, {{0, 1}, {1, 2}, {1, 3}}));
    REQUIRE(d);
    CHECK(d->event_index == 2);

    d = validate_trace(make(Model::cliques, 4, {{0, 1}, {1, 2}, {1, 3}}));
    CHECK_FALSE(d);

    d = validate_trace(make(Model::cliques, 3, {{0, 5}}));
    REQUIRE(d);
    CHECK(d->event_index == 0);

    d = validate_trace(make(Model::cliques, 3, {{1, 1}}));
    REQUIRE(d);

    RevealTrace bad = make(Model::cliques, 3, {});
    bad.n = 4;
    d = validate_trace(bad);
    REQUIRE(d);
    CHECK(d->event_index == TraceDiagnostic::header);
}

TEST_CASE("trace text round trip") {
    const RevealTrace trace{Model::lines, 4, Permutation({2, 0, 3, 1}), {{0, 1}, {2, 3}, {1, 2}}};
    const std::string text = emit_trace(trace);
    CHECK(text == "minla-trace v1\nmodel: lines\nn: 4\npi0: 2 0 3 1\nevent: 0 1\nevent: 2 3\nevent: 1 2\n");
    const auto back = parse_trace(text);
    CHECK(back.model == trace.model);
    CHECK(back.pi0 == trace.pi0);
    CHECK(back.events == trace.events);
    CHECK(emit_trace(back) == text);
}

TEST_CASE("trace parsing tolerates comments and blank lines") {
    const auto t = parse_trace("# header\nminla-trace v1\n\nmodel: cliques  # kind\nn: 3\npi0: 0 1 2\nevent: 0 2\n");
    CHECK(t.model == Model::cliques);
    CHECK(t.k() == 1);
}

TEST_CASE("trace parse errors carry the line") {
    const auto line_of = [](const std::string& text) -> std::size_t {
        try {
            parse_trace(text);
        } catch (const TraceParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("bogus\n") == 1);
    CHECK(line_of("minla-trace v1\nmodel: trees\nn: 2\npi0: 0 1\n") == 2);
    CHECK(line_of("minla-trace v1\nmodel: lines\nn: 3\npi0: 0 1\n") == 4);
    CHECK(line_of("minla-trace v1\nmodel: lines\nn: 3\npi0: 0 1 2\nevent: 0 1\nevent: 1 0\n") == 6);
    CHECK(line_of("minla-trace v1\nmodel: lines\nn: 3\npi0: 0 1 2\nevent: 0 9\n") == 5);
    CHECK(line_of("minla-trace v1\nmodel: lines\nn: 3\npi0: 0 1 2\nevent: 0\n") == 5);
}
