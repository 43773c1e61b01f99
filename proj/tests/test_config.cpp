#include "gathering/config.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace gathering;

namespace {

InitialConfiguration two(double eps, Point p, double tp, Point q, double tq) {
    return InitialConfiguration(eps, {{p, tp}, {q, tq}});
}

} // namespace

TEST_CASE("configuration validation") {
    CHECK_THROWS_AS(InitialConfiguration(0.5, {{{0, 0}, 0}}), ConfigError);
    CHECK_THROWS_AS(two(0.0, {0, 0}, 0, {1, 0}, 0), ConfigError);
    CHECK_THROWS_AS(two(0.5, {0, 0}, 0, {0, 0}, 1), ConfigError);
    CHECK_THROWS_AS(two(0.5, {0, 0}, -1, {1, 0}, 0), ConfigError);
    CHECK_THROWS_AS(two(0.5, {0, std::nan("")}, 0, {1, 0}, 0), ConfigError);
    CHECK_NOTHROW(two(0.5, {0, 0}, 0, {1, 0}, 0));
}

TEST_CASE("classify examples") {
    const auto bad = classify(two(0.5, {0, 0}, 0, {1, 0}, 0.5));
    CHECK(bad.kind == Feasibility::kBadGatherable);
    REQUIRE(bad.witness);
    CHECK(*bad.witness == std::pair<std::size_t, std::size_t>{0, 1});

    const auto good = classify(two(0.5, {0, 0}, 0, {1, 0}, 2));
    CHECK(good.kind == Feasibility::kGood);
    CHECK(good.witness.has_value());

    const auto none = classify(two(0.5, {0, 0}, 0, {10, 0}, 1));
    CHECK(none.kind == Feasibility::kUngatherable);
    CHECK_FALSE(none.witness);
}

TEST_CASE("classify boundary tolerance") {
    CHECK(classify(two(0.5, {0, 0}, 0, {1, 0}, 0.5 + 5e-10)).kind == Feasibility::kBadGatherable);
    CHECK(classify(two(0.5, {0, 0}, 0, {1, 0}, 0.5 - 5e-10)).kind == Feasibility::kBadGatherable);
    CHECK(classify(two(0.5, {0, 0}, 0, {1, 0}, 0.5 + 1e-6)).kind == Feasibility::kGood);
    CHECK(classify(two(0.5, {0, 0}, 0, {1, 0}, 0.5 - 1e-6)).kind == Feasibility::kUngatherable);
}

TEST_CASE("witness is the first good pair even when an earlier pair is on the boundary") {
    const InitialConfiguration cfg(0.5, {{{0, 0}, 0}, {{1, 0}, 0.5}, {{0, 5}, 9}});
    const auto c = classify(cfg);
    CHECK(c.kind == Feasibility::kGood);
    CHECK(*c.witness == std::pair<std::size_t, std::size_t>{0, 2});
}

TEST_CASE("classify is invariant under translation, time shift and permutation") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int k = 0; k < 300; ++k) {
        std::vector<AgentStart> agents;
        for (int i = 0; i < 4; ++i) {
            agents.push_back({{u(rng), u(rng)}, u(rng)});
        }
        const InitialConfiguration cfg(0.3, agents);
        const auto base = classify(cfg).kind;

        CHECK(classify(translated(cfg, {17.25, -3.5})).kind == base);

        auto shifted = agents;
        for (auto& a : shifted) {
            a.start_time += 4.0;
        }
        CHECK(classify(InitialConfiguration(0.3, shifted)).kind == base);

        auto permuted = agents;
        std::shuffle(permuted.begin(), permuted.end(), rng);
        CHECK(classify(InitialConfiguration(0.3, permuted)).kind == base);
    }
}

TEST_CASE("vector_sequence examples") {
    const InitialConfiguration two_pts(0.5, {{{0, 0}, 0}, {{1, 0}, 0}});
    const auto v2 = vector_sequence(two_pts);
    REQUIRE(v2.size() == 2);
    CHECK(v2[0] == Vec2{-1, 0});
    CHECK(v2[1] == Vec2{1, 0});

    const InitialConfiguration three(0.5, {{{0, 0}, 0}, {{1, 0}, 0}, {{0, 1}, 0}});
    const std::vector<Vec2> expected{{-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}};
    CHECK(vector_sequence(three) == expected);
}

TEST_CASE("vector_sequence is closed under negation") {
    const InitialConfiguration cfg(0.5, {{{0.3, 1}, 0}, {{2, -1}, 1}, {{5, 5}, 2}, {{-1, 0.5}, 0}});
    const auto vs = vector_sequence(cfg);
    CHECK(vs.size() == 12);
    for (const auto v : vs) {
        CHECK(std::find(vs.begin(), vs.end(), -v) != vs.end());
    }
}

TEST_CASE("qualifying_vector examples") {
    CHECK(qualifying_vector(two(0.5, {0, 0}, 0, {1, 0}, 1)) == Vec2{1, 0});
    CHECK(qualifying_vector(two(2.0, {0, 0}, 0, {1, 0}, 0)) == Vec2{1, 0});

    // Only agents 1 and 2 are close enough in time for their distance.
    const InitialConfiguration cfg(0.5, {{{0, 0}, 0}, {{10, 0}, 0}, {{10, 1}, 1}});
    CHECK(qualifying_vector(cfg) == Vec2{0, 1});

    CHECK_THROWS_AS(qualifying_vector(two(0.5, {0, 0}, 0, {10, 0}, 1)), ConfigError);
}

TEST_CASE("qualifying_vector belongs to the sequence and its reverse qualifies") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    int checked = 0;
    for (int k = 0; k < 200; ++k) {
        std::vector<AgentStart> agents;
        for (int i = 0; i < 3; ++i) {
            agents.push_back({{u(rng), u(rng)}, u(rng)});
        }
        const InitialConfiguration cfg(0.5, agents);
        if (classify(cfg).kind == Feasibility::kUngatherable) {
            continue;
        }
        ++checked;
        const Vec2 v = qualifying_vector(cfg);
        const auto vs = vector_sequence(cfg);
        CHECK(std::find(vs.begin(), vs.end(), v) != vs.end());
        bool reverse_ok = false;
        for (std::size_t i = 0; i < cfg.size(); ++i) {
            for (std::size_t j = 0; j < cfg.size(); ++j) {
                if (i != j && cfg[i].point - cfg[j].point == v && pair_slack(cfg, j, i) >= -kTimeTolerance) {
                    reverse_ok = true;
                }
            }
        }
        CHECK(reverse_ok);
    }
    CHECK(checked > 20);
}

TEST_CASE("approach_vector points from the later agent to the earlier one") {
    const auto cfg = two(0.5, {0, 0}, 0, {1, 0}, 10);
    CHECK(approach_vector(cfg) == Vec2{-1, 0});
    CHECK(qualifying_vector(cfg) == Vec2{1, 0});
    CHECK_THROWS_AS(approach_vector(two(0.5, {0, 0}, 0, {10, 0}, 1)), ConfigError);
    CHECK(approach_vector(two(0.5, {0, 0}, 0, {10, 0}, 1), true) == Vec2{-10, 0});
}

TEST_CASE("JSON round trip and diagnostics") {
    const auto cfg = config_from_json(R"({"epsilon": 0.5, "agents": [{"x": 0.0, "y": 0.0, "t": 0.0},
                                          {"x": 1.0, "y": 0.0, "t": 2.0}]})");
    CHECK(cfg.size() == 2);
    CHECK(cfg.epsilon() == 0.5);
    CHECK(cfg[1].start_time == 2.0);
    const auto again = config_from_json(config_to_json(cfg));
    CHECK(again.epsilon() == cfg.epsilon());
    CHECK(again[1].point == cfg[1].point);

    try {
        config_from_json("{\"epsilon\": 0.5,\n \"agents\": [ {\"x\": 1 \"y\": 0} ]}");
        FAIL("expected a parse error");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 2") != std::string::npos);
        CHECK(msg.find('^') != std::string::npos);
    }
    CHECK_THROWS_AS(config_from_json(R"({"agents": []})"), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"epsilon": 0.5, "agents": [{"x": 0, "y": 0}]})"), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"epsilon": 0.5, "agents": [{"x": 0, "y": 0, "t": 0},
                                         {"x": 0, "y": 0, "t": 1}]})"),
                    ConfigError);
}
