#include "gathering/engine.hpp"
#include "gathering/programs.hpp"
#include "gathering/trace_io.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <concepts>
#include <random>
#include <sstream>

using namespace gathering;
using testing_support::InputRecorder;
using testing_support::per_agent;
using testing_support::script;

namespace {

using Edges = std::vector<std::pair<std::size_t, std::size_t>>;

std::vector<const Event*> of_kind(const Trace& t, EventKind k) {
    std::vector<const Event*> out;
    for (const auto& e : t.events) {
        if (e.kind == k) {
            out.push_back(&e);
        }
    }
    return out;
}

std::string jsonl(const Trace& t) {
    std::ostringstream os;
    write_trace_jsonl(t, os);
    return os.str();
}

// Hands out the AgentRef of the agent itself; refs cannot be made otherwise.
struct RefGrabber final : AgentProgram {
    std::optional<AgentRef>* out;
    explicit RefGrabber(std::optional<AgentRef>* o) : out(o) {}
    Instruction next_instruction(const SelfView& s) override {
        if (!*out) {
            *out = s.knowledge.front().agent;
        }
        return instr::Hold{};
    }
    GaResponse on_ga(const GAView&) override { return {}; }
    StateTag state() const override { return StateTag::kNone; }
};

} // namespace

static_assert(std::equality_comparable<AgentRef>);
static_assert(!std::totally_ordered<AgentRef>);
static_assert(!std::is_constructible_v<AgentRef, std::uint32_t>);

TEST_CASE("form_ga_groups") {
    SUBCASE("single new pair") {
        const Edges fresh{{1, 2}};
        const auto g = form_ga_groups(4, {}, fresh);
        REQUIRE(g.size() == 1);
        CHECK(g[0] == std::vector<std::size_t>{1, 2});
    }
    SUBCASE("new edge joining an existing adjacency takes the whole component") {
        const Edges old{{1, 2}}, fresh{{0, 1}};
        const auto g = form_ga_groups(3, old, fresh);
        REQUIRE(g.size() == 1);
        CHECK(g[0] == std::vector<std::size_t>{0, 1, 2});
    }
    SUBCASE("two disjoint approaches") {
        const Edges fresh{{3, 4}, {0, 1}};
        const auto g = form_ga_groups(5, {}, fresh);
        REQUIRE(g.size() == 2);
        CHECK(g[0] == std::vector<std::size_t>{0, 1});
        CHECK(g[1] == std::vector<std::size_t>{3, 4});
    }
    SUBCASE("components without a new edge are not groups") {
        const Edges old{{0, 1}}, fresh{{3, 4}};
        const auto g = form_ga_groups(5, old, fresh);
        REQUIRE(g.size() == 1);
        CHECK(g[0] == std::vector<std::size_t>{3, 4});
    }
}

TEST_CASE("translate_knowledge") {
    std::optional<AgentRef> ref;
    run(InitialConfiguration(0.5, {{{0, 0}, 0}, {{5, 0}, 0}}), [&] { return std::make_unique<RefGrabber>(&ref); },
        1.0);
    REQUIRE(ref);

    const KnowledgeItem item{*ref, {1, 1}, StateTag::kToken};
    const auto moved = translate_knowledge(item, {3, 0});
    CHECK(moved.initial_position == Vec2{4, 1});
    CHECK(moved.agent == item.agent);
    CHECK(moved.last_known_state == StateTag::kToken);

    const auto back = translate_knowledge(moved, {-3, 0});
    CHECK((back.initial_position - item.initial_position).length() <= kPositionTolerance);
}

TEST_CASE("an agent first sees itself at its frame origin") {
    struct Check final : AgentProgram {
        int* ok;
        explicit Check(int* o) : ok(o) {}
        Instruction next_instruction(const SelfView& s) override {
            if (s.knowledge.size() == 1 && s.knowledge[0].initial_position == Vec2{} && s.position == Vec2{} &&
                s.local_time == 0.0) {
                ++*ok;
            }
            return instr::Hold{};
        }
        GaResponse on_ga(const GAView&) override { return {}; }
        StateTag state() const override { return StateTag::kNone; }
    };
    int ok = 0;
    run(InitialConfiguration(0.5, {{{3, 4}, 1}, {{9, 9}, 2}}), [&] { return std::make_unique<Check>(&ok); }, 5.0);
    CHECK(ok == 2);
}

TEST_CASE("appearing within eps of a waiting agent is a GA at the appearance time") {
    const InitialConfiguration cfg(0.5, {{{0, 0}, 0}, {{0.3, 0}, 2.5}});
    const auto t = run(cfg, script({}), 10.0);
    const auto gas = of_kind(t, EventKind::kGa);
    REQUIRE(gas.size() == 1);
    CHECK(gas[0]->time == 2.5);
    CHECK(gas[0]->agents == std::vector<std::size_t>{0, 1});
}

TEST_CASE("a mover through the midpoint of two stationary agents makes one GA of three") {
    // 0 and 1 sit 2 eps apart; 2 walks south through their midpoint.
    const InitialConfiguration cfg(0.5, {{{-0.5, 0}, 0}, {{0.5, 0}, 0}, {{0, 3}, 0}});
    const auto t = run(cfg, per_agent({{}, {}, {instr::Go{{0, -1}, 6.0}}}), 20.0);
    const auto gas = of_kind(t, EventKind::kGa);
    REQUIRE(gas.size() == 1);
    CHECK(gas[0]->agents == std::vector<std::size_t>{0, 1, 2});
    // contact radius is eps plus the speed tolerance
    const double y = std::sqrt((0.5 + kSpeedTolerance) * (0.5 + kSpeedTolerance) - 0.25);
    CHECK(gas[0]->time == doctest::Approx(3.0 - y).epsilon(1e-12));
    CHECK(check_trace_invariants(t).empty());
}

TEST_CASE("a pair that stays adjacent does not trigger repeated GAs") {
    // 1 walks past 0 slowly enough to stay within eps for a while, then leaves
    // and comes back: exactly two GAs.
    const InitialConfiguration cfg(0.5, {{{0, 0}, 0}, {{-1, 0.1}, 0}});
    const auto t = run(cfg, per_agent({{}, {instr::Go{{1, 0}, 2.0}, instr::Go{{-1, 0}, 2.0}}}), 10.0);
    CHECK(of_kind(t, EventKind::kGa).size() == 2);
}

TEST_CASE("next_event_time") {
    SUBCASE("a lone mover's next event is the end of its segment") {
        const InitialConfiguration cfg(0.5, {{{0, 0}, 0}, {{100, 0}, 0}});
        Simulation sim(cfg, per_agent({{instr::Go{{0, 1}, 2.5}}, {}}), 50.0);
        REQUIRE(sim.step());  // appearances at t = 0
        const auto next = sim.next_event_time();
        REQUIRE(next);
        CHECK(*next == 2.5);
    }
    SUBCASE("all stopped: the run ends before the horizon") {
        const InitialConfiguration cfg(0.5, {{{0, 0}, 0}, {{2, 0}, 1}});
        const auto t = run(cfg, per_agent({{instr::GotoAndStop{{1, 0}}}, {instr::GotoAndStop{{-1, 0}}}}), 100.0);
        CHECK(t.verdict.kind == VerdictKind::kGathered);
        CHECK(t.end_time == 2.0);
        CHECK(t.verdict.group_points.front() == Point{1, 0});
        CHECK(of_kind(t, EventKind::kHorizon).empty());
    }
    SUBCASE("agents stopped apart: split") {
        const InitialConfiguration cfg(0.5, {{{0, 0}, 0}, {{2, 0}, 0}});
        const auto t = run(cfg, script({instr::GotoAndStop{{0, 0}}}), 100.0);
        CHECK(t.verdict.kind == VerdictKind::kSplit);
        CHECK(t.verdict.group_points.size() == 2);
    }
    SUBCASE("holding agents time out at the horizon") {
        const InitialConfiguration cfg(0.5, {{{0, 0}, 0}, {{2, 0}, 0}});
        const auto t = run(cfg, script({}), 100.0);
        CHECK(t.verdict.kind == VerdictKind::kTimeout);
        CHECK(t.end_time == 100.0);
        CHECK(of_kind(t, EventKind::kHorizon).size() == 1);
        CHECK(position_at(t.trajectories[0], 100.0) == Point{0, 0});
    }
}

TEST_CASE("run rejects invalid instructions and horizons") {
    const InitialConfiguration cfg(0.5, {{{0, 0}, 0}, {{5, 0}, 1}});
    CHECK_THROWS_AS(run(cfg, script({instr::Go{{1, 1}, 1.0}}), 10.0), EngineError);
    CHECK_THROWS_AS(run(cfg, script({instr::Go{{1, 0}, -1.0}}), 10.0), EngineError);
    CHECK_THROWS_AS(run(cfg, script({instr::Wait{-2.0}}), 10.0), EngineError);
    CHECK_THROWS_AS(run(cfg, script({instr::Wait{std::numeric_limits<double>::infinity()}}), 10.0), EngineError);
    CHECK_THROWS_AS(run(cfg, script({}), 1.0), EngineError);
    CHECK_THROWS_AS(run(cfg, script({}), 0.5), EngineError);
}

TEST_CASE("an uninterrupted instruction resumes after a GA") {
    // 0 walks east 4 units and passes 1 on the way; the GA must not cut the walk.
    const InitialConfiguration cfg(0.5, {{{0, 0}, 0}, {{2, 0.2}, 0}});
    const auto t = run(cfg, per_agent({{instr::Go{{1, 0}, 4.0}}, {}}), 10.0);
    CHECK(of_kind(t, EventKind::kGa).size() == 1);
    CHECK(position_at(t.trajectories[0], 4.0).x == doctest::Approx(4.0));
}

TEST_CASE("a GA takes the whole component and knowledge arrives in the receiver's frame") {
    struct Knows final : AgentProgram {
        std::vector<std::vector<Vec2>>* log;
        explicit Knows(std::vector<std::vector<Vec2>>* l) : log(l) {}
        Instruction next_instruction(const SelfView&) override { return instr::Hold{}; }
        GaResponse on_ga(const GAView& v) override {
            std::vector<Vec2> k;
            for (const auto& item : v.knowledge) {
                k.push_back(item.initial_position);
            }
            log->push_back(k);
            return {};
        }
        StateTag state() const override { return StateTag::kNone; }
    };
    // 0-1 adjacent at start; 2 appears next to 1 later, away from 0.
    std::vector<std::vector<Vec2>> log;
    const InitialConfiguration cfg(0.5, {{{0, 0}, 0}, {{0.4, 0}, 0}, {{0.8, 0}, 3}});
    run(cfg, [&] { return std::make_unique<Knows>(&log); }, 10.0);
    REQUIRE(log.size() == 5);  // 2 agents at the first GA, 3 at the second
    const auto knows = [](const std::vector<Vec2>& k, Vec2 v) {
        return std::any_of(k.begin(), k.end(), [&](Vec2 w) { return (w - v).length() <= kPositionTolerance; });
    };
    REQUIRE(log[2].size() == 3);
    CHECK(knows(log[2], {0.8, 0}));
    CHECK(knows(log[4], {-0.8, 0}));
    CHECK(knows(log[4], {-0.4, 0}));
}

TEST_CASE("runs are deterministic") {
    const InitialConfiguration cfg(0.5, {{{0, 0}, 0}, {{1.3, 0.4}, 1.7}, {{-0.6, 1.1}, 0.4}});
    CHECK(jsonl(run(cfg, gather_n_program(3), default_horizon(cfg))) ==
          jsonl(run(cfg, gather_n_program(3), default_horizon(cfg))));
    CHECK(jsonl(run(cfg, dedicated_program(cfg, 0.5), default_horizon(cfg))) ==
          jsonl(run(cfg, dedicated_program(cfg, 0.5), default_horizon(cfg))));
}

TEST_CASE("anonymity firewall: programs see neither absolute coordinates nor eps") {
    const double eps = 0.123456789;
    const Vec2 far{1000.37, -2000.91};
    const InitialConfiguration near_cfg(eps, {{{0, 0}, 0}, {{1.0, 0.05}, 2.0}, {{0.5, 0.9}, 1.3}});
    const InitialConfiguration far_cfg = translated(near_cfg, far);

    std::vector<double> seen_near, seen_far;
    const auto t_near = run(near_cfg, [&] { return std::make_unique<InputRecorder>(&seen_near); }, 30.0);
    const auto t_far = run(far_cfg, [&] { return std::make_unique<InputRecorder>(&seen_far); }, 30.0);
    REQUIRE(t_near.ga_count() > 0);
    CHECK(t_far.ga_count() == t_near.ga_count());

    REQUIRE(seen_near.size() == seen_far.size());
    for (std::size_t i = 0; i < seen_near.size(); ++i) {
        CHECK(std::abs(seen_near[i] - seen_far[i]) <= 1e-9);
        CHECK(std::abs(seen_far[i]) < 100.0);
        CHECK(std::abs(std::abs(seen_far[i]) - eps) > 1e-12);
    }
}

TEST_CASE("symmetry: before the first GA the later agent retraces the earlier one") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int compared = 0;
    for (int k = 0; k < 30; ++k) {
        const double eps = 0.5;
        const double d = 1.0 + 4.0 * u(rng);
        const double delta = 3.0 * u(rng);
        const double angle = 6.28 * u(rng);
        const Point q{d * std::cos(angle), d * std::sin(angle)};
        const InitialConfiguration cfg(eps, {{{0, 0}, 0}, {q, delta}});
        const auto t = run(cfg, gather_n_program(2), 20.0 * (d + delta + 1.0));
        const double until = t.first_ga_time().value_or(t.end_time);
        const Vec2 shift = q - Point{0, 0};
        for (double s = delta; s <= until; s += 0.05) {
            const Point later = position_at(t.trajectories[1], s);
            const Point earlier = position_at(t.trajectories[0], s - delta);
            CHECK(dist(later, earlier + shift) <= 1e-6);
            ++compared;
        }
    }
    CHECK(compared > 100);
}

TEST_CASE("trace invariants hold on random runs") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (int k = 0; k < 20; ++k) {
        std::vector<AgentStart> agents;
        for (int i = 0; i < 3; ++i) {
            agents.push_back({{u(rng), u(rng)}, 1.5 * u(rng)});
        }
        const InitialConfiguration cfg(0.5, agents);
        const auto t = run(cfg, gather_n_program(3), default_horizon(cfg));
        const auto problems = check_trace_invariants(t);
        CHECK_MESSAGE(problems.empty(), (problems.empty() ? std::string() : problems.front()));
    }
}

TEST_CASE("trace JSON lines") {
    const InitialConfiguration cfg(0.5, {{{0, 0}, 0}, {{1, 0}, 2}});
    const auto t = run(cfg, gather_n_program(2), default_horizon(cfg));
    const std::string text = jsonl(t);
    CHECK(text.rfind("{\"t\":0.0,\"kind\":\"appear\"", 0) == 0);
    CHECK(text.find("\"kind\":\"ga\",\"agents\":[0,1]") != std::string::npos);
    CHECK(text.find("{\"kind\":\"verdict\",\"verdict\":\"gathered\"") != std::string::npos);
}
