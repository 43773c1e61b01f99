#include "gathering/geometry.hpp"
#include "support.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace gathering;
using testing_support::scan_approach;

TEST_CASE("lex_less examples") {
    CHECK(lex_less(Point{0, 0}, Point{1, 0}));
    CHECK(lex_less(Point{1, -1}, Point{1, 0}));
    CHECK_FALSE(lex_less(Point{3, 7}, Point{3, 7}));
    CHECK(lex_less(Vec2{-1, 5}, Vec2{0, -5}));
}

TEST_CASE("lex_less is a strict total order and translation invariant") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coord(-3, 3);  // small grid so ties on x are common
    for (int k = 0; k < 2000; ++k) {
        const Point p{static_cast<double>(coord(rng)), static_cast<double>(coord(rng))};
        const Point q{static_cast<double>(coord(rng)), static_cast<double>(coord(rng))};
        const int holds = int(lex_less(p, q)) + int(lex_less(q, p)) + int(p == q);
        CHECK(holds == 1);
        const Vec2 v{static_cast<double>(coord(rng)), static_cast<double>(coord(rng))};
        CHECK(lex_less(p + v, q + v) == lex_less(p, q));
    }
}

TEST_CASE("position_at examples") {
    Trajectory move(0.0, {0, 0});
    move.append_move(2.0, {2, 0});
    CHECK(position_at(move, 1.0) == Point{1, 0});

    Trajectory wait(0.0, {5, 5});
    wait.append_wait(10.0);
    CHECK(position_at(wait, 7.0) == Point{5, 5});

    Trajectory out_back(0.0, {0, 0});
    out_back.append_move(3.0, {0, 3});
    out_back.append_move(6.0, {0, 0});
    const Point p = position_at(out_back, 4.0);
    CHECK(p.x == doctest::Approx(0.0));
    CHECK(p.y == doctest::Approx(2.0));
}

TEST_CASE("position_at outside the span throws") {
    Trajectory t(1.0, {0, 0});
    t.append_wait(2.0);
    CHECK_THROWS_AS(position_at(t, 0.5), std::out_of_range);
    CHECK_THROWS_AS(position_at(t, 2.5), std::out_of_range);
}

TEST_CASE("trajectory rejects gaps and illegal speeds") {
    Trajectory t(0.0, {0, 0});
    CHECK_THROWS_AS(t.append({0.0, 1.0, {0, 0}, {2, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(t.append({0.5, 1.0, {0, 0}, {0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(t.append({0.0, 1.0, {1, 0}, {1, 0}}), std::invalid_argument);
    CHECK_NOTHROW(t.append({0.0, 1.0, {0, 0}, {0.6, 0.8}}));
}

TEST_CASE("earliest_approach examples") {
    Trajectory a(0.0, {0, 0});
    a.append_wait(10.0);
    Trajectory b(0.0, {2, 0});
    b.append_move(2.0, {0, 0});
    b.append_wait(10.0);
    const auto t = earliest_approach(a, b, 0.5, 0.0);
    REQUIRE(t);
    CHECK(*t == doctest::Approx(1.5).epsilon(1e-12));

    Trajectory c(0.0, {0, 0.4});
    c.append_wait(10.0);
    const auto now = earliest_approach(a, c, 0.5, 0.0);
    REQUIRE(now);
    CHECK(*now == 0.0);

    Trajectory p(0.0, {0, 0});
    p.append_move(5.0, {5, 0});
    Trajectory q(0.0, {0, 1});
    q.append_move(5.0, {5, 1});
    CHECK_FALSE(earliest_approach(p, q, 0.5, 0.0));
}

TEST_CASE("earliest_approach argument checks") {
    Trajectory a(0.0, {0, 0});
    a.append_wait(1.0);
    Trajectory b(2.0, {1, 0});
    b.append_wait(3.0);
    CHECK_THROWS_AS(earliest_approach(a, b, 0.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(earliest_approach(a, a, 0.0, 0.5), std::invalid_argument);
}

TEST_CASE("contact_interval degenerate cases") {
    const auto inside = contact_interval({0.1, 0}, {0, 0}, 0.5);
    REQUIRE(inside);
    CHECK(std::isinf(inside->first));
    CHECK(std::isinf(inside->second));
    CHECK_FALSE(contact_interval({1, 0}, {0, 0}, 0.5));
    CHECK_FALSE(contact_interval({0, 1}, {1, 0}, 0.5));
    const auto through = contact_interval({-2, 0}, {1, 0}, 0.5);
    REQUIRE(through);
    CHECK(through->first == doctest::Approx(1.5));
    CHECK(through->second == doctest::Approx(2.5));
}

namespace {

Trajectory random_walk(std::mt19937_64& rng, int legs) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Trajectory t(0.0, {unit(rng) * 3.0, unit(rng) * 3.0});
    for (int i = 0; i < legs; ++i) {
        const double len = 0.2 + unit(rng);
        if (unit(rng) < 0.3) {
            t.append_wait(t.end_time() + len);
        } else {
            const Vec2 dir = heading_clockwise_from_north(2.0 * std::numbers::pi * unit(rng));
            t.append_move(t.end_time() + len, t.end_point() + dir * len);
        }
    }
    return t;
}

} // namespace

TEST_CASE("earliest_approach matches a brute-force scan") {
    std::mt19937_64 rng(20240611);
    const double eps = 0.4;
    int hits = 0;
    for (int k = 0; k < 60; ++k) {
        Trajectory a = random_walk(rng, 5);
        Trajectory b = random_walk(rng, 5);
        const double end = std::min(a.end_time(), b.end_time());
        // Trim both to the common span so the scan and the solver see the same window.
        Trajectory ta(0.0, a.origin()), tb(0.0, b.origin());
        for (const auto& s : a.segments()) {
            if (s.start_time < end) {
                ta.append({s.start_time, std::min(s.end_time, end), s.start_point, s.at(std::min(s.end_time, end))});
            }
        }
        for (const auto& s : b.segments()) {
            if (s.start_time < end) {
                tb.append({s.start_time, std::min(s.end_time, end), s.start_point, s.at(std::min(s.end_time, end))});
            }
        }
        const auto exact = earliest_approach(ta, tb, eps, 0.0);
        const auto scanned = scan_approach(ta, tb, eps, 0.0, 1e-4);
        CHECK(exact.has_value() == scanned.has_value());
        if (exact && scanned) {
            ++hits;
            CHECK(std::abs(*exact - *scanned) <= 1e-3);
            // soundness: within eps at the result, strictly outside before it
            const double d = dist(position_at(ta, *exact), position_at(tb, *exact));
            CHECK(d <= eps);
            if (*exact > 0.0) {
                CHECK(d >= eps - kSpeedTolerance);
            }
            for (double t = 0.0; t < *exact - 1e-6; t += (*exact) / 200.0) {
                CHECK(dist(position_at(ta, t), position_at(tb, t)) > eps - kSpeedTolerance);
            }
        }
    }
    CHECK(hits > 5);
}
