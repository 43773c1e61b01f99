#include "gathering/geometry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace gathering {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Smallest relative |v|^2 treated as genuine relative motion.
constexpr double kStillVelocity2 = 1e-24;

} // namespace

Vec2 Vec2::normalized() const {
    const double len = length();
    if (len == 0.0) {
        return {};
    }
    return {dx / len, dy / len};
}

double dist(Point p, Point q) { return (q - p).length(); }

Vec2 heading_clockwise_from_north(double angle) { return {std::sin(angle), std::cos(angle)}; }

Vec2 Segment::velocity() const {
    const double d = duration();
    if (d <= 0.0 || !is_moving()) {
        return {};
    }
    return (end_point - start_point) * (1.0 / d);
}

Point Segment::at(double t) const {
    if (t <= start_time) {
        return start_point;
    }
    if (t >= end_time) {
        return end_point;
    }
    const double f = (t - start_time) / (end_time - start_time);
    return start_point + (end_point - start_point) * f;
}

Trajectory::Trajectory(double origin_time, Point origin) : origin_time_(origin_time), origin_(origin) {}

double Trajectory::end_time() const {
    return segments_.empty() ? origin_time_ : segments_.back().end_time;
}

Point Trajectory::end_point() const { return segments_.empty() ? origin_ : segments_.back().end_point; }

void Trajectory::append(const Segment& s) {
    if (!(s.end_time >= s.start_time)) {
        throw std::invalid_argument("segment ends before it starts");
    }
    if (std::abs(s.start_time - end_time()) > kTimeTolerance ||
        dist(s.start_point, end_point()) > kPositionTolerance) {
        throw std::invalid_argument("segment is not contiguous with the trajectory");
    }
    const double len = dist(s.start_point, s.end_point);
    const double d = s.duration();
    if (len > 0.0 && std::abs(len - d) > kSpeedTolerance * std::max(1.0, d)) {
        throw std::invalid_argument("segment speed is neither 0 nor 1 (length " + std::to_string(len) +
                                    ", duration " + std::to_string(d) + ")");
    }
    segments_.push_back(s);
}

void Trajectory::append_move(double end_time, Point end_point) {
    append({this->end_time(), end_time, this->end_point(), end_point});
}

void Trajectory::append_wait(double end_time) {
    append({this->end_time(), end_time, this->end_point(), this->end_point()});
}

Point position_at(const Trajectory& traj, double t) {
    if (t < traj.origin_time() - kTimeTolerance || t > traj.end_time() + kTimeTolerance) {
        throw std::out_of_range("time " + std::to_string(t) + " outside trajectory span [" +
                                std::to_string(traj.origin_time()) + ", " +
                                std::to_string(traj.end_time()) + "]");
    }
    const auto segs = traj.segments();
    if (segs.empty()) {
        return traj.origin();
    }
    // first segment whose end is >= t
    const auto it = std::lower_bound(segs.begin(), segs.end(), t,
                                     [](const Segment& s, double v) { return s.end_time < v; });
    if (it == segs.end()) {
        return segs.back().end_point;
    }
    return it->at(t);
}

std::optional<std::pair<double, double>> contact_interval(Vec2 r0, Vec2 v, double radius) {
    const double a = v.norm2();
    const double c = r0.norm2() - radius * radius;
    if (a < kStillVelocity2) {
        if (c <= 0.0) {
            return std::pair{-kInf, kInf};
        }
        return std::nullopt;
    }
    // a s^2 + 2 b s + c = 0
    const double b = r0.dot(v);
    const double disc = b * b - a * c;
    if (disc < 0.0) {
        return std::nullopt;
    }
    const double root = std::sqrt(disc);
    // Stable pairing: q carries the larger-magnitude numerator.
    const double q = -(b + std::copysign(root, b));
    double s1 = 0.0;
    double s2 = 0.0;
    if (q == 0.0) {
        s1 = s2 = 0.0;
    } else {
        s1 = q / a;
        s2 = c / q;
    }
    if (s1 > s2) {
        std::swap(s1, s2);
    }
    return std::pair{s1, s2};
}

namespace {

// Nudge a boundary root forward until the measured distance is within eps.
double polish_entry(Point pa, Point pb, Vec2 va, Vec2 vb, double t0, double t, double limit, double eps) {
    auto d = [&](double s) { return ((pb + vb * (s - t0)) - (pa + va * (s - t0))).length(); };
    if (d(t) <= eps) {
        return t;
    }
    double step = 1e-15 * std::max(1.0, std::abs(t));
    while (step <= kTimeTolerance) {
        const double cand = std::min(t + step, limit);
        if (d(cand) <= eps) {
            return cand;
        }
        step *= 2.0;
    }
    return t;
}

} // namespace

std::optional<double> earliest_approach(const Trajectory& a, const Trajectory& b, double eps, double t_from) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("eps must be positive");
    }
    const double start = std::max(a.origin_time(), b.origin_time());
    const double stop = std::min(a.end_time(), b.end_time());
    if (t_from < start - kTimeTolerance || t_from > stop + kTimeTolerance) {
        throw std::invalid_argument("trajectories do not both cover t_from");
    }

    // Merge the breakpoints of both trajectories into pieces on which the
    // relative motion is linear.
    std::vector<double> cuts{t_from, stop};
    for (const auto* traj : {&a, &b}) {
        for (const auto& s : traj->segments()) {
            if (s.end_time > t_from && s.end_time < stop) {
                cuts.push_back(s.end_time);
            }
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto velocity_on = [](const Trajectory& traj, double lo, double hi) {
        const double mid = 0.5 * (lo + hi);
        for (const auto& s : traj.segments()) {
            if (s.start_time <= mid && mid <= s.end_time) {
                return s.velocity();
            }
        }
        return Vec2{};
    };

    if (cuts.size() == 1) {
        cuts.push_back(cuts.front());
    }
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i];
        const double hi = cuts[i + 1];
        const Point pa = position_at(a, lo);
        const Point pb = position_at(b, lo);
        const Vec2 va = hi > lo ? velocity_on(a, lo, hi) : Vec2{};
        const Vec2 vb = hi > lo ? velocity_on(b, lo, hi) : Vec2{};
        const auto window = contact_interval(pb - pa, vb - va, eps);
        if (!window) {
            continue;
        }
        double enter = window->first;
        double leave = window->second;
        if (std::abs(enter) <= kTimeTolerance) {
            enter = 0.0;
        }
        if (std::abs(enter - (hi - lo)) <= kTimeTolerance) {
            enter = hi - lo;
        }
        if (leave < 0.0 || enter > hi - lo) {
            continue;
        }
        const double t = lo + std::max(enter, 0.0);
        return polish_entry(pa, pb, va, vb, lo, t, lo + std::min(leave, hi - lo), eps);
    }
    return std::nullopt;
}

} // namespace gathering
