#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace gathering {

// Event-time tolerance.
inline constexpr double kTimeTolerance = 1e-9;
// Two positions closer than this are the same point.
inline constexpr double kPositionTolerance = 1e-6;
// Allowed deviation of a moving segment's speed from 1.
inline constexpr double kSpeedTolerance = 1e-9;

struct Vec2 {
    double dx = 0.0;
    double dy = 0.0;

    constexpr Vec2 operator+(Vec2 o) const { return {dx + o.dx, dy + o.dy}; }
    constexpr Vec2 operator-(Vec2 o) const { return {dx - o.dx, dy - o.dy}; }
    constexpr Vec2 operator-() const { return {-dx, -dy}; }
    constexpr Vec2 operator*(double s) const { return {dx * s, dy * s}; }
    constexpr bool operator==(const Vec2&) const = default;

    constexpr double dot(Vec2 o) const { return dx * o.dx + dy * o.dy; }
    constexpr double norm2() const { return dot(*this); }
    double length() const { return std::hypot(dx, dy); }
    bool finite() const { return std::isfinite(dx) && std::isfinite(dy); }
    Vec2 normalized() const;
};

struct Point {
    double x = 0.0;
    double y = 0.0;

    constexpr Point operator+(Vec2 v) const { return {x + v.dx, y + v.dy}; }
    constexpr Point operator-(Vec2 v) const { return {x - v.dx, y - v.dy}; }
    constexpr Vec2 operator-(Point o) const { return {x - o.x, y - o.y}; }
    constexpr bool operator==(const Point&) const = default;

    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

double dist(Point p, Point q);

/// Strict lexicographic order on (x, y). "Larger agent" and "largest vector"
/// are defined through this order everywhere in the library.
constexpr bool lex_less(Point p, Point q) {
    return p.x < q.x || (p.x == q.x && p.y < q.y);
}
constexpr bool lex_less(Vec2 v, Vec2 w) {
    return v.dx < w.dx || (v.dx == w.dx && v.dy < w.dy);
}

/// Unit vector at `angle` radians clockwise from North (0, 1).
Vec2 heading_clockwise_from_north(double angle);

struct Segment {
    double start_time = 0.0;
    double end_time = 0.0;
    Point start_point;
    Point end_point;

    double duration() const { return end_time - start_time; }
    bool is_moving() const { return !(start_point == end_point); }
    /// Constant velocity over the segment; zero for waits.
    Vec2 velocity() const;
    /// Linear interpolation; `t` is clamped into the segment.
    Point at(double t) const;
};

/// Piecewise-linear path of one agent. Segments are contiguous in time and
/// space and move at speed 0 or 1.
class Trajectory {
public:
    Trajectory() = default;
    Trajectory(double origin_time, Point origin);

    /// Appends a segment that must start where and when the previous ends.
    /// Throws std::invalid_argument on a gap or an illegal speed.
    void append(const Segment& s);
    void append_move(double end_time, Point end_point);
    void append_wait(double end_time);

    double origin_time() const { return origin_time_; }
    Point origin() const { return origin_; }
    double end_time() const;
    Point end_point() const;
    std::span<const Segment> segments() const { return segments_; }

private:
    double origin_time_ = 0.0;
    Point origin_;
    std::vector<Segment> segments_;
};

/// Position at time t. Throws std::out_of_range outside
/// [origin_time, end_time].
Point position_at(const Trajectory& traj, double t);

/// Closed interval of relative time (offset from the reference instant) during
/// which |r0 + v * s| <= radius. Unbounded ends are +-infinity. Empty when the
/// relative path never enters the disc.
std::optional<std::pair<double, double>> contact_interval(Vec2 r0, Vec2 v, double radius);

/// Smallest t >= t_from at which the two agents are within eps. Absent if
/// that never happens before either trajectory ends. Throws
/// std::invalid_argument when the trajectories do not both cover t_from.
std::optional<double> earliest_approach(const Trajectory& a, const Trajectory& b, double eps,
                                        double t_from);

} // namespace gathering
