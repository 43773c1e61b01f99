#include "gathering/trace_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace gathering {

using json = nlohmann::ordered_json;

namespace {

json point_json(Point p) { return json::array({p.x, p.y}); }

json event_json(const Event& e) {
    json j;
    j["t"] = e.time;
    j["kind"] = std::string(to_string(e.kind));
    switch (e.kind) {
    case EventKind::kAppear:
    case EventKind::kStop:
        j["agent"] = e.agents.front();
        j["position"] = point_json(e.positions.front());
        break;
    case EventKind::kState:
        j["agent"] = e.agents.front();
        j["from"] = std::string(to_string(e.from));
        j["to"] = std::string(to_string(e.to));
        break;
    case EventKind::kGa: {
        j["agents"] = e.agents;
        json pos = json::array();
        for (const auto p : e.positions) {
            pos.push_back(point_json(p));
        }
        j["positions"] = pos;
        json edges = json::array();
        for (const auto& [a, b] : e.new_edges) {
            edges.push_back({a, b});
        }
        j["new_edges"] = edges;
        break;
    }
    case EventKind::kOrder:
        j["issuer"] = e.agents.front();
        j["recipients"] = std::vector<std::size_t>(e.agents.begin() + 1, e.agents.end());
        j["target"] = point_json(*e.target);
        break;
    case EventKind::kHorizon:
        break;
    }
    return j;
}

json verdict_json(const Trace& trace) {
    const auto& v = trace.verdict;
    json j;
    j["kind"] = "verdict";
    j["verdict"] = std::string(to_string(v.kind));
    j["t"] = trace.end_time;
    if (v.kind == VerdictKind::kGathered) {
        j["point"] = point_json(v.group_points.front());
    } else if (v.kind == VerdictKind::kSplit) {
        j["groups"] = v.group_points.size();
        json pts = json::array();
        for (const auto p : v.group_points) {
            pts.push_back(point_json(p));
        }
        j["points"] = pts;
        j["sizes"] = v.group_sizes;
    }
    return j;
}

template <typename Writer>
void save_with(const std::string& path, Writer write) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    write(out);
    if (!out) {
        throw std::runtime_error("error writing " + path);
    }
}

std::string hue_colour(std::size_t i, std::size_t n) {
    const double hue = 360.0 * static_cast<double>(i) / static_cast<double>(std::max<std::size_t>(n, 1));
    return "hsl(" + std::to_string(static_cast<int>(hue)) + ",70%,45%)";
}

} // namespace

void write_trace_jsonl(const Trace& trace, std::ostream& out) {
    for (const auto& e : trace.events) {
        out << event_json(e).dump() << '\n';
    }
    out << verdict_json(trace).dump() << '\n';
}

void save_trace_jsonl(const Trace& trace, const std::string& path) {
    save_with(path, [&](std::ostream& o) { write_trace_jsonl(trace, o); });
}

void write_svg(const Trace& trace, std::ostream& out) {
    double lo_x = 0.0, hi_x = 0.0, lo_y = 0.0, hi_y = 0.0;
    bool first = true;
    auto take = [&](Point p, double pad) {
        if (first) {
            lo_x = hi_x = p.x;
            lo_y = hi_y = p.y;
            first = false;
        }
        lo_x = std::min(lo_x, p.x - pad);
        hi_x = std::max(hi_x, p.x + pad);
        lo_y = std::min(lo_y, p.y - pad);
        hi_y = std::max(hi_y, p.y + pad);
    };
    for (const auto& traj : trace.trajectories) {
        take(traj.origin(), 0.0);
        for (const auto& s : traj.segments()) {
            take(s.end_point, 0.0);
        }
    }
    for (const auto& e : trace.events) {
        if (e.kind == EventKind::kGa) {
            for (const auto p : e.positions) {
                take(p, trace.epsilon);
            }
        }
    }
    const double margin = 0.05 * std::max({hi_x - lo_x, hi_y - lo_y, 1.0});
    lo_x -= margin;
    hi_x += margin;
    lo_y -= margin;
    hi_y += margin;
    const double w = hi_x - lo_x;
    const double h = hi_y - lo_y;
    const double stroke = std::max(w, h) / 400.0;
    // SVG y grows downwards; flip so North is up.
    auto sx = [&](double x) { return x - lo_x; };
    auto sy = [&](double y) { return hi_y - y; };

    out.precision(10);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"" << static_cast<int>(800.0 * h / w)
        << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    const std::size_t n = trace.trajectories.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& traj = trace.trajectories[i];
        out << "<polyline class=\"agent\" data-agent=\"" << i << "\" fill=\"none\" stroke=\"" << hue_colour(i, n)
            << "\" stroke-width=\"" << stroke << "\" points=\"" << sx(traj.origin().x) << ',' << sy(traj.origin().y);
        for (const auto& s : traj.segments()) {
            if (s.is_moving()) {
                out << ' ' << sx(s.end_point.x) << ',' << sy(s.end_point.y);
            }
        }
        out << "\"/>\n";
    }
    for (const auto& e : trace.events) {
        if (e.kind != EventKind::kGa) {
            continue;
        }
        double cx = 0.0, cy = 0.0;
        for (const auto p : e.positions) {
            cx += p.x;
            cy += p.y;
        }
        cx /= static_cast<double>(e.positions.size());
        cy /= static_cast<double>(e.positions.size());
        out << "<circle class=\"ga\" cx=\"" << sx(cx) << "\" cy=\"" << sy(cy) << "\" r=\"" << trace.epsilon
            << "\" fill=\"none\" stroke=\"grey\" stroke-width=\"" << stroke / 2.0 << "\"/>\n";
    }
    for (const auto p : trace.verdict.group_points) {
        out << "<circle class=\"gather\" cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"" << 4.0 * stroke
            << "\" fill=\"red\"/>\n";
    }
    out << "</svg>\n";
}

void save_svg(const Trace& trace, const std::string& path) {
    save_with(path, [&](std::ostream& o) { write_svg(trace, o); });
}

} // namespace gathering
