#include "gathering/assumption.hpp"

#include "gathering/engine.hpp"
#include "gathering/programs.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace gathering {

AssumptionSet::AssumptionSet(std::vector<int> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) {
        throw AssumptionError("assumption set is empty");
    }
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (elements_[i] < 2) {
            throw AssumptionError("assumption set elements must be > 1, got " + std::to_string(elements_[i]));
        }
        if (i > 0 && elements_[i] <= elements_[i - 1]) {
            throw AssumptionError("assumption set must be strictly increasing");
        }
    }
}

AssumptionSet AssumptionSet::parse(std::string_view text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string_view::npos) {
            comma = text.size();
        }
        std::string_view item = text.substr(pos, comma - pos);
        while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) {
            item.remove_prefix(1);
        }
        while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) {
            item.remove_suffix(1);
        }
        int value = 0;
        const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (item.empty() || ec != std::errc{} || end != item.data() + item.size()) {
            throw AssumptionError("cannot parse assumption set element \"" + std::string(item) + "\"");
        }
        out.push_back(value);
        pos = comma + 1;
    }
    return AssumptionSet(std::move(out));
}

std::string AssumptionSet::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        s += (i ? "," : "") + std::to_string(elements_[i]);
    }
    return s;
}

std::optional<DependencyCertificate> find_dependency(const AssumptionSet& a) {
    const auto& el = a.elements();
    const int top = a.max();
    // reach[s]: s is a nonempty sum of the elements processed so far;
    // last[s]: the element added last on one such path.
    std::vector<bool> reach(static_cast<std::size_t>(top) + 1, false);
    std::vector<int> last(static_cast<std::size_t>(top) + 1, 0);
    for (const int e : el) {
        if (reach[static_cast<std::size_t>(e)]) {
            DependencyCertificate c;
            c.target = e;
            for (int s = e; s > 0; s -= last[static_cast<std::size_t>(s)]) {
                const int part = last[static_cast<std::size_t>(s)];
                auto it = std::find_if(c.terms.begin(), c.terms.end(), [&](const auto& t) { return t.second == part; });
                if (it == c.terms.end()) {
                    c.terms.emplace_back(1, part);
                } else {
                    ++it->first;
                }
            }
            std::sort(c.terms.begin(), c.terms.end(), [](const auto& x, const auto& y) { return x.second < y.second; });
            return c;
        }
        for (int s = e; s <= top; ++s) {
            const bool via = s == e || reach[static_cast<std::size_t>(s - e)];
            if (via && !reach[static_cast<std::size_t>(s)]) {
                reach[static_cast<std::size_t>(s)] = true;
                last[static_cast<std::size_t>(s)] = e;
            }
        }
    }
    return std::nullopt;
}

std::string format_certificate(const DependencyCertificate& c) {
    std::ostringstream os;
    os << c.target << " =";
    for (std::size_t i = 0; i < c.terms.size(); ++i) {
        os << (i ? " + " : " ") << c.terms[i].first << "·" << c.terms[i].second;
    }
    return os.str();
}

std::vector<AgentStart> canonical_good_cluster(int m, double epsilon) {
    std::vector<AgentStart> out;
    for (int i = 0; i < m; ++i) {
        out.push_back({{0.5 * epsilon * i, 0.0}, 0.0});
    }
    return out;
}

InitialConfiguration build_dependent_counterexample(const AssumptionSet& a, double epsilon) {
    const auto cert = find_dependency(a);
    if (!cert) {
        throw AssumptionError("assumption set {" + a.to_string() + "} is independent");
    }
    const double gap = 2.0 * epsilon + 10.0 * kPositionTolerance;
    std::vector<AgentStart> agents;
    double cursor = 0.0;
    for (const auto& [count, size] : cert->terms) {
        const InitialConfiguration sub(epsilon, canonical_good_cluster(size, epsilon));
        const Trace trace = run(sub, gather_a_program(a), default_horizon(sub));
        if (trace.verdict.kind != VerdictKind::kGathered) {
            throw EngineError("sub-configuration of size " + std::to_string(size) + " did not gather");
        }
        // Bounding box of every trajectory; its circumscribed disc contains the run.
        double lo_x = 0.0, hi_x = 0.0, lo_y = 0.0, hi_y = 0.0;
        bool first = true;
        for (const auto& traj : trace.trajectories) {
            auto take = [&](Point p) {
                if (first) {
                    lo_x = hi_x = p.x;
                    lo_y = hi_y = p.y;
                    first = false;
                }
                lo_x = std::min(lo_x, p.x);
                hi_x = std::max(hi_x, p.x);
                lo_y = std::min(lo_y, p.y);
                hi_y = std::max(hi_y, p.y);
            };
            take(traj.origin());
            for (const auto& s : traj.segments()) {
                take(s.end_point);
            }
        }
        const Point centre{(lo_x + hi_x) / 2.0, (lo_y + hi_y) / 2.0};
        const double radius = std::hypot(hi_x - lo_x, hi_y - lo_y) / 2.0;
        for (int c = 0; c < count; ++c) {
            if (!agents.empty()) {
                cursor += gap;
            }
            const Vec2 shift{cursor + radius - centre.x, -centre.y};
            for (const auto& s : sub.agents()) {
                agents.push_back({s.point + shift, s.start_time});
            }
            cursor += 2.0 * radius;
        }
    }
    return InitialConfiguration(epsilon, std::move(agents));
}

} // namespace gathering
