#include "gathering/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace gathering {

using nlohmann::json;

InitialConfiguration::InitialConfiguration(double epsilon, std::vector<AgentStart> agents)
    : epsilon_(epsilon), agents_(std::move(agents)) {
    if (!std::isfinite(epsilon_) || !(epsilon_ > 0.0)) {
        throw ConfigError("epsilon must be a positive finite number");
    }
    if (agents_.size() < 2) {
        throw ConfigError("a configuration needs at least two agents");
    }
    for (std::size_t i = 0; i < agents_.size(); ++i) {
        const auto& a = agents_[i];
        if (!a.point.finite() || !std::isfinite(a.start_time)) {
            throw ConfigError("agent " + std::to_string(i) + " has a non-finite value");
        }
        if (a.start_time < 0.0) {
            throw ConfigError("agent " + std::to_string(i) + " has a negative start time");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (dist(a.point, agents_[j].point) < kPositionTolerance) {
                throw ConfigError("agents " + std::to_string(j) + " and " + std::to_string(i) +
                                  " start at the same point");
            }
        }
    }
}

double InitialConfiguration::max_start_time() const {
    double m = 0.0;
    for (const auto& a : agents_) {
        m = std::max(m, a.start_time);
    }
    return m;
}

double InitialConfiguration::diameter() const {
    double m = 0.0;
    for (std::size_t i = 0; i < agents_.size(); ++i) {
        for (std::size_t j = i + 1; j < agents_.size(); ++j) {
            m = std::max(m, dist(agents_[i].point, agents_[j].point));
        }
    }
    return m;
}

std::string_view to_string(Feasibility f) {
    switch (f) {
    case Feasibility::kUngatherable:
        return "UNGATHERABLE";
    case Feasibility::kBadGatherable:
        return "BAD";
    case Feasibility::kGood:
        return "GOOD";
    }
    return "?";
}

double pair_slack(const InitialConfiguration& cfg, std::size_t i, std::size_t j) {
    const auto& a = cfg[i];
    const auto& b = cfg[j];
    return std::abs(a.start_time - b.start_time) - (dist(a.point, b.point) - cfg.epsilon());
}

FeasibilityClass classify(const InitialConfiguration& cfg) {
    std::optional<std::pair<std::size_t, std::size_t>> boundary;
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        for (std::size_t j = i + 1; j < cfg.size(); ++j) {
            const double s = pair_slack(cfg, i, j);
            if (s > kTimeTolerance) {
                return {Feasibility::kGood, std::pair{i, j}};
            }
            if (s >= -kTimeTolerance && !boundary) {
                boundary = std::pair{i, j};
            }
        }
    }
    if (boundary) {
        return {Feasibility::kBadGatherable, boundary};
    }
    return {Feasibility::kUngatherable, std::nullopt};
}

std::vector<Vec2> vector_sequence(const InitialConfiguration& cfg) {
    std::vector<Vec2> out;
    out.reserve(cfg.size() * (cfg.size() - 1));
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        for (std::size_t j = 0; j < cfg.size(); ++j) {
            if (i != j) {
                out.push_back(cfg[j].point - cfg[i].point);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](Vec2 v, Vec2 w) { return lex_less(v, w); });
    return out;
}

namespace {

template <typename Accept>
std::optional<Vec2> largest_vector(const InitialConfiguration& cfg, Accept accept) {
    std::optional<Vec2> best;
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        for (std::size_t j = 0; j < cfg.size(); ++j) {
            if (i == j || !accept(i, j)) {
                continue;
            }
            const Vec2 v = cfg[j].point - cfg[i].point;
            if (!best || lex_less(*best, v)) {
                best = v;
            }
        }
    }
    return best;
}

} // namespace

Vec2 qualifying_vector(const InitialConfiguration& cfg) {
    const auto v = largest_vector(cfg, [&](std::size_t i, std::size_t j) {
        return pair_slack(cfg, i, j) >= -kTimeTolerance;
    });
    if (!v) {
        throw ConfigError("configuration is not gatherable: no pair qualifies");
    }
    return *v;
}

Vec2 approach_vector(const InitialConfiguration& cfg, bool allow_ungatherable) {
    auto tail_is_later = [&](std::size_t i, std::size_t j) { return cfg[i].start_time >= cfg[j].start_time; };
    const auto v = largest_vector(cfg, [&](std::size_t i, std::size_t j) {
        return tail_is_later(i, j) && pair_slack(cfg, i, j) >= -kTimeTolerance;
    });
    if (v) {
        return *v;
    }
    if (!allow_ungatherable) {
        throw ConfigError("configuration is not gatherable: no pair qualifies");
    }
    return *largest_vector(cfg, tail_is_later);
}

namespace {

std::string describe_parse_error(std::string_view text, const json::parse_error& e) {
    const std::size_t byte = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t line_start = 0;
    for (std::size_t i = 0; i < byte; ++i) {
        if (text[i] == '\n') {
            ++line;
            line_start = i + 1;
        }
    }
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) {
        line_end = text.size();
    }
    std::ostringstream os;
    os << "malformed JSON at line " << line << ", column " << (byte - line_start + 1) << ":\n  "
       << text.substr(line_start, line_end - line_start) << "\n  " << std::string(byte - line_start, ' ') << "^";
    return os.str();
}

double number_field(const json& obj, const char* key, std::size_t index) {
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_number()) {
        throw ConfigError("agent " + std::to_string(index) + ": field \"" + key + "\" must be a number");
    }
    return it->get<double>();
}

} // namespace

InitialConfiguration config_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError(describe_parse_error(text, e));
    }
    if (!doc.is_object()) {
        throw ConfigError("configuration must be a JSON object");
    }
    const auto eps = doc.find("epsilon");
    if (eps == doc.end() || !eps->is_number()) {
        throw ConfigError("field \"epsilon\" must be a number");
    }
    const auto agents = doc.find("agents");
    if (agents == doc.end() || !agents->is_array()) {
        throw ConfigError("field \"agents\" must be an array");
    }
    std::vector<AgentStart> starts;
    for (std::size_t i = 0; i < agents->size(); ++i) {
        const auto& a = (*agents)[i];
        if (!a.is_object()) {
            throw ConfigError("agent " + std::to_string(i) + " must be an object");
        }
        starts.push_back({{number_field(a, "x", i), number_field(a, "y", i)}, number_field(a, "t", i)});
    }
    return InitialConfiguration(eps->get<double>(), std::move(starts));
}

InitialConfiguration load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return config_from_json(buf.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

std::string config_to_json(const InitialConfiguration& cfg) {
    json doc;
    doc["epsilon"] = cfg.epsilon();
    doc["agents"] = json::array();
    for (const auto& a : cfg.agents()) {
        doc["agents"].push_back({{"x", a.point.x}, {"y", a.point.y}, {"t", a.start_time}});
    }
    return doc.dump(2);
}

void save_config(const InitialConfiguration& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot write " + path);
    }
    out << config_to_json(cfg) << '\n';
}

InitialConfiguration translated(const InitialConfiguration& cfg, Vec2 offset) {
    auto agents = cfg.agents();
    for (auto& a : agents) {
        a.point = a.point + offset;
    }
    return InitialConfiguration(cfg.epsilon(), std::move(agents));
}

} // namespace gathering
