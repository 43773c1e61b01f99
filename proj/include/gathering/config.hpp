#pragma once

#include "gathering/geometry.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gathering {

/// Raised for malformed or invalid configuration input.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct AgentStart {
    Point point;
    double start_time = 0.0;
};

/// The adversary's choice: start points, start times and the visibility
/// radius epsilon.
class InitialConfiguration {
public:
    /// Validates: n >= 2, epsilon > 0, finite values, start times >= 0 and
    /// pairwise distinct start points. Throws ConfigError.
    InitialConfiguration(double epsilon, std::vector<AgentStart> agents);

    double epsilon() const { return epsilon_; }
    std::size_t size() const { return agents_.size(); }
    const std::vector<AgentStart>& agents() const { return agents_; }
    const AgentStart& operator[](std::size_t i) const { return agents_[i]; }

    double max_start_time() const;
    /// Largest distance between two start points.
    double diameter() const;

private:
    double epsilon_;
    std::vector<AgentStart> agents_;
};

enum class Feasibility { kUngatherable, kBadGatherable, kGood };

struct FeasibilityClass {
    Feasibility kind = Feasibility::kUngatherable;
    std::optional<std::pair<std::size_t, std::size_t>> witness;
};

std::string_view to_string(Feasibility f);

/// |t_i - t_j| - (dist(p_i, p_j) - epsilon): positive for a good pair, zero on
/// the boundary, negative when the pair cannot approach.
double pair_slack(const InitialConfiguration& cfg, std::size_t i, std::size_t j);

FeasibilityClass classify(const InitialConfiguration& cfg);

/// All n(n-1) difference vectors p_j - p_i (i != j) in ascending lex order.
std::vector<Vec2> vector_sequence(const InitialConfiguration& cfg);

/// Largest vector p_j - p_i whose pair satisfies
/// |t_i - t_j| >= dist(p_i, p_j) - epsilon. Throws ConfigError when no pair
/// qualifies.
Vec2 qualifying_vector(const InitialConfiguration& cfg);

/// Vector used by the dedicated algorithm's first move: the largest qualifying
/// p_j - p_i among pairs whose tail agent i starts no earlier than the head
/// agent j. With that orientation the later agent walks onto the earlier
/// agent's start, so the pair approaches for every delay. When
/// `allow_ungatherable` is set and nothing qualifies, the largest such vector
/// over all pairs is returned instead of throwing.
Vec2 approach_vector(const InitialConfiguration& cfg, bool allow_ungatherable = false);

InitialConfiguration config_from_json(std::string_view text);
InitialConfiguration load_config(const std::string& path);
std::string config_to_json(const InitialConfiguration& cfg);
void save_config(const InitialConfiguration& cfg, const std::string& path);

/// Same configuration with every start point shifted by `offset`.
InitialConfiguration translated(const InitialConfiguration& cfg, Vec2 offset);

} // namespace gathering
