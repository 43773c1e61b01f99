#pragma once

#include "gathering/config.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gathering {

class AssumptionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Candidate team sizes known to the agents: strictly increasing, all >= 2.
class AssumptionSet {
public:
    explicit AssumptionSet(std::vector<int> elements);

    /// Parses "2,3,7". Whitespace around elements is allowed.
    static AssumptionSet parse(std::string_view text);

    const std::vector<int>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    int operator[](std::size_t i) const { return elements_[i]; }
    int min() const { return elements_.front(); }
    int max() const { return elements_.back(); }

    std::string to_string() const;

private:
    std::vector<int> elements_;
};

/// a_k = sum of coefficient * element over strictly smaller elements.
struct DependencyCertificate {
    int target = 0;
    std::vector<std::pair<int, int>> terms;  // (coefficient, element), elements ascending
};

/// Absent when the set is independent; otherwise the smallest dependent
/// element with one combination witnessing it.
std::optional<DependencyCertificate> find_dependency(const AssumptionSet& a);

inline bool is_independent(const AssumptionSet& a) { return !find_dependency(a).has_value(); }

/// "7 = 2·2 + 1·3"
std::string format_certificate(const DependencyCertificate& c);

/// Shifted copies of gathered sub-configurations, one per certificate term
/// and multiplicity, far enough apart that no two clusters ever approach
/// under GATHER(A). Throws AssumptionError when the set is independent.
InitialConfiguration build_dependent_counterexample(const AssumptionSet& a, double epsilon);

/// Agents of a canonical GOOD configuration of size m: collinear, eps/2
/// apart, all starting at time 0.
std::vector<AgentStart> canonical_good_cluster(int m, double epsilon);

} // namespace gathering
