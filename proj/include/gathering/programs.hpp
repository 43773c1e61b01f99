#pragma once

#include "gathering/assumption.hpp"
#include "gathering/config.hpp"
#include "gathering/engine.hpp"

namespace gathering {

/// The algorithm dedicated to one configuration. It is given the start
/// points and times as an unanchored set plus eps, and never learns which
/// of the agents it is. Throws ConfigError for an ungatherable configuration
/// unless `allow_ungatherable` is set, in which case the agents still walk
/// their out-and-back so the absence of approaches can be observed.
ProgramFactory dedicated_program(const InitialConfiguration& cfg_known, double eps,
                                 bool allow_ungatherable = false);

/// Universal algorithm for teams of known size n >= 2.
ProgramFactory gather_n_program(int n);

/// Universal algorithm for teams whose size lies in `a`.
ProgramFactory gather_a_program(const AssumptionSet& a);

enum class Algorithm { kDedicated, kGatherN, kGatherA };

/// "dedicated", "gather-n", "gather-a"
std::optional<Algorithm> parse_algorithm(std::string_view name);
std::string_view to_string(Algorithm a);

} // namespace gathering
