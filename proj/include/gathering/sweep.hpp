#pragma once

#include "gathering/assumption.hpp"
#include "gathering/config.hpp"
#include "gathering/engine.hpp"
#include "gathering/programs.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gathering {

struct SweepSpec {
    int n = 2;
    int count = 1;
    std::uint64_t seed = 0;
    Feasibility feasibility = Feasibility::kGood;
    Algorithm algorithm = Algorithm::kGatherN;
    std::optional<AssumptionSet> assumptions;  // gather-a only
    double epsilon = 0.5;
    double spatial_scale = 2.0;  // side of the square holding the start points
    double time_scale = 3.0;     // start times are drawn from [0, time_scale]
    std::optional<double> horizon;  // engine default when absent
    unsigned threads = 0;           // 0: hardware concurrency
};

/// Throws std::invalid_argument for an inconsistent spec.
void validate(const SweepSpec& spec);

/// Configuration number `index` of a sweep. Depends only on (seed, index) and
/// the generation parameters. Throws std::runtime_error when rejection
/// sampling cannot find a configuration of the requested class.
InitialConfiguration sweep_config(const SweepSpec& spec, std::size_t index);

ProgramFactory make_program(Algorithm algorithm, const InitialConfiguration& cfg,
                            const std::optional<AssumptionSet>& assumptions);

struct SweepRun {
    std::size_t index = 0;
    VerdictKind verdict = VerdictKind::kTimeout;
    double end_time = 0.0;
    std::size_t ga_events = 0;
    std::vector<std::string> violations;
};

struct SweepReport {
    std::vector<SweepRun> runs;  // by configuration index
    std::size_t gathered = 0;
    std::size_t total_ga_events = 0;
    std::size_t violations = 0;
    double max_gather_time = 0.0;

    double gather_rate() const { return runs.empty() ? 0.0 : static_cast<double>(gathered) / runs.size(); }
};

/// State-machine checks on a GATHER(n) trace of a good configuration: some
/// agent became a token, no cruiser is left and exactly one explorer remains.
std::vector<std::string> check_gather_states(const Trace& trace);

SweepReport run_sweep(const SweepSpec& spec);

std::string format_report(const SweepSpec& spec, const SweepReport& report);

} // namespace gathering
