#include "gathering/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace gathering {

namespace {

constexpr int kMaxAttempts = 200000;

std::vector<AgentStart> draw_agents(std::mt19937_64& rng, const SweepSpec& spec, int count) {
    std::uniform_real_distribution<double> space(0.0, spec.spatial_scale);
    std::uniform_real_distribution<double> time(0.0, spec.time_scale);
    std::vector<AgentStart> out;
    for (int i = 0; i < count; ++i) {
        const double x = space(rng);
        const double y = space(rng);
        out.push_back({{x, y}, time(rng)});
    }
    return out;
}

bool distinct(const std::vector<AgentStart>& agents) {
    for (std::size_t i = 0; i < agents.size(); ++i) {
        for (std::size_t j = i + 1; j < agents.size(); ++j) {
            if (dist(agents[i].point, agents[j].point) < kPositionTolerance) {
                return false;
            }
        }
    }
    return true;
}

// A pair exactly on the boundary |dt| = d - eps, the rest sampled so that no
// pair becomes good.
std::optional<InitialConfiguration> draw_bad(std::mt19937_64& rng, const SweepSpec& spec) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double eps = spec.epsilon;
    const double d = eps + unit(rng) * std::max(spec.spatial_scale - eps, eps);
    const double angle = 2.0 * std::numbers::pi * unit(rng);
    const Point p{unit(rng) * spec.spatial_scale, unit(rng) * spec.spatial_scale};
    const double t0 = unit(rng) * spec.time_scale;
    std::vector<AgentStart> agents{{p, t0}, {p + Vec2{std::cos(angle), std::sin(angle)} * d, t0 + (d - eps)}};
    if (unit(rng) < 0.5) {
        std::swap(agents[0], agents[1]);
    }
    for (int extra = 2; extra < spec.n; ++extra) {
        bool placed = false;
        for (int attempt = 0; attempt < 1000 && !placed; ++attempt) {
            auto candidate = agents;
            candidate.push_back(draw_agents(rng, spec, 1).front());
            if (!distinct(candidate)) {
                continue;
            }
            const InitialConfiguration cfg(eps, candidate);
            if (classify(cfg).kind == Feasibility::kBadGatherable) {
                agents = std::move(candidate);
                placed = true;
            }
        }
        if (!placed) {
            return std::nullopt;
        }
    }
    return InitialConfiguration(eps, std::move(agents));
}

bool frozen(StateTag s) { return s == StateTag::kToken || s == StateTag::kShadow; }

} // namespace

void validate(const SweepSpec& spec) {
    if (spec.n < 2) {
        throw std::invalid_argument("sweep needs n >= 2");
    }
    if (spec.count < 1) {
        throw std::invalid_argument("sweep needs count >= 1");
    }
    if (!(spec.epsilon > 0.0) || !(spec.spatial_scale > 0.0) || !(spec.time_scale > 0.0)) {
        throw std::invalid_argument("epsilon and scales must be positive");
    }
    if (spec.algorithm == Algorithm::kGatherA && !spec.assumptions) {
        throw std::invalid_argument("gather-a needs an assumption set");
    }
    if (spec.horizon && !(*spec.horizon > 0.0)) {
        throw std::invalid_argument("horizon must be positive");
    }
}

InitialConfiguration sweep_config(const SweepSpec& spec, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(seq);
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        if (spec.feasibility == Feasibility::kBadGatherable) {
            if (auto cfg = draw_bad(rng, spec)) {
                return *cfg;
            }
            continue;
        }
        auto agents = draw_agents(rng, spec, spec.n);
        if (!distinct(agents)) {
            continue;
        }
        InitialConfiguration cfg(spec.epsilon, std::move(agents));
        if (classify(cfg).kind == spec.feasibility) {
            return cfg;
        }
    }
    throw std::runtime_error("could not generate a " + std::string(to_string(spec.feasibility)) +
                             " configuration in " + std::to_string(kMaxAttempts) + " attempts");
}

ProgramFactory make_program(Algorithm algorithm, const InitialConfiguration& cfg,
                            const std::optional<AssumptionSet>& assumptions) {
    switch (algorithm) {
    case Algorithm::kDedicated:
        return dedicated_program(cfg, cfg.epsilon(), true);
    case Algorithm::kGatherN:
        return gather_n_program(static_cast<int>(cfg.size()));
    case Algorithm::kGatherA:
        if (!assumptions) {
            throw std::invalid_argument("gather-a needs an assumption set");
        }
        return gather_a_program(*assumptions);
    }
    throw std::invalid_argument("unknown algorithm");
}

std::vector<std::string> check_gather_states(const Trace& trace) {
    std::vector<std::string> out;
    const bool token_seen = std::any_of(trace.events.begin(), trace.events.end(), [](const Event& e) {
        return e.kind == EventKind::kState && e.to == StateTag::kToken;
    });
    if (!token_seen) {
        out.push_back("no agent ever became a token");
    }
    const auto cruisers = std::count(trace.final_states.begin(), trace.final_states.end(), StateTag::kCruiser);
    if (cruisers != 0) {
        out.push_back(std::to_string(cruisers) + " cruiser(s) left at the end");
    }
    const auto explorers = std::count(trace.final_states.begin(), trace.final_states.end(), StateTag::kExplorer);
    if (explorers != 1) {
        out.push_back(std::to_string(explorers) + " explorer(s) at the end, expected 1");
    }
    const auto others = std::count_if(trace.final_states.begin(), trace.final_states.end(), frozen);
    if (static_cast<std::size_t>(others + explorers + cruisers) != trace.final_states.size()) {
        out.push_back("agent in a state outside the gathering state machine");
    }
    return out;
}

SweepReport run_sweep(const SweepSpec& spec) {
    validate(spec);
    SweepReport report;
    report.runs.resize(static_cast<std::size_t>(spec.count));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= report.runs.size()) {
                return;
            }
            try {
                const auto cfg = sweep_config(spec, i);
                const double horizon = spec.horizon ? *spec.horizon : default_horizon(cfg);
                const Trace trace = run(cfg, make_program(spec.algorithm, cfg, spec.assumptions), horizon);
                SweepRun r;
                r.index = i;
                r.verdict = trace.verdict.kind;
                r.end_time = trace.end_time;
                r.ga_events = trace.ga_count();
                r.violations = check_trace_invariants(trace);
                if (spec.algorithm == Algorithm::kGatherN && spec.feasibility == Feasibility::kGood) {
                    for (auto& v : check_gather_states(trace)) {
                        r.violations.push_back(std::move(v));
                    }
                }
                report.runs[i] = std::move(r);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = report.runs.size();
                return;
            }
        }
    };

    unsigned threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(spec.count));
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) {
        pool.emplace_back(worker);
    }
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    for (const auto& r : report.runs) {
        report.total_ga_events += r.ga_events;
        report.violations += r.violations.size();
        if (r.verdict == VerdictKind::kGathered) {
            ++report.gathered;
            report.max_gather_time = std::max(report.max_gather_time, r.end_time);
        }
    }
    return report;
}

std::string format_report(const SweepSpec& spec, const SweepReport& report) {
    std::ostringstream os;
    os << "configs      " << report.runs.size() << " (" << to_string(spec.feasibility) << ", n=" << spec.n
       << ", seed=" << spec.seed << ", " << to_string(spec.algorithm);
    if (spec.assumptions) {
        os << " {" << spec.assumptions->to_string() << "}";
    }
    os << ")\n";
    os.setf(std::ios::fixed);
    os.precision(2);
    os << "gather rate  " << report.gather_rate() << " (" << report.gathered << "/" << report.runs.size() << ")\n";
    os.precision(6);
    os << "max time     " << report.max_gather_time << "\n";
    os << "GA events    " << report.total_ga_events << "\n";
    os << "violations   " << report.violations << "\n";
    for (const auto& r : report.runs) {
        for (const auto& v : r.violations) {
            os << "  config " << r.index << ": " << v << "\n";
        }
    }
    return os.str();
}

} // namespace gathering
