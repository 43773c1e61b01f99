#include "gathering/gathering.h"

#include "gathering/assumption.hpp"
#include "gathering/config.hpp"
#include "gathering/engine.hpp"
#include "gathering/programs.hpp"
#include "gathering/sweep.hpp"
#include "gathering/trace_io.hpp"

#include <cstring>
#include <limits>
#include <string>

struct gathering_config {
    gathering::InitialConfiguration cfg;
};

struct gathering_trace {
    gathering::Trace trace;
};

struct gathering_sweep {
    gathering::SweepSpec spec;
    gathering::SweepReport report;
};

namespace {

thread_local std::string last_error;

gathering_status fail(gathering_status code, std::string message) {
    last_error = std::move(message);
    return code;
}

// Runs `body`, mapping exceptions to status codes.
template <typename Body>
gathering_status guarded(Body body) {
    try {
        last_error.clear();
        return body();
    } catch (const gathering::ConfigError& e) {
        return fail(GATHERING_ERR_CONFIG, e.what());
    } catch (const gathering::AssumptionError& e) {
        return fail(GATHERING_ERR_ARGUMENT, e.what());
    } catch (const gathering::EngineError& e) {
        return fail(GATHERING_ERR_ENGINE, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(GATHERING_ERR_ARGUMENT, e.what());
    } catch (const std::runtime_error& e) {
        return fail(GATHERING_ERR_IO, e.what());
    } catch (const std::exception& e) {
        return fail(GATHERING_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(GATHERING_ERR_INTERNAL, "unknown error");
    }
}

gathering_status null_argument(const char* name) {
    return fail(GATHERING_ERR_ARGUMENT, std::string(name) + " must not be null");
}

gathering::Algorithm to_algorithm(gathering_algorithm a) {
    switch (a) {
    case GATHERING_DEDICATED:
        return gathering::Algorithm::kDedicated;
    case GATHERING_GATHER_N:
        return gathering::Algorithm::kGatherN;
    case GATHERING_GATHER_A:
        return gathering::Algorithm::kGatherA;
    }
    throw std::invalid_argument("unknown algorithm");
}

gathering::Feasibility to_feasibility(gathering_class c) {
    switch (c) {
    case GATHERING_UNGATHERABLE:
        return gathering::Feasibility::kUngatherable;
    case GATHERING_BAD:
        return gathering::Feasibility::kBadGatherable;
    case GATHERING_GOOD:
        return gathering::Feasibility::kGood;
    }
    throw std::invalid_argument("unknown configuration class");
}

std::optional<gathering::AssumptionSet> parse_set(const char* text) {
    if (!text || !*text) {
        return std::nullopt;
    }
    return gathering::AssumptionSet::parse(text);
}

} // namespace

extern "C" {

const char* gathering_last_error(void) { return last_error.c_str(); }

gathering_status gathering_config_load(const char* path, gathering_config** out) {
    if (!path || !out) {
        return null_argument("path and out");
    }
    return guarded([&] {
        *out = new gathering_config{gathering::load_config(path)};
        return GATHERING_OK;
    });
}

gathering_status gathering_config_from_json(const char* json, gathering_config** out) {
    if (!json || !out) {
        return null_argument("json and out");
    }
    return guarded([&] {
        *out = new gathering_config{gathering::config_from_json(json)};
        return GATHERING_OK;
    });
}

gathering_status gathering_config_create(double epsilon, size_t n, const double* xs, const double* ys,
                                         const double* ts, gathering_config** out) {
    if (!xs || !ys || !ts || !out) {
        return null_argument("coordinate arrays and out");
    }
    return guarded([&] {
        std::vector<gathering::AgentStart> agents;
        for (size_t i = 0; i < n; ++i) {
            agents.push_back({{xs[i], ys[i]}, ts[i]});
        }
        *out = new gathering_config{gathering::InitialConfiguration(epsilon, std::move(agents))};
        return GATHERING_OK;
    });
}

gathering_status gathering_config_save(const gathering_config* cfg, const char* path) {
    if (!cfg || !path) {
        return null_argument("cfg and path");
    }
    return guarded([&] {
        try {
            gathering::save_config(cfg->cfg, path);
        } catch (const gathering::ConfigError& e) {
            return fail(GATHERING_ERR_IO, e.what());
        }
        return GATHERING_OK;
    });
}

size_t gathering_config_size(const gathering_config* cfg) { return cfg ? cfg->cfg.size() : 0; }

void gathering_config_free(gathering_config* cfg) { delete cfg; }

gathering_status gathering_classify(const gathering_config* cfg, gathering_class* out, size_t* witness_i,
                                    size_t* witness_j) {
    if (!cfg || !out) {
        return null_argument("cfg and out");
    }
    return guarded([&] {
        const auto c = gathering::classify(cfg->cfg);
        switch (c.kind) {
        case gathering::Feasibility::kUngatherable:
            *out = GATHERING_UNGATHERABLE;
            break;
        case gathering::Feasibility::kBadGatherable:
            *out = GATHERING_BAD;
            break;
        case gathering::Feasibility::kGood:
            *out = GATHERING_GOOD;
            break;
        }
        const size_t none = std::numeric_limits<size_t>::max();
        if (witness_i) {
            *witness_i = c.witness ? c.witness->first : none;
        }
        if (witness_j) {
            *witness_j = c.witness ? c.witness->second : none;
        }
        return GATHERING_OK;
    });
}

gathering_status gathering_simulate(const gathering_config* cfg, const gathering_sim_options* opts,
                                    gathering_trace** out) {
    if (!cfg || !opts || !out) {
        return null_argument("cfg, opts and out");
    }
    return guarded([&] {
        const auto algorithm = to_algorithm(opts->algorithm);
        const auto set = parse_set(opts->assumption_set);
        if (algorithm == gathering::Algorithm::kGatherA && !set) {
            return fail(GATHERING_ERR_ARGUMENT, "gather-a needs an assumption set");
        }
        std::optional<gathering::ProgramFactory> factory;
        if (algorithm == gathering::Algorithm::kDedicated) {
            factory = gathering::dedicated_program(cfg->cfg, cfg->cfg.epsilon());
        } else {
            factory = gathering::make_program(algorithm, cfg->cfg, set);
        }
        const double horizon = opts->horizon > 0.0 ? opts->horizon : gathering::default_horizon(cfg->cfg);
        *out = new gathering_trace{gathering::run(cfg->cfg, *factory, horizon)};
        return GATHERING_OK;
    });
}

gathering_verdict gathering_trace_verdict(const gathering_trace* trace) {
    if (!trace) {
        return GATHERING_TIMEOUT;
    }
    switch (trace->trace.verdict.kind) {
    case gathering::VerdictKind::kGathered:
        return GATHERING_GATHERED;
    case gathering::VerdictKind::kSplit:
        return GATHERING_SPLIT;
    case gathering::VerdictKind::kTimeout:
        break;
    }
    return GATHERING_TIMEOUT;
}

double gathering_trace_end_time(const gathering_trace* trace) { return trace ? trace->trace.end_time : 0.0; }

size_t gathering_trace_event_count(const gathering_trace* trace) { return trace ? trace->trace.events.size() : 0; }

size_t gathering_trace_ga_count(const gathering_trace* trace) { return trace ? trace->trace.ga_count() : 0; }

size_t gathering_trace_group_count(const gathering_trace* trace) {
    return trace ? trace->trace.verdict.group_points.size() : 0;
}

gathering_status gathering_trace_group_point(const gathering_trace* trace, size_t group, double* x, double* y) {
    if (!trace || !x || !y) {
        return null_argument("trace, x and y");
    }
    const auto& pts = trace->trace.verdict.group_points;
    if (group >= pts.size()) {
        return fail(GATHERING_ERR_ARGUMENT, "group index out of range");
    }
    *x = pts[group].x;
    *y = pts[group].y;
    return GATHERING_OK;
}

gathering_status gathering_trace_write_jsonl(const gathering_trace* trace, const char* path) {
    if (!trace || !path) {
        return null_argument("trace and path");
    }
    return guarded([&] {
        gathering::save_trace_jsonl(trace->trace, path);
        return GATHERING_OK;
    });
}

gathering_status gathering_trace_write_svg(const gathering_trace* trace, const char* path) {
    if (!trace || !path) {
        return null_argument("trace and path");
    }
    return guarded([&] {
        gathering::save_svg(trace->trace, path);
        return GATHERING_OK;
    });
}

void gathering_trace_free(gathering_trace* trace) { delete trace; }

gathering_status gathering_check_independence(const char* set, int* independent, char* buffer, size_t buffer_size) {
    if (!set || !independent) {
        return null_argument("set and independent");
    }
    return guarded([&] {
        const auto a = gathering::AssumptionSet::parse(set);
        const auto cert = gathering::find_dependency(a);
        *independent = cert ? 0 : 1;
        if (buffer && buffer_size > 0) {
            const std::string text = cert ? gathering::format_certificate(*cert) : std::string();
            if (text.size() + 1 > buffer_size) {
                return fail(GATHERING_ERR_BUFFER, "certificate needs " + std::to_string(text.size() + 1) + " bytes");
            }
            std::memcpy(buffer, text.c_str(), text.size() + 1);
        }
        return GATHERING_OK;
    });
}

gathering_status gathering_build_counterexample(const char* set, double epsilon, gathering_config** out) {
    if (!set || !out) {
        return null_argument("set and out");
    }
    return guarded([&] {
        const auto a = gathering::AssumptionSet::parse(set);
        *out = new gathering_config{gathering::build_dependent_counterexample(a, epsilon)};
        return GATHERING_OK;
    });
}

void gathering_sweep_options_init(gathering_sweep_options* opts) {
    if (!opts) {
        return;
    }
    *opts = {};
    opts->n = 2;
    opts->count = 1;
    opts->feasibility = GATHERING_GOOD;
    opts->algorithm = GATHERING_GATHER_N;
}

gathering_status gathering_sweep_run(const gathering_sweep_options* opts, gathering_sweep** out) {
    if (!opts || !out) {
        return null_argument("opts and out");
    }
    return guarded([&] {
        gathering::SweepSpec spec;
        spec.n = opts->n;
        spec.count = opts->count;
        spec.seed = opts->seed;
        spec.feasibility = to_feasibility(opts->feasibility);
        spec.algorithm = to_algorithm(opts->algorithm);
        spec.assumptions = parse_set(opts->assumption_set);
        if (opts->epsilon > 0.0) {
            spec.epsilon = opts->epsilon;
        }
        if (opts->spatial_scale > 0.0) {
            spec.spatial_scale = opts->spatial_scale;
        }
        if (opts->time_scale > 0.0) {
            spec.time_scale = opts->time_scale;
        }
        if (opts->horizon > 0.0) {
            spec.horizon = opts->horizon;
        }
        spec.threads = opts->threads;
        auto report = gathering::run_sweep(spec);
        *out = new gathering_sweep{std::move(spec), std::move(report)};
        return GATHERING_OK;
    });
}

size_t gathering_sweep_runs(const gathering_sweep* sweep) { return sweep ? sweep->report.runs.size() : 0; }

size_t gathering_sweep_gathered(const gathering_sweep* sweep) { return sweep ? sweep->report.gathered : 0; }

double gathering_sweep_max_time(const gathering_sweep* sweep) { return sweep ? sweep->report.max_gather_time : 0.0; }

size_t gathering_sweep_ga_events(const gathering_sweep* sweep) { return sweep ? sweep->report.total_ga_events : 0; }

size_t gathering_sweep_violations(const gathering_sweep* sweep) { return sweep ? sweep->report.violations : 0; }

gathering_status gathering_sweep_summary(const gathering_sweep* sweep, char* buffer, size_t buffer_size,
                                         size_t* written) {
    if (!sweep) {
        return null_argument("sweep");
    }
    return guarded([&] {
        const std::string text = gathering::format_report(sweep->spec, sweep->report);
        if (written) {
            *written = text.size();
        }
        if (!buffer) {
            return GATHERING_OK;
        }
        if (text.size() + 1 > buffer_size) {
            return fail(GATHERING_ERR_BUFFER, "summary needs " + std::to_string(text.size() + 1) + " bytes");
        }
        std::memcpy(buffer, text.c_str(), text.size() + 1);
        return GATHERING_OK;
    });
}

void gathering_sweep_free(gathering_sweep* sweep) { delete sweep; }

} // extern "C"
