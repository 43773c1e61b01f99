// Command-line front end over the C interface.
#include "gathering/gathering.h"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

constexpr int kExitLoadError = 3;
constexpr int kExitRuntimeError = 4;
constexpr int kExitUsage = 64;

struct ConfigDeleter {
    void operator()(gathering_config* c) const { gathering_config_free(c); }
};
struct TraceDeleter {
    void operator()(gathering_trace* t) const { gathering_trace_free(t); }
};
struct SweepDeleter {
    void operator()(gathering_sweep* s) const { gathering_sweep_free(s); }
};
using ConfigPtr = std::unique_ptr<gathering_config, ConfigDeleter>;
using TracePtr = std::unique_ptr<gathering_trace, TraceDeleter>;
using SweepPtr = std::unique_ptr<gathering_sweep, SweepDeleter>;

int report_error(const char* what) {
    std::cerr << "error: " << what << ": " << gathering_last_error() << "\n";
    return kExitRuntimeError;
}

ConfigPtr load(const std::string& path) {
    gathering_config* raw = nullptr;
    if (gathering_config_load(path.c_str(), &raw) != GATHERING_OK) {
        std::cerr << "error: " << gathering_last_error() << "\n";
        return nullptr;
    }
    return ConfigPtr(raw);
}

std::string format_point(double x, double y) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%.6g,%.6g)", x, y);
    return buf;
}

int cmd_classify(const std::string& path) {
    auto cfg = load(path);
    if (!cfg) {
        return kExitLoadError;
    }
    gathering_class cls{};
    size_t wi = 0, wj = 0;
    if (gathering_classify(cfg.get(), &cls, &wi, &wj) != GATHERING_OK) {
        return report_error("classify");
    }
    static const char* names[] = {"UNGATHERABLE", "BAD", "GOOD"};
    std::cout << names[cls];
    if (cls != GATHERING_UNGATHERABLE) {
        std::cout << " (witness " << wi << "," << wj << ")";
    }
    std::cout << "\n";
    return static_cast<int>(cls);
}

struct SimulateArgs {
    std::string path;
    std::string algorithm;
    std::string assumption_set;
    double horizon = 0.0;
    std::string trace_out;
    std::string svg_out;
};

gathering_algorithm algorithm_from(const std::string& name) {
    if (name == "dedicated") {
        return GATHERING_DEDICATED;
    }
    if (name == "gather-a") {
        return GATHERING_GATHER_A;
    }
    return GATHERING_GATHER_N;
}

int cmd_simulate(const SimulateArgs& a) {
    if (a.algorithm == "gather-a" && a.assumption_set.empty()) {
        std::cerr << "error: --algorithm gather-a requires --assumption-set\n";
        return kExitUsage;
    }
    auto cfg = load(a.path);
    if (!cfg) {
        return kExitLoadError;
    }
    gathering_sim_options opts{algorithm_from(a.algorithm), a.assumption_set.empty() ? nullptr : a.assumption_set.c_str(),
                               a.horizon};
    gathering_trace* raw = nullptr;
    const auto status = gathering_simulate(cfg.get(), &opts, &raw);
    if (status == GATHERING_ERR_CONFIG) {
        std::cerr << "error: " << gathering_last_error() << "\n";
        return kExitLoadError;
    }
    if (status == GATHERING_ERR_ARGUMENT) {
        std::cerr << "error: " << gathering_last_error() << "\n";
        return kExitUsage;
    }
    if (status != GATHERING_OK) {
        return report_error("simulate");
    }
    TracePtr trace(raw);
    if (!a.trace_out.empty() && gathering_trace_write_jsonl(trace.get(), a.trace_out.c_str()) != GATHERING_OK) {
        return report_error("trace");
    }
    if (!a.svg_out.empty() && gathering_trace_write_svg(trace.get(), a.svg_out.c_str()) != GATHERING_OK) {
        return report_error("svg");
    }
    const auto verdict = gathering_trace_verdict(trace.get());
    const double t = gathering_trace_end_time(trace.get());
    switch (verdict) {
    case GATHERING_GATHERED: {
        double x = 0.0, y = 0.0;
        gathering_trace_group_point(trace.get(), 0, &x, &y);
        std::printf("GATHERED at %s t=%.6f\n", format_point(x, y).c_str(), t);
        break;
    }
    case GATHERING_SPLIT:
        std::printf("SPLIT %zu groups t=%.6f\n", gathering_trace_group_count(trace.get()), t);
        for (size_t g = 0; g < gathering_trace_group_count(trace.get()); ++g) {
            double x = 0.0, y = 0.0;
            gathering_trace_group_point(trace.get(), g, &x, &y);
            std::printf("  group %zu at %s\n", g, format_point(x, y).c_str());
        }
        break;
    case GATHERING_TIMEOUT:
        std::printf("TIMEOUT at horizon t=%.6f (%zu GA events)\n", t, gathering_trace_ga_count(trace.get()));
        break;
    }
    return static_cast<int>(verdict);
}

int cmd_check_independence(const std::string& set) {
    int independent = 0;
    char cert[512];
    if (gathering_check_independence(set.c_str(), &independent, cert, sizeof cert) != GATHERING_OK) {
        std::cerr << "error: " << gathering_last_error() << "\n";
        return kExitUsage;
    }
    if (independent) {
        std::cout << "INDEPENDENT\n";
        return 0;
    }
    std::cout << "DEPENDENT: " << cert << "\n";
    return 1;
}

int cmd_counterexample(const std::string& set, double epsilon, const std::string& out) {
    gathering_config* raw = nullptr;
    const auto status = gathering_build_counterexample(set.c_str(), epsilon, &raw);
    if (status == GATHERING_ERR_ARGUMENT || status == GATHERING_ERR_CONFIG) {
        std::cerr << "error: " << gathering_last_error() << "\n";
        return kExitUsage;
    }
    if (status != GATHERING_OK) {
        return report_error("counterexample");
    }
    ConfigPtr cfg(raw);
    if (gathering_config_save(cfg.get(), out.c_str()) != GATHERING_OK) {
        return report_error("write");
    }
    std::cout << "wrote " << gathering_config_size(cfg.get()) << " agents to " << out << "\n";
    return 0;
}

int cmd_sweep(gathering_sweep_options opts) {
    gathering_sweep* raw = nullptr;
    const auto status = gathering_sweep_run(&opts, &raw);
    if (status == GATHERING_ERR_ARGUMENT) {
        std::cerr << "error: " << gathering_last_error() << "\n";
        return kExitUsage;
    }
    if (status != GATHERING_OK) {
        return report_error("sweep");
    }
    SweepPtr sweep(raw);
    size_t needed = 0;
    gathering_sweep_summary(sweep.get(), nullptr, 0, &needed);
    std::vector<char> text(needed + 1);
    gathering_sweep_summary(sweep.get(), text.data(), text.size(), nullptr);
    std::cout << text.data();
    return gathering_sweep_violations(sweep.get()) == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gathering of anonymous agents in the plane"};
    app.require_subcommand(1);

    std::string classify_path;
    auto* classify = app.add_subcommand("classify", "Classify a configuration (exit 0 UNGATHERABLE, 1 BAD, 2 GOOD)");
    classify->add_option("file", classify_path, "Configuration JSON")->required();

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Run an algorithm (exit 0 GATHERED, 1 SPLIT, 2 TIMEOUT)");
    simulate->add_option("file", sim.path, "Configuration JSON")->required();
    simulate->add_option("--algorithm", sim.algorithm, "dedicated | gather-n | gather-a")
        ->required()
        ->check(CLI::IsMember({"dedicated", "gather-n", "gather-a"}));
    simulate->add_option("--assumption-set", sim.assumption_set, "Comma-separated team sizes, e.g. 2,3");
    simulate->add_option("--horizon", sim.horizon, "Simulation horizon (default: heuristic)")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--trace", sim.trace_out, "Write the event trace as JSON Lines");
    simulate->add_option("--svg", sim.svg_out, "Write an SVG plot of the trajectories");

    std::string set;
    auto* independence = app.add_subcommand("check-independence", "Check an assumption set (exit 0 independent)");
    independence->add_option("set", set, "Comma-separated integers, e.g. 2,3,7")->required();

    std::string ce_set, ce_out;
    double ce_eps = 0.5;
    auto* counterexample = app.add_subcommand("counterexample", "Build the split configuration for a dependent set");
    counterexample->add_option("--set", ce_set, "Dependent assumption set")->required();
    counterexample->add_option("--epsilon", ce_eps, "Visibility radius")->check(CLI::PositiveNumber);
    counterexample->add_option("--out", ce_out, "Output configuration JSON")->required();

    gathering_sweep_options sw;
    gathering_sweep_options_init(&sw);
    sw.epsilon = 0.5;
    sw.spatial_scale = 2.0;
    sw.time_scale = 3.0;
    std::string sw_class = "good", sw_algorithm = "gather-n", sw_set;
    auto* sweep = app.add_subcommand("sweep", "Run seeded random configurations");
    sweep->add_option("--n", sw.n, "Agents per configuration")->required()->check(CLI::Range(2, 1000));
    sweep->add_option("--count", sw.count, "Number of configurations")->required()->check(CLI::PositiveNumber);
    sweep->add_option("--seed", sw.seed, "Random seed")->required();
    sweep->add_option("--class", sw_class, "good | bad | ungatherable")
        ->check(CLI::IsMember({"good", "bad", "ungatherable"}));
    sweep->add_option("--algorithm", sw_algorithm, "dedicated | gather-n | gather-a")
        ->check(CLI::IsMember({"dedicated", "gather-n", "gather-a"}));
    sweep->add_option("--assumption-set", sw_set, "Assumption set for gather-a");
    sweep->add_option("--epsilon", sw.epsilon, "Visibility radius")->check(CLI::PositiveNumber);
    sweep->add_option("--spatial-scale", sw.spatial_scale, "Side of the start-point square")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--time-scale", sw.time_scale, "Largest start time")->check(CLI::PositiveNumber);
    sweep->add_option("--horizon", sw.horizon, "Simulation horizon (default: heuristic)")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--threads", sw.threads, "Worker threads (0: all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (*classify) {
        return cmd_classify(classify_path);
    }
    if (*simulate) {
        return cmd_simulate(sim);
    }
    if (*independence) {
        return cmd_check_independence(set);
    }
    if (*counterexample) {
        return cmd_counterexample(ce_set, ce_eps, ce_out);
    }
    sw.feasibility = sw_class == "good" ? GATHERING_GOOD : sw_class == "bad" ? GATHERING_BAD : GATHERING_UNGATHERABLE;
    sw.algorithm = algorithm_from(sw_algorithm);
    sw.assumption_set = sw_set.empty() ? nullptr : sw_set.c_str();
    if (sw.algorithm == GATHERING_GATHER_A && !sw.assumption_set) {
        std::cerr << "error: --algorithm gather-a requires --assumption-set\n";
        return kExitUsage;
    }
    return cmd_sweep(sw);
}
