#pragma once

#include "gathering/engine.hpp"

#include <memory>
#include <random>
#include <vector>

namespace testing_support {

using namespace gathering;

// Agent that walks a fixed list of instructions, then holds.
class ScriptProgram final : public AgentProgram {
public:
    explicit ScriptProgram(std::vector<Instruction> script) : script_(std::move(script)) {}

    Instruction next_instruction(const SelfView&) override {
        if (next_ < script_.size()) {
            return script_[next_++];
        }
        return instr::Hold{};
    }
    GaResponse on_ga(const GAView&) override { return {}; }
    StateTag state() const override { return StateTag::kNone; }

private:
    std::vector<Instruction> script_;
    std::size_t next_ = 0;
};

inline ProgramFactory script(std::vector<Instruction> s) {
    return [s] { return std::make_unique<ScriptProgram>(s); };
}

// Engine-level tests only: a different script per agent, in index order.
inline ProgramFactory per_agent(std::vector<std::vector<Instruction>> scripts) {
    auto next = std::make_shared<std::size_t>(0);
    return [scripts, next] { return std::make_unique<ScriptProgram>(scripts.at((*next)++ % scripts.size())); };
}

// Records every number the engine shows a program, for the anonymity checks.
struct InputRecorder final : AgentProgram {
    std::vector<double>* seen;
    int steps = 0;
    explicit InputRecorder(std::vector<double>* s) : seen(s) {}

    void record(Vec2 v) {
        seen->push_back(v.dx);
        seen->push_back(v.dy);
    }
    void record_view(const SelfView& s) {
        seen->push_back(s.local_time);
        record(s.position);
        for (const auto& k : s.knowledge) {
            record(k.initial_position);
        }
    }
    Instruction next_instruction(const SelfView& s) override {
        record_view(s);
        // a fixed tour so agents meet: east, back, wait
        switch (steps++ % 3) {
        case 0:
            return instr::Go{{1, 0}, 2.0};
        case 1:
            return instr::Go{{-1, 0}, 2.0};
        default:
            return instr::Wait{1.0};
        }
    }
    GaResponse on_ga(const GAView& v) override {
        seen->push_back(v.local_time);
        record(v.self_position);
        for (const auto& p : v.participants) {
            record(p.position);
            record(p.initial_position);
        }
        for (const auto& k : v.knowledge) {
            record(k.initial_position);
        }
        return {};
    }
    StateTag state() const override { return StateTag::kNone; }
};

// Time-stepped scan for the first instant two trajectories are within eps.
inline std::optional<double> scan_approach(const Trajectory& a, const Trajectory& b, double eps, double from,
                                           double step) {
    const double end = std::min(a.end_time(), b.end_time());
    for (double t = from; t <= end; t += step) {
        if (dist(position_at(a, t), position_at(b, t)) <= eps) {
            return t;
        }
    }
    return std::nullopt;
}

} // namespace testing_support
