#pragma once

#include "gathering/engine.hpp"

#include <array>

namespace gathering {

/// Angular step and ray count of Star phase x: consecutive tips of rays of
/// length x are 1/x apart, i.e. sin(alpha / 2) = 1 / (2 x^2), and
/// k = ceil(2 pi / alpha).
struct StarPhase {
    double alpha = 0.0;
    int k = 0;
};

StarPhase star_phase_params(int x);

/// Direction of ray `stage` (1-based) of a phase: (stage - 1) * alpha
/// clockwise from North.
Vec2 star_ray(double alpha, int stage);

/// Time taken by phases 1..x (each stage of phase x lasts 3x).
double star_duration_through(int x);

enum class StarStep { kOutbound, kInbound, kWaiting };

struct StarState {
    int phase = 1;
    int stage = 1;
    double alpha = 0.0;
    int k = 0;
    StarStep step = StarStep::kOutbound;

    static StarState start(int phase = 1);
};

struct StarStage {
    std::array<Instruction, 3> instructions;  // out, back, wait
    StarState next;                           // first step of the following stage
};

/// The three instructions of the current stage and the state after it. After
/// stage k the phase advances and alpha, k are recomputed.
StarStage star_next_instructions(const StarState& s);

/// Steps through Star one instruction at a time, so an interrupted agent can
/// resume exactly where it stopped.
class StarCursor {
public:
    explicit StarCursor(int phase = 1) : state_(StarState::start(phase)) {}

    Instruction next();
    /// Jump to the first stage of `phase`.
    void restart(int phase);

    const StarState& state() const { return state_; }
    /// Phase of the most recently emitted instruction; 0 before the first.
    int last_emitted_phase() const { return last_phase_; }

private:
    StarState state_;
    int last_phase_ = 0;
};

} // namespace gathering
