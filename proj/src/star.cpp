#include "gathering/star.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gathering {

StarPhase star_phase_params(int x) {
    if (x < 1) {
        throw std::invalid_argument("Star phase must be >= 1");
    }
    const double xd = static_cast<double>(x);
    const double alpha = 2.0 * std::asin(1.0 / (2.0 * xd * xd));
    return {alpha, static_cast<int>(std::ceil(2.0 * std::numbers::pi / alpha))};
}

Vec2 star_ray(double alpha, int stage) { return heading_clockwise_from_north((stage - 1) * alpha); }

double star_duration_through(int x) {
    double total = 0.0;
    for (int p = 1; p <= x; ++p) {
        total += 3.0 * p * star_phase_params(p).k;
    }
    return total;
}

StarState StarState::start(int phase) {
    const auto params = star_phase_params(phase);
    return {phase, 1, params.alpha, params.k, StarStep::kOutbound};
}

StarStage star_next_instructions(const StarState& s) {
    const Vec2 ray = star_ray(s.alpha, s.stage);
    const double x = s.phase;
    StarStage out{{instr::Go{ray, x}, instr::Go{-ray, x}, instr::Wait{x}}, s};
    if (s.stage < s.k) {
        out.next.stage = s.stage + 1;
        out.next.step = StarStep::kOutbound;
    } else {
        out.next = StarState::start(s.phase + 1);
    }
    return out;
}

Instruction StarCursor::next() {
    const auto stage = star_next_instructions(state_);
    last_phase_ = state_.phase;
    switch (state_.step) {
    case StarStep::kOutbound:
        state_.step = StarStep::kInbound;
        return stage.instructions[0];
    case StarStep::kInbound:
        state_.step = StarStep::kWaiting;
        return stage.instructions[1];
    case StarStep::kWaiting:
        state_ = stage.next;
        return stage.instructions[2];
    }
    throw std::logic_error("unreachable Star step");
}

void StarCursor::restart(int phase) { state_ = StarState::start(phase); }

} // namespace gathering
