#include "gathering/programs.hpp"

#include <algorithm>
#include <memory>

namespace gathering {

namespace {

Vec2 lex_max_known(std::span<const KnowledgeItem> knowledge) {
    Vec2 best{};
    for (const auto& k : knowledge) {
        if (lex_less(best, k.initial_position)) {
            best = k.initial_position;
        }
    }
    return best;
}

class DedicatedProgram final : public AgentProgram {
public:
    DedicatedProgram(Vec2 v, std::shared_ptr<const std::vector<Vec2>> vectors, std::size_t n)
        : v_(v), vectors_(std::move(vectors)), n_(n) {}

    Instruction next_instruction(const SelfView& self) override {
        switch (mode_) {
        case StateTag::kBeginner:
            if (step_ == 0) {
                step_ = 1;
                return go_towards(self.position, v_);
            }
            if (step_ == 1) {
                step_ = 2;
                return go_towards(self.position, Vec2{});
            }
            mode_ = StateTag::kPassive;
            return passive(self);
        case StateTag::kPassive:
            return passive(self);
        default:
            return active(self);
        }
    }

    GaResponse on_ga(const GAView& view) override {
        if (mode_ == StateTag::kBeginner) {
            const Participant* largest = nullptr;
            for (const auto& p : view.participants) {
                if (p.state == StateTag::kBeginner && (!largest || lex_less(largest->initial_position, p.initial_position))) {
                    largest = &p;
                }
            }
            mode_ = largest == &view.self() ? StateTag::kActive : StateTag::kPassive;
            excursion_ = 0;
            leg_ = Leg::kHome;
            return {true, {}};
        }
        if (mode_ == StateTag::kPassive) {
            return {!parked_ && view.knowledge.size() >= n_, {}};
        }
        return {};
    }

    StateTag state() const override { return mode_; }

private:
    enum class Leg { kHome, kOut, kBack };

    Instruction passive(const SelfView& self) {
        if (self.knowledge.size() >= n_) {
            parked_ = true;
            return instr::GotoAndStop{lex_max_known(self.knowledge)};
        }
        if (self.position.norm2() > 0.0) {
            return go_towards(self.position, Vec2{});
        }
        return instr::Hold{};
    }

    // Tours V cyclically: out along each vector and back home.
    Instruction active(const SelfView& self) {
        const auto& vs = *vectors_;
        for (;;) {
            if (leg_ == Leg::kHome) {
                leg_ = Leg::kOut;
                if (self.position.norm2() > 0.0) {
                    return go_towards(self.position, Vec2{});
                }
            }
            if (leg_ == Leg::kOut) {
                if (!final_excursion_ && self.knowledge.size() >= n_) {
                    // Finish the excursion under way, then one more full round.
                    final_excursion_ = excursion_ + vs.size();
                }
                if (final_excursion_ && excursion_ >= *final_excursion_) {
                    return instr::GotoAndStop{lex_max_known(self.knowledge)};
                }
                leg_ = Leg::kBack;
                return go_towards(self.position, vs[excursion_ % vs.size()]);
            }
            leg_ = Leg::kOut;
            ++excursion_;
            return go_towards(self.position, Vec2{});
        }
    }

    Vec2 v_;
    std::shared_ptr<const std::vector<Vec2>> vectors_;
    std::size_t n_;
    StateTag mode_ = StateTag::kBeginner;
    int step_ = 0;
    bool parked_ = false;
    Leg leg_ = Leg::kHome;
    std::size_t excursion_ = 0;
    std::optional<std::size_t> final_excursion_;
};

} // namespace

ProgramFactory dedicated_program(const InitialConfiguration& cfg_known, double eps, bool allow_ungatherable) {
    const InitialConfiguration cfg(eps, cfg_known.agents());
    if (!allow_ungatherable && classify(cfg).kind == Feasibility::kUngatherable) {
        throw ConfigError("configuration is not gatherable");
    }
    const Vec2 v = approach_vector(cfg, allow_ungatherable);
    auto vectors = std::make_shared<const std::vector<Vec2>>(vector_sequence(cfg));
    const std::size_t n = cfg.size();
    return [=] { return std::make_unique<DedicatedProgram>(v, vectors, n); };
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
    if (name == "dedicated") {
        return Algorithm::kDedicated;
    }
    if (name == "gather-n") {
        return Algorithm::kGatherN;
    }
    if (name == "gather-a") {
        return Algorithm::kGatherA;
    }
    return std::nullopt;
}

std::string_view to_string(Algorithm a) {
    switch (a) {
    case Algorithm::kDedicated:
        return "dedicated";
    case Algorithm::kGatherN:
        return "gather-n";
    case Algorithm::kGatherA:
        return "gather-a";
    }
    return "?";
}

} // namespace gathering
