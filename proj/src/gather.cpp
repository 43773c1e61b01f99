#include "gathering/programs.hpp"
#include "gathering/star.hpp"

#include <algorithm>
#include <deque>
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

bool near(Vec2 a, Vec2 b) { return (a - b).length() <= kPositionTolerance; }

bool contains(const std::vector<AgentRef>& refs, const AgentRef& r) {
    return std::find(refs.begin(), refs.end(), r) != refs.end();
}

bool frozen(StateTag s) { return s == StateTag::kToken || s == StateTag::kShadow; }

// States every participant will hold once the GA's case analysis has run,
// computed from the states before the GA. All participants evaluate the same
// rule on the same relative data, so they agree.
std::vector<StateTag> states_after(const GAView& view) {
    std::vector<StateTag> out;
    const auto& ps = view.participants;
    const bool any_token = std::any_of(ps.begin(), ps.end(), [](const Participant& p) { return p.state == StateTag::kToken; });
    const Participant* largest = nullptr;
    std::size_t cruisers = 0;
    for (const auto& p : ps) {
        if (p.state == StateTag::kCruiser) {
            ++cruisers;
            if (!largest || lex_less(largest->initial_position, p.initial_position)) {
                largest = &p;
            }
        }
    }
    for (const auto& p : ps) {
        StateTag s = p.state;
        if (s == StateTag::kCruiser) {
            if (any_token) {
                s = StateTag::kShadow;
            } else if (cruisers >= 2) {
                s = &p == largest ? StateTag::kExplorer : StateTag::kToken;
            }
        }
        out.push_back(s);
    }
    return out;
}

class GatherProgram final : public AgentProgram {
public:
    explicit GatherProgram(std::shared_ptr<const std::vector<int>> assumptions)
        : assumptions_(std::move(assumptions)) {}

    Instruction next_instruction(const SelfView& self) override {
        switch (mode_) {
        case StateTag::kToken:
        case StateTag::kShadow:
            return frozen_step(self);
        case StateTag::kExplorer:
            return explorer_step(self);
        default:
            return star_.next();
        }
    }

    GaResponse on_ga(const GAView& view) override {
        const auto after = states_after(view);
        switch (mode_) {
        case StateTag::kCruiser: {
            const StateTag next = after[view.self_index];
            if (next == StateTag::kCruiser) {
                return {};  // nobody to pair with
            }
            mode_ = next;
            if (next != StateTag::kExplorer) {
                return {true, {}};
            }
            for (std::size_t k = 0; k < view.participants.size(); ++k) {
                const auto& p = view.participants[k];
                if (after[k] == StateTag::kToken) {
                    tokens_.push_back(p.initial_position);
                }
            }
            return explorer_ga(view, after);
        }
        case StateTag::kExplorer:
            return explorer_ga(view, after);
        default:
            return {};
        }
    }

    bool on_order(const SelfView& self, Vec2 target) override {
        (void)self;
        if (!frozen(mode_)) {
            return false;
        }
        if (!orders_.empty() && near(orders_.back(), target)) {
            return false;
        }
        orders_.push_back(target);
        return true;
    }

    StateTag state() const override { return mode_; }

private:
    enum class Finale { kNone, kHoming, kRepeating, kParked };

    int assumption() const { return (*assumptions_)[assumption_index_]; }

    Instruction frozen_step(const SelfView& self) {
        while (orders_.size() > 1) {
            if (!near(self.position, orders_.front())) {
                return go_towards(self.position, orders_.front());
            }
            orders_.pop_front();
        }
        if (orders_.empty()) {
            return instr::Hold{};
        }
        return instr::GotoAndStop{orders_.front()};
    }

    Instruction explorer_step(const SelfView& self) {
        switch (finale_) {
        case Finale::kNone:
            if (resume_phase_) {
                if (self.position.norm2() > 0.0) {
                    return go_towards(self.position, Vec2{});
                }
                star_.restart(*resume_phase_);
                resume_phase_.reset();
            }
            return star_.next();
        case Finale::kHoming:
            if (self.position.norm2() > 0.0) {
                return go_towards(self.position, Vec2{});
            }
            star_.restart(finale_phase_);
            finale_ = Finale::kRepeating;
            [[fallthrough]];
        case Finale::kRepeating:
            if (star_.state().phase > finale_phase_ && all_seen_ordered()) {
                finale_ = Finale::kParked;
                return instr::GotoAndStop{gather_point_};
            }
            return star_.next();
        case Finale::kParked:
            return instr::GotoAndStop{gather_point_};
        }
        return instr::Hold{};
    }

    bool all_seen_ordered() const {
        return std::all_of(seen_.begin(), seen_.end(), [&](const AgentRef& r) { return contains(ordered_, r); });
    }

    GaResponse explorer_ga(const GAView& view, const std::vector<StateTag>& after) {
        for (std::size_t k = 0; k < view.participants.size(); ++k) {
            const auto& p = view.participants[k];
            if (k != view.self_index && frozen(after[k]) && !contains(seen_, p.agent)) {
                seen_.push_back(p.agent);
            }
        }
        bool assumption_changed = false;
        while (view.knowledge.size() > static_cast<std::size_t>(assumption()) &&
               assumption_index_ + 1 < assumptions_->size()) {
            ++assumption_index_;
            assumption_changed = true;
        }
        const bool complete = seen_.size() + 1 >= static_cast<std::size_t>(assumption());

        if (finale_ != Finale::kNone && assumption_changed && !complete) {
            // The temporary gathering was too small: back to searching.
            finale_ = Finale::kNone;
            ordered_.clear();
            resume_phase_ = interrupted_phase_ + 1;
            return {true, {}};
        }
        if (complete) {
            bool replan = false;
            if (finale_ == Finale::kNone || (finale_ == Finale::kParked && assumption_changed)) {
                interrupted_phase_ = std::max(1, star_.last_emitted_phase());
                finale_phase_ = interrupted_phase_;
                finale_ = Finale::kHoming;
                ordered_.clear();
                replan = true;
            }
            gather_point_ = lex_max_known(view.knowledge);
            GaResponse r{replan, {}};
            for (std::size_t k = 0; k < view.participants.size(); ++k) {
                const auto& p = view.participants[k];
                if (k != view.self_index && frozen(after[k])) {
                    r.orders.push_back({p.agent, gather_point_});
                    if (!contains(ordered_, p.agent)) {
                        ordered_.push_back(p.agent);
                    }
                }
            }
            return r;
        }
        if (finale_ != Finale::kNone) {
            return {};
        }
        for (std::size_t k = 0; k < view.participants.size(); ++k) {
            if (after[k] != StateTag::kToken || k == view.self_index) {
                continue;
            }
            const Vec2 q = view.participants[k].initial_position;
            const bool larger_than_all =
                std::all_of(tokens_.begin(), tokens_.end(), [&](Vec2 own) { return lex_less(own, q); });
            if (larger_than_all) {
                mode_ = StateTag::kShadow;
                return {true, {}};
            }
        }
        return {};
    }

    std::shared_ptr<const std::vector<int>> assumptions_;
    std::size_t assumption_index_ = 0;
    StateTag mode_ = StateTag::kCruiser;
    StarCursor star_;

    std::vector<Vec2> tokens_;     // initial positions of own tokens
    std::vector<AgentRef> seen_;   // tokens and shadows met directly
    std::vector<AgentRef> ordered_;
    Finale finale_ = Finale::kNone;
    int finale_phase_ = 1;
    int interrupted_phase_ = 1;
    std::optional<int> resume_phase_;
    Vec2 gather_point_;

    std::deque<Vec2> orders_;  // TOKEN / SHADOW only
};

} // namespace

ProgramFactory gather_a_program(const AssumptionSet& a) {
    auto elements = std::make_shared<const std::vector<int>>(a.elements());
    return [elements] { return std::make_unique<GatherProgram>(elements); };
}

ProgramFactory gather_n_program(int n) {
    if (n < 2) {
        throw std::invalid_argument("GATHER(n) needs n >= 2");
    }
    return gather_a_program(AssumptionSet({n}));
}

} // namespace gathering
