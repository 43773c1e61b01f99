#pragma once

#include "gathering/config.hpp"
#include "gathering/geometry.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace gathering {

class Simulation;

/// Opaque handle naming another agent. Supports equality only: programs can
/// recognise "the same agent" but cannot order or inspect identities.
class AgentRef {
public:
    bool operator==(const AgentRef&) const = default;

private:
    friend class Simulation;
    explicit AgentRef(std::uint32_t id) : id_(id) {}
    std::uint32_t id_;
};

/// Declared algorithm state, visible to other agents during a GA.
enum class StateTag : std::uint8_t {
    kNone,
    kBeginner,
    kPassive,
    kActive,
    kCruiser,
    kExplorer,
    kToken,
    kShadow,
};

std::string_view to_string(StateTag s);

/// What an agent knows about another agent. Positions are in the owner's
/// frame (origin at the owner's start point).
struct KnowledgeItem {
    AgentRef agent;
    Vec2 initial_position;
    StateTag last_known_state = StateTag::kNone;
};

/// Re-expresses a knowledge item held by a sender in the receiver's frame.
/// `sender_origin_in_receiver` is the sender's start point seen from the
/// receiver.
KnowledgeItem translate_knowledge(const KnowledgeItem& item, Vec2 sender_origin_in_receiver);

struct Participant {
    AgentRef agent;
    Vec2 position;          // current, observer frame
    Vec2 initial_position;  // observer frame
    StateTag state = StateTag::kNone;  // before anyone reacts to this GA
};

struct SelfView {
    double local_time = 0.0;  // time since this agent appeared
    Vec2 position;            // own frame
    std::span<const KnowledgeItem> knowledge;
};

struct GAView {
    double local_time = 0.0;
    Vec2 self_position;
    std::size_t self_index = 0;
    std::vector<Participant> participants;  // includes self at self_index
    std::vector<KnowledgeItem> knowledge;   // after gossip

    const Participant& self() const { return participants[self_index]; }
};

namespace instr {
struct Go {
    Vec2 direction;  // unit vector
    double distance = 0.0;
    bool operator==(const Go&) const = default;
};
struct Wait {
    double duration = 0.0;
    bool operator==(const Wait&) const = default;
};
/// Walk straight to `target` (own frame) and stop there.
struct GotoAndStop {
    Vec2 target;
    bool operator==(const GotoAndStop&) const = default;
};
/// Stay put until a GA or an order makes the program replan.
struct Hold {
    bool operator==(const Hold&) const = default;
};
} // namespace instr

using Instruction = std::variant<instr::Go, instr::Wait, instr::GotoAndStop, instr::Hold>;

/// Go from `from` to `to` in a straight line (both in the same frame).
instr::Go go_towards(Vec2 from, Vec2 to);

struct Order {
    AgentRef recipient;
    Vec2 target;  // issuer frame
};

struct GaResponse {
    /// Discard the interrupted instruction and ask for a new one. When false
    /// the interrupted instruction resumes.
    bool replan = false;
    std::vector<Order> orders;
};

/// Behaviour of one agent. Every agent of a run gets its own instance from the
/// same factory, so all agents execute the same deterministic algorithm.
class AgentProgram {
public:
    virtual ~AgentProgram() = default;

    /// The previous instruction finished (or the agent just appeared).
    virtual Instruction next_instruction(const SelfView& self) = 0;
    virtual GaResponse on_ga(const GAView& view) = 0;
    /// Returns true when the program wants to replan after the order.
    virtual bool on_order(const SelfView& self, Vec2 target) {
        (void)self;
        (void)target;
        return false;
    }
    virtual StateTag state() const = 0;
};

using ProgramFactory = std::function<std::unique_ptr<AgentProgram>()>;

class EngineError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class EventKind { kAppear, kGa, kOrder, kStop, kState, kHorizon };

std::string_view to_string(EventKind k);

struct Event {
    double time = 0.0;
    EventKind kind = EventKind::kAppear;
    std::vector<std::size_t> agents;  // appear/stop/state: one; GA: group; order: issuer then recipients
    std::vector<Point> positions;     // global frame, parallel to `agents`
    std::vector<std::pair<std::size_t, std::size_t>> new_edges;  // GA only
    std::optional<Point> target;                                 // order only
    StateTag from = StateTag::kNone;                             // state only
    StateTag to = StateTag::kNone;
};

enum class VerdictKind { kGathered, kSplit, kTimeout };

std::string_view to_string(VerdictKind v);

struct Verdict {
    VerdictKind kind = VerdictKind::kTimeout;
    std::vector<Point> group_points;  // one per group of co-located agents
    std::vector<std::size_t> group_sizes;
};

struct Trace {
    double epsilon = 0.0;
    double end_time = 0.0;
    std::vector<Event> events;
    std::vector<Trajectory> trajectories;  // global frame
    std::vector<Point> final_positions;
    std::vector<StateTag> final_states;
    std::vector<bool> stopped;
    Verdict verdict;

    std::size_t ga_count() const;
    /// Time of the first GA, if any.
    std::optional<double> first_ga_time() const;
};

/// Horizon used when the caller does not give one:
/// max(50 (D + T + n) + 100 / min(eps, 1), 3 * S(X)) where D is the start
/// diameter, T the latest start time and S(X) the duration of the Star
/// phases 1..X with X = ceil(D + T) + ceil(1 / min(eps, 1)) + 2.
double default_horizon(const InitialConfiguration& cfg);

/// Connected components of the adjacency graph over `n` vertices that contain
/// at least one of `new_edges`. Each group is sorted; groups are ordered by
/// their smallest member.
std::vector<std::vector<std::size_t>> form_ga_groups(
    std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> adjacency,
    std::span<const std::pair<std::size_t, std::size_t>> new_edges);

/// Deterministic event-driven simulation of one configuration.
class Simulation {
public:
    Simulation(const InitialConfiguration& cfg, const ProgramFactory& factory, double horizon);
    ~Simulation();
    Simulation(Simulation&&) noexcept;
    Simulation& operator=(Simulation&&) noexcept;

    /// Time of the next instant that will be processed; absent when nothing
    /// can change any more.
    std::optional<double> next_event_time() const;
    /// Processes one instant. Returns false once the run is over.
    bool step();
    double now() const;
    bool finished() const;
    /// Runs to completion and returns the trace.
    Trace finish();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

Trace run(const InitialConfiguration& cfg, const ProgramFactory& factory, double horizon);

/// Checks trajectory legality, the GA precondition on newly formed edges and
/// verdict soundness. Returns one message per violation.
std::vector<std::string> check_trace_invariants(const Trace& trace);

} // namespace gathering
