#include "gathering/engine.hpp"

#include "gathering/star.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace gathering {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Passes allowed at one instant before the run is declared stuck.
constexpr int kMaxPassesPerInstant = 100000;
// Zero-length instructions a program may emit in a row.
constexpr int kMaxEmptyInstructions = 1000;

} // namespace

std::string_view to_string(StateTag s) {
    switch (s) {
    case StateTag::kNone:
        return "none";
    case StateTag::kBeginner:
        return "beginner";
    case StateTag::kPassive:
        return "passive";
    case StateTag::kActive:
        return "active";
    case StateTag::kCruiser:
        return "cruiser";
    case StateTag::kExplorer:
        return "explorer";
    case StateTag::kToken:
        return "token";
    case StateTag::kShadow:
        return "shadow";
    }
    return "?";
}

std::string_view to_string(EventKind k) {
    switch (k) {
    case EventKind::kAppear:
        return "appear";
    case EventKind::kGa:
        return "ga";
    case EventKind::kOrder:
        return "order";
    case EventKind::kStop:
        return "stop";
    case EventKind::kState:
        return "state";
    case EventKind::kHorizon:
        return "horizon";
    }
    return "?";
}

std::string_view to_string(VerdictKind v) {
    switch (v) {
    case VerdictKind::kGathered:
        return "gathered";
    case VerdictKind::kSplit:
        return "split";
    case VerdictKind::kTimeout:
        return "timeout";
    }
    return "?";
}

KnowledgeItem translate_knowledge(const KnowledgeItem& item, Vec2 sender_origin_in_receiver) {
    KnowledgeItem out = item;
    out.initial_position = item.initial_position + sender_origin_in_receiver;
    return out;
}

instr::Go go_towards(Vec2 from, Vec2 to) {
    const Vec2 d = to - from;
    return {d.normalized(), d.length()};
}

std::size_t Trace::ga_count() const {
    return static_cast<std::size_t>(
        std::count_if(events.begin(), events.end(), [](const Event& e) { return e.kind == EventKind::kGa; }));
}

std::optional<double> Trace::first_ga_time() const {
    for (const auto& e : events) {
        if (e.kind == EventKind::kGa) {
            return e.time;
        }
    }
    return std::nullopt;
}

double default_horizon(const InitialConfiguration& cfg) {
    const double eps_floor = std::min(cfg.epsilon(), 1.0);
    const double d = cfg.diameter();
    const double t = cfg.max_start_time();
    const double linear = 50.0 * (d + t + static_cast<double>(cfg.size())) + 100.0 / eps_floor;
    const int phases = static_cast<int>(std::ceil(d + t) + std::ceil(1.0 / eps_floor)) + 2;
    return std::max(linear, 3.0 * star_duration_through(phases));
}

std::vector<std::vector<std::size_t>> form_ga_groups(
    std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> adjacency,
    std::span<const std::pair<std::size_t, std::size_t>> new_edges) {
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    auto unite = [&](std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) {
            parent[std::max(a, b)] = std::min(a, b);
        }
    };
    for (const auto& [a, b] : adjacency) {
        unite(a, b);
    }
    for (const auto& [a, b] : new_edges) {
        unite(a, b);
    }
    std::vector<bool> active(n, false);
    for (const auto& [a, b] : new_edges) {
        active[find(a)] = true;
    }
    std::vector<std::vector<std::size_t>> groups;
    std::vector<std::size_t> slot(n, n);
    for (std::size_t v = 0; v < n; ++v) {
        const std::size_t root = find(v);
        if (!active[root]) {
            continue;
        }
        if (slot[root] == n) {
            slot[root] = groups.size();
            groups.emplace_back();
        }
        groups[slot[root]].push_back(v);
    }
    return groups;
}

struct Simulation::Impl {
    enum class Mode { kUnborn, kPending, kMoving, kWaiting, kHolding, kStopped };

    struct Known {
        std::uint32_t id;
        StateTag state;
        std::uint64_t stamp;
    };

    struct Agent {
        Point origin;
        double appear_time = 0.0;
        std::unique_ptr<AgentProgram> program;
        Trajectory trajectory;
        Mode mode = Mode::kUnborn;
        double t0 = 0.0;
        double t1 = kInf;
        Point p0;
        Point p1;
        Vec2 velocity;
        bool stop_after = false;
        bool replan = false;
        StateTag state = StateTag::kNone;
        std::vector<Known> knowledge;
        std::vector<KnowledgeItem> knowledge_view;
    };

    struct PairStatus {
        bool adjacent = false;
        bool initialised = false;
        double next_change = kInf;
        double last_exit = -kInf;
    };

    InitialConfiguration cfg;
    double contact_radius;
    double horizon;
    std::vector<Agent> agents;
    std::vector<PairStatus> pairs;
    double now = 0.0;
    int passes_at_now = 0;
    bool done = false;
    std::uint64_t stamp = 0;
    Trace trace;

    Impl(const InitialConfiguration& c, const ProgramFactory& factory, double h)
        : cfg(c), contact_radius(c.epsilon() + kSpeedTolerance), horizon(h) {
        if (!(horizon > cfg.max_start_time())) {
            throw EngineError("horizon must exceed the latest start time");
        }
        agents.resize(cfg.size());
        for (std::size_t i = 0; i < cfg.size(); ++i) {
            auto& a = agents[i];
            a.origin = cfg[i].point;
            a.appear_time = cfg[i].start_time;
            a.program = factory();
            if (!a.program) {
                throw EngineError("program factory returned null");
            }
            a.trajectory = Trajectory(a.appear_time, a.origin);
            a.p0 = a.p1 = a.origin;
        }
        pairs.resize(cfg.size() * cfg.size());
        trace.epsilon = cfg.epsilon();
        now = std::min_element(cfg.agents().begin(), cfg.agents().end(), [](const auto& x, const auto& y) {
                  return x.start_time < y.start_time;
              })->start_time;
    }

    std::size_t n() const { return agents.size(); }
    PairStatus& pair(std::size_t i, std::size_t j) { return i < j ? pairs[i * n() + j] : pairs[j * n() + i]; }
    bool born(std::size_t i) const { return agents[i].mode != Mode::kUnborn; }

    Point position(std::size_t i, double t) const {
        const auto& a = agents[i];
        if (a.mode == Mode::kMoving) {
            if (t >= a.t1) {
                return a.p1;
            }
            return a.p0 + a.velocity * std::max(0.0, t - a.t0);
        }
        return a.p0;
    }

    Vec2 velocity(std::size_t i) const { return agents[i].mode == Mode::kMoving ? agents[i].velocity : Vec2{}; }

    double segment_end(std::size_t i) const {
        const auto m = agents[i].mode;
        return (m == Mode::kMoving || m == Mode::kWaiting) ? agents[i].t1 : kInf;
    }

    std::optional<double> next_event_time() const {
        if (done) {
            return std::nullopt;
        }
        double t = kInf;
        for (std::size_t i = 0; i < n(); ++i) {
            if (!born(i)) {
                t = std::min(t, agents[i].appear_time);
            } else {
                t = std::min(t, segment_end(i));
            }
        }
        for (std::size_t i = 0; i < n(); ++i) {
            for (std::size_t j = i + 1; j < n(); ++j) {
                if (born(i) && born(j)) {
                    t = std::min(t, pairs[i * n() + j].next_change);
                }
            }
        }
        if (t == kInf) {
            return std::nullopt;
        }
        return std::max(t, now);
    }

    // ---- knowledge -------------------------------------------------------

    void refresh_view(std::size_t i) {
        auto& a = agents[i];
        a.knowledge_view.clear();
        for (const auto& k : a.knowledge) {
            a.knowledge_view.push_back({AgentRef(k.id), agents[k.id].origin - a.origin, k.state});
        }
    }

    SelfView self_view(std::size_t i, double t) {
        refresh_view(i);
        auto& a = agents[i];
        return {t - a.appear_time, position(i, t) - a.origin, a.knowledge_view};
    }

    void note_state(std::size_t i, double t) {
        auto& a = agents[i];
        const StateTag s = a.program->state();
        if (s != a.state) {
            Event e;
            e.time = t;
            e.kind = EventKind::kState;
            e.agents = {i};
            e.positions = {position(i, t)};
            e.from = a.state;
            e.to = s;
            trace.events.push_back(std::move(e));
            a.state = s;
        }
    }

    static void upsert(std::vector<Known>& list, const Known& k) {
        for (auto& e : list) {
            if (e.id == k.id) {
                if (k.stamp >= e.stamp) {
                    e = k;
                }
                return;
            }
        }
        list.push_back(k);
    }

    // ---- trajectory bookkeeping -----------------------------------------

    // Commit the current motion up to time t and leave the agent resting at
    // its position at t.
    void commit_until(std::size_t i, double t) {
        auto& a = agents[i];
        const double end = a.trajectory.end_time();
        if (a.mode == Mode::kMoving) {
            const double stop = std::min(t, a.t1);
            const Point p = stop >= a.t1 ? a.p1 : position(i, stop);
            if (stop > end) {
                a.trajectory.append({end, stop, a.p0, p});
            }
            a.p0 = p;
        } else if (t > end) {
            a.trajectory.append({end, t, a.p0, a.p0});
        }
        a.t0 = a.trajectory.end_time();
    }

    void record_stop(std::size_t i, double t) {
        Event e;
        e.time = t;
        e.kind = EventKind::kStop;
        e.agents = {i};
        e.positions = {agents[i].p0};
        trace.events.push_back(std::move(e));
    }

    void start_next(std::size_t i, double t) {
        auto& a = agents[i];
        a.replan = false;
        commit_until(i, t);
        a.stop_after = false;
        for (int guard = 0; guard < kMaxEmptyInstructions; ++guard) {
            const Instruction ins = a.program->next_instruction(self_view(i, t));
            note_state(i, t);
            const double start = a.trajectory.end_time();
            bool started = std::visit(
                [&](const auto& in) -> bool {
                    using T = std::decay_t<decltype(in)>;
                    if constexpr (std::is_same_v<T, instr::Go>) {
                        if (!std::isfinite(in.distance) || in.distance < 0.0) {
                            throw EngineError("GO with invalid distance " + std::to_string(in.distance));
                        }
                        if (!in.direction.finite() || std::abs(in.direction.length() - 1.0) > kSpeedTolerance) {
                            throw EngineError("GO with a non-unit direction");
                        }
                        if (in.distance == 0.0) {
                            return false;
                        }
                        a.mode = Mode::kMoving;
                        a.t0 = start;
                        a.t1 = start + in.distance;
                        a.velocity = in.direction;
                        a.p1 = a.p0 + in.direction * in.distance;
                        return true;
                    } else if constexpr (std::is_same_v<T, instr::Wait>) {
                        if (!std::isfinite(in.duration) || in.duration < 0.0) {
                            throw EngineError("WAIT with invalid duration " + std::to_string(in.duration));
                        }
                        if (in.duration == 0.0) {
                            return false;
                        }
                        a.mode = Mode::kWaiting;
                        a.t0 = start;
                        a.t1 = start + in.duration;
                        return true;
                    } else if constexpr (std::is_same_v<T, instr::GotoAndStop>) {
                        if (!in.target.finite()) {
                            throw EngineError("GOTO_AND_STOP with a non-finite target");
                        }
                        const Point target = a.origin + in.target;
                        const double d = dist(a.p0, target);
                        if (d == 0.0) {
                            a.mode = Mode::kStopped;
                            a.t1 = kInf;
                            record_stop(i, t);
                            return true;
                        }
                        a.mode = Mode::kMoving;
                        a.t0 = start;
                        a.t1 = start + d;
                        a.velocity = (target - a.p0) * (1.0 / d);
                        a.p1 = target;
                        a.stop_after = true;
                        return true;
                    } else {
                        a.mode = Mode::kHolding;
                        a.t1 = kInf;
                        return true;
                    }
                },
                ins);
            if (started) {
                return;
            }
        }
        throw EngineError("program emitted too many zero-length instructions");
    }

    // ---- GA processing ---------------------------------------------------

    GAView build_view(std::size_t m, const std::vector<std::size_t>& group, const std::vector<StateTag>& pre,
                      double t) {
        const auto& self = agents[m];
        GAView view;
        view.local_time = t - self.appear_time;
        view.self_position = position(m, t) - self.origin;
        for (std::size_t k = 0; k < group.size(); ++k) {
            const std::size_t g = group[k];
            if (g == m) {
                view.self_index = k;
            }
            view.participants.push_back({AgentRef(static_cast<std::uint32_t>(g)), position(g, t) - self.origin,
                                         agents[g].origin - self.origin, pre[k]});
        }
        refresh_view(m);
        view.knowledge = self.knowledge_view;
        return view;
    }

    void process_ga(const std::vector<std::size_t>& group,
                    const std::vector<std::pair<std::size_t, std::size_t>>& new_edges, double t) {
        std::vector<StateTag> pre;
        for (const auto g : group) {
            pre.push_back(agents[g].program->state());
        }

        // gossip: union of everything the group knows, freshest entry wins
        ++stamp;
        std::vector<Known> merged;
        for (const auto g : group) {
            for (const auto& k : agents[g].knowledge) {
                upsert(merged, k);
            }
        }
        for (std::size_t k = 0; k < group.size(); ++k) {
            upsert(merged, {static_cast<std::uint32_t>(group[k]), pre[k], stamp});
        }
        std::sort(merged.begin(), merged.end(), [](const Known& x, const Known& y) { return x.id < y.id; });
        for (const auto g : group) {
            agents[g].knowledge = merged;
        }

        Event ga;
        ga.time = t;
        ga.kind = EventKind::kGa;
        ga.agents = group;
        for (const auto g : group) {
            ga.positions.push_back(position(g, t));
        }
        for (const auto& e : new_edges) {
            if (std::binary_search(group.begin(), group.end(), e.first)) {
                ga.new_edges.push_back(e);
            }
        }
        trace.events.push_back(std::move(ga));

        std::vector<GaResponse> responses;
        responses.reserve(group.size());
        for (const auto m : group) {
            responses.push_back(agents[m].program->on_ga(build_view(m, group, pre, t)));
        }

        ++stamp;
        for (const auto m : group) {
            note_state(m, t);
        }
        for (const auto m : group) {
            for (const auto g : group) {
                upsert(agents[g].knowledge, {static_cast<std::uint32_t>(m), agents[m].state, stamp});
            }
        }

        for (std::size_t k = 0; k < group.size(); ++k) {
            const std::size_t issuer = group[k];
            if (responses[k].replan) {
                agents[issuer].replan = true;
            }
            deliver_orders(issuer, group, responses[k].orders, t);
        }
    }

    void deliver_orders(std::size_t issuer, const std::vector<std::size_t>& group, const std::vector<Order>& orders,
                        double t) {
        std::size_t k = 0;
        while (k < orders.size()) {
            const Point target = agents[issuer].origin + orders[k].target;
            Event e;
            e.time = t;
            e.kind = EventKind::kOrder;
            e.agents = {issuer};
            e.positions = {position(issuer, t)};
            e.target = target;
            for (; k < orders.size() && agents[issuer].origin + orders[k].target == target; ++k) {
                const std::size_t r = orders[k].recipient.id_;
                if (r >= n() || !std::binary_search(group.begin(), group.end(), r)) {
                    throw EngineError("order addressed to an agent outside the GA");
                }
                e.agents.push_back(r);
                e.positions.push_back(position(r, t));
            }
            trace.events.push_back(e);
            for (std::size_t r = 1; r < e.agents.size(); ++r) {
                const std::size_t rec = e.agents[r];
                if (agents[rec].program->on_order(self_view(rec, t), target - agents[rec].origin)) {
                    agents[rec].replan = true;
                }
                note_state(rec, t);
            }
        }
    }

    // ---- pair schedules ----------------------------------------------------

    void schedule_pair(std::size_t i, std::size_t j, double t) {
        auto& ps = pair(i, j);
        const Vec2 r0 = position(j, t) - position(i, t);
        const Vec2 v = velocity(j) - velocity(i);
        const double span = std::min(segment_end(i), segment_end(j)) - t;
        // An adjacent pair only separates past a slightly larger radius, so a
        // pair resting exactly on the contact circle does not flicker.
        const auto iv = contact_interval(r0, v, ps.adjacent ? contact_radius + kSpeedTolerance : contact_radius);
        ps.next_change = kInf;
        if (ps.adjacent) {
            if (!iv || iv->first > kTimeTolerance) {
                ps.next_change = t;
            } else if (iv->second < span) {
                ps.next_change = t + std::max(iv->second, 0.0);
            }
        } else if (iv && iv->second > kTimeTolerance && iv->first <= span) {
            const bool just_left = ps.last_exit >= t - kTimeTolerance;
            if (!just_left || iv->first > kTimeTolerance) {
                ps.next_change = t + std::max(iv->first, 0.0);
            }
        }
    }

    void process_instant(double t) {
        std::vector<std::pair<std::size_t, std::size_t>> new_edges;

        std::vector<std::size_t> newborn;
        for (std::size_t i = 0; i < n(); ++i) {
            auto& a = agents[i];
            if (!born(i) && a.appear_time <= t + kTimeTolerance) {
                a.mode = Mode::kPending;
                a.state = a.program->state();
                a.knowledge = {{static_cast<std::uint32_t>(i), a.state, stamp}};
                newborn.push_back(i);
                Event e;
                e.time = t;
                e.kind = EventKind::kAppear;
                e.agents = {i};
                e.positions = {a.origin};
                trace.events.push_back(std::move(e));
            }
        }
        for (const auto i : newborn) {
            for (std::size_t j = 0; j < n(); ++j) {
                if (j == i || !born(j) || pair(i, j).initialised) {
                    continue;
                }
                auto& ps = pair(i, j);
                ps.initialised = true;
                ps.adjacent = dist(position(i, t), position(j, t)) <= contact_radius;
                ps.next_change = kInf;
                if (ps.adjacent) {
                    new_edges.emplace_back(std::min(i, j), std::max(i, j));
                }
            }
        }

        for (std::size_t i = 0; i < n(); ++i) {
            auto& a = agents[i];
            if ((a.mode == Mode::kMoving || a.mode == Mode::kWaiting) && a.t1 <= t + kTimeTolerance) {
                commit_until(i, a.t1);
                if (a.stop_after) {
                    a.mode = Mode::kStopped;
                    a.t1 = kInf;
                    a.stop_after = false;
                    record_stop(i, t);
                } else {
                    a.mode = Mode::kPending;
                }
            }
        }

        for (std::size_t i = 0; i < n(); ++i) {
            for (std::size_t j = i + 1; j < n(); ++j) {
                auto& ps = pair(i, j);
                if (!born(i) || !born(j) || ps.next_change > t + kTimeTolerance) {
                    continue;
                }
                ps.adjacent = !ps.adjacent;
                ps.next_change = kInf;
                if (ps.adjacent) {
                    new_edges.emplace_back(i, j);
                } else {
                    ps.last_exit = t;
                }
            }
        }

        if (!new_edges.empty()) {
            std::sort(new_edges.begin(), new_edges.end());
            std::vector<std::pair<std::size_t, std::size_t>> adjacency;
            for (std::size_t i = 0; i < n(); ++i) {
                for (std::size_t j = i + 1; j < n(); ++j) {
                    if (born(i) && born(j) && pair(i, j).adjacent) {
                        adjacency.emplace_back(i, j);
                    }
                }
            }
            for (const auto& group : form_ga_groups(n(), adjacency, new_edges)) {
                process_ga(group, new_edges, t);
            }
        }

        for (std::size_t i = 0; i < n(); ++i) {
            if (born(i) && (agents[i].mode == Mode::kPending || agents[i].replan)) {
                start_next(i, t);
            }
        }

        for (std::size_t i = 0; i < n(); ++i) {
            for (std::size_t j = i + 1; j < n(); ++j) {
                if (born(i) && born(j)) {
                    schedule_pair(i, j, t);
                }
            }
        }
    }

    bool step() {
        if (done) {
            return false;
        }
        const auto next = next_event_time();
        if (!next) {
            const bool all_stopped = std::all_of(agents.begin(), agents.end(),
                                                 [](const Agent& a) { return a.mode == Mode::kStopped; });
            finalize(all_stopped ? now : horizon);
            return false;
        }
        if (*next > horizon) {
            finalize(horizon);
            return false;
        }
        if (*next == now) {
            if (++passes_at_now > kMaxPassesPerInstant) {
                throw EngineError("simulation made no progress at t=" + std::to_string(now));
            }
        } else {
            passes_at_now = 0;
        }
        now = *next;
        process_instant(now);
        return true;
    }

    void finalize(double t_end) {
        done = true;
        now = std::max(now, t_end);
        bool all_stopped = true;
        for (std::size_t i = 0; i < n(); ++i) {
            auto& a = agents[i];
            if (born(i)) {
                commit_until(i, t_end);
                if (a.mode == Mode::kMoving && t_end < a.t1) {
                    // leave the truncated motion committed; the agent is mid-move
                } else if (a.mode == Mode::kMoving) {
                    a.p0 = a.p1;
                }
            }
            trace.final_positions.push_back(born(i) ? a.p0 : a.origin);
            trace.final_states.push_back(a.program->state());
            trace.stopped.push_back(a.mode == Mode::kStopped);
            all_stopped = all_stopped && a.mode == Mode::kStopped;
        }
        trace.end_time = t_end;
        trace.trajectories.clear();
        for (auto& a : agents) {
            trace.trajectories.push_back(a.trajectory);
        }

        auto& v = trace.verdict;
        if (all_stopped) {
            for (const auto& p : trace.final_positions) {
                auto it = std::find_if(v.group_points.begin(), v.group_points.end(),
                                       [&](Point q) { return dist(p, q) <= kPositionTolerance; });
                if (it == v.group_points.end()) {
                    v.group_points.push_back(p);
                    v.group_sizes.push_back(1);
                } else {
                    ++v.group_sizes[static_cast<std::size_t>(it - v.group_points.begin())];
                }
            }
            v.kind = v.group_points.size() == 1 ? VerdictKind::kGathered : VerdictKind::kSplit;
        } else {
            v.kind = VerdictKind::kTimeout;
            Event e;
            e.time = t_end;
            e.kind = EventKind::kHorizon;
            trace.events.push_back(std::move(e));
        }
    }
};

Simulation::Simulation(const InitialConfiguration& cfg, const ProgramFactory& factory, double horizon)
    : impl_(std::make_unique<Impl>(cfg, factory, horizon)) {}
Simulation::~Simulation() = default;
Simulation::Simulation(Simulation&&) noexcept = default;
Simulation& Simulation::operator=(Simulation&&) noexcept = default;

std::optional<double> Simulation::next_event_time() const { return impl_->next_event_time(); }
bool Simulation::step() { return impl_->step(); }
double Simulation::now() const { return impl_->now; }
bool Simulation::finished() const { return impl_->done; }

Trace Simulation::finish() {
    while (impl_->step()) {
    }
    return impl_->trace;
}

Trace run(const InitialConfiguration& cfg, const ProgramFactory& factory, double horizon) {
    return Simulation(cfg, factory, horizon).finish();
}

std::vector<std::string> check_trace_invariants(const Trace& trace) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < trace.trajectories.size(); ++i) {
        const auto& traj = trace.trajectories[i];
        double prev_t = traj.origin_time();
        Point prev_p = traj.origin();
        for (const auto& s : traj.segments()) {
            if (std::abs(s.start_time - prev_t) > kTimeTolerance || dist(s.start_point, prev_p) > kPositionTolerance) {
                out.push_back("agent " + std::to_string(i) + ": discontinuous trajectory at t=" +
                              std::to_string(s.start_time));
            }
            const double len = dist(s.start_point, s.end_point);
            if (len > 0.0 && std::abs(len - s.duration()) > kSpeedTolerance * std::max(1.0, s.duration())) {
                out.push_back("agent " + std::to_string(i) + ": illegal speed at t=" + std::to_string(s.start_time));
            }
            prev_t = s.end_time;
            prev_p = s.end_point;
        }
    }

    double last = -kInf;
    for (const auto& e : trace.events) {
        if (e.time < last) {
            out.push_back("events out of time order at t=" + std::to_string(e.time));
        }
        last = e.time;
        if (e.kind != EventKind::kGa) {
            continue;
        }
        const double before = e.time - kTimeTolerance;
        for (const auto& [a, b] : e.new_edges) {
            const auto& ta = trace.trajectories[a];
            const auto& tb = trace.trajectories[b];
            if (ta.origin_time() > before || tb.origin_time() > before) {
                continue;
            }
            const double d = dist(position_at(ta, before), position_at(tb, before));
            if (!(d > trace.epsilon)) {
                out.push_back("GA at t=" + std::to_string(e.time) + ": agents " + std::to_string(a) + "," +
                              std::to_string(b) + " were already within epsilon");
            }
        }
    }

    if (trace.verdict.kind == VerdictKind::kGathered) {
        for (std::size_t i = 0; i < trace.final_positions.size(); ++i) {
            if (!trace.stopped[i]) {
                out.push_back("gathered verdict but agent " + std::to_string(i) + " never stopped");
            }
            for (std::size_t j = i + 1; j < trace.final_positions.size(); ++j) {
                if (dist(trace.final_positions[i], trace.final_positions[j]) > kPositionTolerance) {
                    out.push_back("gathered verdict but agents " + std::to_string(i) + "," + std::to_string(j) +
                                  " are apart");
                }
            }
        }
    }
    return out;
}

} // namespace gathering
