#include "avs/agent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "avs/metrics.hpp"

namespace avs {

std::string termination_name(TerminationReason r) {
    switch (r) {
        case TerminationReason::Reached: return "Reached";
        case TerminationReason::Budget: return "Budget";
        case TerminationReason::FalseAlarmExhausted: return "FalseAlarmExhausted";
    }
    return "?";
}

std::string agent_name(AgentKind k) {
    switch (k) {
        case AgentKind::Pompp: return "pomp++";
        case AgentKind::RandomWalk: return "random";
        case AgentKind::GreedyFrontier: return "frontier";
    }
    return "?";
}

bool same_outcome(const EpisodeResult& a, const EpisodeResult& b) {
    return a.success == b.success && a.steps_taken == b.steps_taken && a.path == b.path &&
           a.shortest_path_len == b.shortest_path_len &&
           a.termination_reason == b.termination_reason && a.false_alarms == b.false_alarms;
}

namespace {

using nlohmann::json;

json pose_json(const Pose& p) { return json::array({p.x, p.y, p.theta}); }

enum class ApproachOutcome { Reached, Aborted, BudgetOut, NoPath };

class Episode {
  public:
    Episode(const Scene& scene, const EpisodeConfig& cfg, json* log)
        : scene_(scene),
          cfg_(cfg),
          log_(log),
          map_(scene.width, scene.height, scene.resolution),
          graph_(scene.width, scene.height, cfg.motion),
          det_rng_(Rng::derive(cfg.seed, 0xD37EC70ULL)),
          belief_rng_(Rng::derive(cfg.seed, 0xBE11EFULL)),
          walk_rng_(Rng::derive(cfg.seed, 0x3A1CULL)) {
        pose_ = scene.start_pose;
        graph_.add_node(pose_);
        path_.push_back(pose_);
        if (log_) {
            (*log_)["schema_version"] = 1;
            (*log_)["scene"] = dump_scene(scene_);
            (*log_)["config"] = config_json();
            (*log_)["steps"] = json::array();
        }
    }

    EpisodeResult run(AgentKind kind) {
        if (log_) (*log_)["agent"] = agent_name(kind);
        switch (kind) {
            case AgentKind::Pompp: run_pompp(); break;
            case AgentKind::RandomWalk: run_random(); break;
            case AgentKind::GreedyFrontier: run_frontier(); break;
        }
        return finish();
    }

  private:
    // --- shared machinery ----------------------------------------------------

    // Sense from the current pose, fold into the knowledge map, grow the pose
    // graph. Returns the number of model-update operations (delta accounting).
    int sense_and_update() {
        const Reconstruction rec = sense(scene_, pose_, cfg_.frustum, headings());
        GridMap next = map_update(map_, pose_, rec, cfg_.frustum, headings());
        int ops = 0;
        for (int i = 0; i < map_.cell_count(); ++i)
            if (map_.at(i) != next.at(i)) ++ops;
        map_ = std::move(next);
        PoseGraph grown = expand(graph_, map_);
        ops += (int)(grown.node_count() - graph_.node_count());
        ops += (int)(grown.edge_count() - graph_.edge_count());
        graph_ = std::move(grown);
        return ops;
    }

    bool budget_left() const { return steps_ < cfg_.max_episode_steps; }
    int headings() const { return cfg_.motion.num_headings; }

    void move(Action a) {
        pose_ = transition(AvsState{pose_, 0}, a, graph_).robot;
        ++steps_;
        path_.push_back(pose_);
    }

    bool detect_now() { return detect(scene_, pose_, cfg_.frustum, cfg_.detector, headings(), det_rng_); }

    void log_step(const char* phase, Action a, bool obs, int candidate_count, int update_ops,
                  const PlanResult* plan) {
        if (!log_) return;
        json entry{{"step", steps_},
                   {"phase", phase},
                   {"pose", pose_json(pose_)},
                   {"action", std::string(action_name(a))},
                   {"real_observation", obs},
                   {"candidate_count", candidate_count},
                   {"model_update_ops", update_ops},
                   {"plan_wall_time", plan ? plan->wall_seconds : 0.0},
                   {"sim_count", plan ? (int)plan->records.size() : 0},
                   {"nodes_created", plan ? plan->nodes_created : 0}};
        json hist = json::object();
        if (plan)
            for (const auto& [cell, n] : belief_.histogram()) hist[std::to_string(cell)] = n;
        entry["belief_histogram"] = std::move(hist);
        (*log_)["steps"].push_back(std::move(entry));
    }

    double dist_m(int cell_a, int cell_b) const {
        const double dx = scene_.cell_x(cell_a) - scene_.cell_x(cell_b);
        const double dy = scene_.cell_y(cell_a) - scene_.cell_y(cell_b);
        return std::sqrt(dx * dx + dy * dy) * scene_.resolution;
    }

    // Estimated object position: modal belief cell among candidates visible
    // from the current pose; ties by count, then distance, then index.
    // Belief-less agents fall back to the nearest visible candidate.
    int estimate_cell(bool use_belief) {
        const std::vector<int> cands = candidates(map_);
        if (cands.empty()) return -1;
        std::vector<int> pool;
        for (int c : cands)
            if (visibility(map_, pose_, c, cfg_.frustum, headings()) == 1) pool.push_back(c);
        if (pool.empty()) pool = cands;

        const auto hist = use_belief ? belief_.histogram() : std::map<int, int>{};
        const int here = scene_.index(pose_.x, pose_.y);
        int best = -1, best_count = -1;
        double best_dist = 0.0;
        for (int c : pool) {
            auto it = hist.find(c);
            const int count = it == hist.end() ? 0 : it->second;
            const double d = dist_m(here, c);
            if (best < 0 || count > best_count || (count == best_count && d < best_dist - 1e-12)) {
                best = c;
                best_count = count;
                best_dist = d;
            }
        }
        return best;
    }

    // Walks the shortest path to the nearest pose that puts the estimated
    // cell in view within the success distance, re-sensing and re-detecting
    // each step. Consecutive misses abort the approach (false alarm).
    ApproachOutcome approach(bool use_belief) {
        const int est = estimate_cell(use_belief);
        if (est < 0) return ApproachOutcome::NoPath;
        const auto qualifies = [&](const Pose& p) {
            if (dist_m(scene_.index(p.x, p.y), est) > cfg_.success_distance + 1e-9) return false;
            return visibility(map_, p, est, cfg_.frustum, headings()) == 1;
        };
        const auto path = shortest_path_to(graph_, pose_, qualifies);
        if (!path) return ApproachOutcome::NoPath;
        if (path->empty()) return ApproachOutcome::Reached;

        int misses = 0;
        for (Action a : *path) {
            if (!budget_left()) return ApproachOutcome::BudgetOut;
            move(a);
            const int ops = sense_and_update();
            const bool obs = detect_now();
            log_step("approach", a, obs, (int)candidates(map_).size(), ops, nullptr);
            if (qualifies(pose_)) return ApproachOutcome::Reached;
            if (obs) {
                misses = 0;
            } else if (++misses >= cfg_.false_alarm_patience) {
                return ApproachOutcome::Aborted;
            }
        }
        return qualifies(pose_) ? ApproachOutcome::Reached : ApproachOutcome::Aborted;
    }

    // Common post-detection handling. Returns true when the episode is over.
    bool handle_detection(bool use_belief) {
        const ApproachOutcome out = approach(use_belief);
        switch (out) {
            case ApproachOutcome::Reached: termination_ = TerminationReason::Reached; return true;
            case ApproachOutcome::BudgetOut: termination_ = TerminationReason::Budget; return true;
            case ApproachOutcome::Aborted:
                ++false_alarms_;
                if (false_alarms_ >= cfg_.max_false_alarms) {
                    termination_ = TerminationReason::FalseAlarmExhausted;
                    return true;
                }
                return false;
            case ApproachOutcome::NoPath: return false;
        }
        return false;
    }

    // --- agents ----------------------------------------------------------------

    void run_pompp() {
        const PomdpModel model{cfg_.rewards, cfg_.frustum, cfg_.motion};
        PlannerConfig pcfg = cfg_.planner;
        pcfg.gamma = cfg_.rewards.gamma;

        std::vector<int> prev_cands;
        std::vector<SimRecord> records;
        bool have_obs = false;
        bool last_obs = false;
        bool belief_ready = false;
        int plan_calls = 0;

        while (budget_left()) {
            const int ops = sense_and_update();
            const std::vector<int> cands = candidates(map_);
            if (cands.empty()) break; // fully explored, nothing to hypothesize

            // Candidate-set delta plus detection pruning: visible candidates
            // with a negative real observation drop out of the belief.
            std::vector<int> vis_neg;
            if (have_obs && !last_obs)
                for (int c : cands)
                    if (visibility(map_, pose_, c, cfg_.frustum, headings()) == 1)
                        vis_neg.push_back(c);
            std::vector<int> alive;
            {
                std::unordered_set<int> neg(vis_neg.begin(), vis_neg.end());
                for (int c : cands)
                    if (!neg.count(c)) alive.push_back(c);
                if (alive.empty()) alive = cands;
            }

            if (!belief_ready) {
                belief_ = Belief::uniform_over(alive, cfg_.particle_count, belief_rng_);
                belief_ready = true;
            } else {
                std::unordered_set<int> cur(cands.begin(), cands.end());
                std::vector<int> removed = vis_neg;
                for (int c : prev_cands)
                    if (!cur.count(c)) removed.push_back(c);
                std::unordered_set<int> prev(prev_cands.begin(), prev_cands.end());
                std::vector<int> fresh;
                for (int c : cands)
                    if (!prev.count(c)) fresh.push_back(c);

                if (cfg_.reinvigoration == ReinvigorationStrategy::TwoStep) {
                    belief_ = reinvigorate_two_step(belief_, records, Observation{last_obs},
                                                    removed, fresh, alive, cfg_.new_fraction,
                                                    belief_rng_);
                } else {
                    belief_ = reinvigorate_original(belief_, records, Observation{last_obs},
                                                    alive, belief_rng_);
                }
                belief_ = prune_to_candidates(belief_, alive, belief_rng_);
                belief_ = resample_to(belief_, cfg_.particle_count);
            }

            const PlanResult pr = plan(belief_, pose_, map_, graph_, model, pcfg,
                                       Rng::derive(cfg_.seed, 0x9C0DE + plan_calls).next_u64());
            ++plan_calls;
            plan_time_sum_ += pr.wall_seconds;
            ++plan_count_;
            records = pr.records;

            move(pr.chosen_action);
            const bool obs = detect_now();
            log_step("explore", pr.chosen_action, obs, (int)cands.size(), ops, &pr);
            prev_cands = cands;
            have_obs = true;
            last_obs = obs;

            if (obs) {
                if (handle_detection(true)) return;
                // aborted or unreachable: discard stale simulation records and
                // let pruning handle the false-alarm region
                records.clear();
                last_obs = false;
            }
        }
        termination_ = TerminationReason::Budget;
    }

    void run_random() {
        while (budget_left()) {
            sense_and_update();
            std::vector<Action> acts;
            for (Action a : legal_actions(cfg_.motion))
                if (a != Action::Stop && graph_.edge(pose_, a)) acts.push_back(a);
            if (acts.empty()) break;
            const Action a = acts[walk_rng_.uniform_int((int)acts.size())];
            move(a);
            const bool obs = detect_now();
            log_step("explore", a, obs, (int)candidates(map_).size(), 0, nullptr);
            if (obs && handle_detection(false)) return;
        }
        termination_ = TerminationReason::Budget;
    }

    // Facing heading for a unit step (dx, dy), or -1 when no heading maps to it.
    int heading_toward(int dx, int dy) const {
        for (int t = 0; t < headings(); ++t)
            if (cfg_.motion.forward_delta(t) == std::pair(dx, dy)) return t;
        return -1;
    }

    void run_frontier() {
        while (budget_left()) {
            sense_and_update();
            const std::vector<int> cands = candidates(map_);
            if (cands.empty()) break;

            // Nearest frontier by the cost of reaching a pose adjacent to it
            // and facing it; arrival is then guaranteed to resolve the cell.
            const auto dist = bfs_distances(graph_, pose_);
            int best_cost = -1;
            Pose target{};
            int target_cell = -1;
            for (int c : cands) {
                const int cx = map_.cell_x(c), cy = map_.cell_y(c);
                const int nb[4][2] = {{cx - 1, cy}, {cx + 1, cy}, {cx, cy - 1}, {cx, cy + 1}};
                for (auto [nx, ny] : nb) {
                    if (!map_.in_bounds(nx, ny) || map_.at(nx, ny) != CellState::Seen) continue;
                    const int t = heading_toward(cx - nx, cy - ny);
                    if (t < 0) continue;
                    const Pose q{nx, ny, t};
                    auto it = dist.find(graph_.key(q));
                    if (it == dist.end()) continue;
                    if (best_cost < 0 || it->second < best_cost) {
                        best_cost = it->second;
                        target = q;
                        target_cell = c;
                    }
                }
            }
            if (target_cell < 0) break; // no reachable frontier view

            const auto leg = shortest_path_to(graph_, pose_, [&](const Pose& p) { return p == target; });
            if (!leg || leg->empty()) break;
            for (Action a : *leg) {
                if (!budget_left()) break;
                move(a);
                sense_and_update();
                const bool obs = detect_now();
                log_step("explore", a, obs, (int)candidates(map_).size(), 0, nullptr);
                if (obs && handle_detection(false)) return;
                if (map_.at(target_cell) != CellState::Candidate) break; // resolved en route
            }
        }
        termination_ = TerminationReason::Budget;
    }

    EpisodeResult finish() {
        EpisodeResult r;
        r.success = success_pose(scene_, pose_, cfg_.frustum, headings(), cfg_.success_distance);
        r.steps_taken = steps_;
        r.path = path_;
        r.shortest_path_len =
            optimal_path_length(scene_, cfg_.motion, cfg_.frustum, cfg_.success_distance);
        r.wall_time_per_step = plan_count_ > 0 ? plan_time_sum_ / plan_count_ : 0.0;
        r.termination_reason = termination_;
        r.false_alarms = false_alarms_;
        if (log_) {
            json res{{"success", r.success},
                     {"steps_taken", r.steps_taken},
                     {"shortest_path_len", r.shortest_path_len},
                     {"wall_time_per_step", r.wall_time_per_step},
                     {"termination_reason", termination_name(r.termination_reason)},
                     {"false_alarms", r.false_alarms}};
            json path = json::array();
            for (const Pose& p : path_) path.push_back(pose_json(p));
            res["path"] = std::move(path);
            (*log_)["result"] = std::move(res);
        }
        return r;
    }

    json config_json() const {
        return json{{"max_episode_steps", cfg_.max_episode_steps},
                    {"success_distance", cfg_.success_distance},
                    {"fov_degrees", cfg_.frustum.fov_degrees},
                    {"range_cells", cfg_.frustum.range_cells},
                    {"num_simulations", cfg_.planner.num_simulations},
                    {"max_sim_depth", cfg_.planner.max_sim_depth},
                    {"ucb_c", cfg_.planner.ucb_c},
                    {"num_threads", cfg_.planner.num_threads},
                    {"r_detect", cfg_.rewards.r_detect},
                    {"r_step", cfg_.rewards.r_step},
                    {"gamma", cfg_.rewards.gamma},
                    {"num_headings", cfg_.motion.num_headings},
                    {"backward_enabled", cfg_.motion.backward_enabled},
                    {"reinvigoration",
                     cfg_.reinvigoration == ReinvigorationStrategy::TwoStep ? "two-step"
                                                                            : "original"},
                    {"new_fraction", cfg_.new_fraction},
                    {"particle_count", cfg_.particle_count},
                    {"true_positive_rate", cfg_.detector.true_positive_rate},
                    {"false_positive_rate", cfg_.detector.false_positive_rate},
                    {"max_detect_range", cfg_.detector.max_detect_range},
                    {"false_alarm_patience", cfg_.false_alarm_patience},
                    {"max_false_alarms", cfg_.max_false_alarms},
                    {"seed", cfg_.seed}};
    }

    const Scene& scene_;
    const EpisodeConfig& cfg_;
    json* log_;

    GridMap map_;
    PoseGraph graph_;
    Belief belief_;
    Pose pose_;
    std::vector<Pose> path_;
    int steps_ = 0;
    int false_alarms_ = 0;
    double plan_time_sum_ = 0.0;
    int plan_count_ = 0;
    TerminationReason termination_ = TerminationReason::Budget;

    Rng det_rng_;
    Rng belief_rng_;
    Rng walk_rng_;
};

} // namespace

EpisodeResult run_episode(const Scene& scene, const EpisodeConfig& cfg, nlohmann::json* log) {
    return Episode(scene, cfg, log).run(AgentKind::Pompp);
}

EpisodeResult run_random_walk(const Scene& scene, const EpisodeConfig& cfg, nlohmann::json* log) {
    return Episode(scene, cfg, log).run(AgentKind::RandomWalk);
}

EpisodeResult run_greedy_frontier(const Scene& scene, const EpisodeConfig& cfg,
                                  nlohmann::json* log) {
    return Episode(scene, cfg, log).run(AgentKind::GreedyFrontier);
}

EpisodeResult run_agent(AgentKind kind, const Scene& scene, const EpisodeConfig& cfg,
                        nlohmann::json* log) {
    return Episode(scene, cfg, log).run(kind);
}

} // namespace avs
