#include "avs/pomcp.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace avs {

namespace {

struct Node {
    std::array<std::array<int32_t, 2>, kNumActions> child; // [action][observation]
    std::array<double, kNumActions> q;
    std::array<uint32_t, kNumActions> n;
    uint32_t visits = 0;
    std::vector<int> particles;
};

struct Tree {
    std::vector<Node> nodes;

    int32_t alloc() {
        Node& nd = nodes.emplace_back();
        for (auto& c : nd.child) c = {-1, -1};
        nd.q.fill(0.0);
        nd.n.fill(0);
        return (int32_t)nodes.size() - 1;
    }
};

struct SearchContext {
    const GridMap& map;
    const PoseGraph& graph;
    const PomdpModel& model;
    const PlannerConfig& cfg;
    std::vector<Action> actions;
    std::unordered_map<uint64_t, uint8_t> vis_cache; // (pose,cell) -> visibility

    bool visible(const Pose& p, int cell) {
        const uint64_t key = (uint64_t)graph.key(p) * (uint64_t)map.cell_count() + (uint64_t)cell;
        auto it = vis_cache.find(key);
        if (it != vis_cache.end()) return it->second != 0;
        const uint8_t v =
            (uint8_t)visibility(map, p, cell, model.frustum, model.motion.num_headings);
        vis_cache.emplace(key, v);
        return v != 0;
    }
};

Action select_ucb(const Node& nd, const SearchContext& ctx) {
    // unvisited actions first, in fixed order
    for (Action a : ctx.actions)
        if (nd.n[(int)a] == 0) return a;
    Action best = ctx.actions[0];
    double best_v = -1e300;
    const double log_n = std::log((double)nd.visits);
    for (Action a : ctx.actions) {
        const int ai = (int)a;
        const double v = nd.q[ai] + ctx.cfg.ucb_c * std::sqrt(log_n / (double)nd.n[ai]);
        if (v > best_v) {
            best_v = v;
            best = a;
        }
    }
    return best;
}

double rollout(AvsState state, int remaining, SearchContext& ctx, Rng& rng) {
    const RewardSpec& rw = ctx.model.rewards;
    double ret = 0.0;
    double disc = 1.0;
    while (remaining > 0) {
        const Action a = ctx.actions[rng.uniform_int((int)ctx.actions.size())];
        if (a == Action::Stop) {
            ret += disc * rw.r_step;
            break;
        }
        state = transition(state, a, ctx.graph);
        const bool detected = ctx.visible(state.robot, state.object_cell);
        ret += disc * (detected ? rw.r_detect : rw.r_step);
        if (detected) break;
        disc *= ctx.cfg.gamma;
        --remaining;
    }
    return ret;
}

// One POMCP recursion step. Each simulation expands at most one new node;
// simulated detection and Stop truncate the branch.
double simulate(Tree& tree, int32_t node_idx, AvsState state, int remaining, SearchContext& ctx,
                Rng& rng, bool* first_obs) {
    if (remaining == 0) return 0.0;
    tree.nodes[node_idx].particles.push_back(state.object_cell);

    const Action a = select_ucb(tree.nodes[node_idx], ctx);
    const int ai = (int)a;
    const RewardSpec& rw = ctx.model.rewards;

    double total;
    if (a == Action::Stop) {
        if (first_obs) *first_obs = ctx.visible(state.robot, state.object_cell);
        total = rw.r_step; // idle stop: terminal, no detection bonus
    } else {
        const AvsState next = transition(state, a, ctx.graph);
        const bool detected = ctx.visible(next.robot, next.object_cell);
        if (first_obs) *first_obs = detected;
        const double r = detected ? rw.r_detect : rw.r_step;
        if (detected) {
            total = r;
        } else {
            int32_t child = tree.nodes[node_idx].child[ai][0];
            if (child < 0) {
                child = tree.alloc();
                tree.nodes[node_idx].child[ai][0] = child;
                total = r + ctx.cfg.gamma * rollout(next, remaining - 1, ctx, rng);
            } else {
                total = r + ctx.cfg.gamma *
                                simulate(tree, child, next, remaining - 1, ctx, rng, nullptr);
            }
        }
    }

    Node& nd = tree.nodes[node_idx];
    nd.n[ai] += 1;
    nd.q[ai] += (total - nd.q[ai]) / (double)nd.n[ai];
    nd.visits += 1;
    return total;
}

// Simulations [sim_begin, sim_end) on one tree; records land at their global
// simulation index.
void run_tree(Tree& tree, const Belief& belief, const Pose& pose, SearchContext& ctx,
              uint64_t seed, int sim_begin, int sim_end, SimRecord* records) {
    tree.nodes.reserve((size_t)(sim_end - sim_begin) + 2);
    const int32_t root = tree.alloc();
    for (int i = sim_begin; i < sim_end; ++i) {
        Rng rng = Rng::derive(seed, (uint64_t)i);
        const int particle = belief.sample(rng);
        bool first_obs = false;
        simulate(tree, root, AvsState{pose, particle}, ctx.cfg.max_sim_depth, ctx, rng,
                 &first_obs);
        records[i] = SimRecord{particle, first_obs};
    }
}

} // namespace

PlanResult plan(const Belief& belief, const Pose& current_pose, const GridMap& map,
                const PoseGraph& graph, const PomdpModel& model, const PlannerConfig& cfg,
                uint64_t seed) {
    if (belief.empty()) throw std::logic_error("plan: empty belief");
    if (!graph.contains(current_pose)) throw std::invalid_argument("plan: pose not in graph");
    if (cfg.num_simulations < 1 || cfg.max_sim_depth < 1 || cfg.ucb_c < 0.0)
        throw std::invalid_argument("plan: bad planner config");

    const auto t0 = std::chrono::steady_clock::now();

    PlanResult result;
    result.records.resize(cfg.num_simulations);

    const int chunks = std::max(1, std::min(cfg.num_threads, cfg.num_simulations));
    std::vector<Tree> trees(chunks);
    const std::vector<Action> actions = legal_actions(model.motion);

    const int base = cfg.num_simulations / chunks;
    const int rem = cfg.num_simulations % chunks;
    std::vector<int> begin(chunks + 1, 0);
    for (int k = 0; k < chunks; ++k) begin[k + 1] = begin[k] + base + (k < rem ? 1 : 0);

#ifdef _OPENMP
#pragma omp parallel for num_threads(chunks) schedule(static, 1) if (chunks > 1)
#endif
    for (int k = 0; k < chunks; ++k) {
        SearchContext ctx{map, graph, model, cfg, actions, {}};
        run_tree(trees[k], belief, current_pose, ctx, seed, begin[k], begin[k + 1],
                 result.records.data());
    }

    // Merge root statistics, visit-weighted. With one chunk this is the serial
    // reference result unchanged.
    for (const Tree& tree : trees) {
        result.nodes_created += (int)tree.nodes.size();
        const Node& root = tree.nodes[0];
        for (int ai = 0; ai < kNumActions; ++ai) {
            ActionValue& av = result.root_values[ai];
            const uint32_t n = root.n[ai];
            if (n == 0) continue;
            av.q = (av.q * av.n + root.q[ai] * n) / (double)(av.n + n);
            av.n += n;
        }
    }

    bool found = false;
    for (Action a : actions) {
        const ActionValue& av = result.root_values[(int)a];
        if (av.n == 0) continue;
        if (!found || av.q > result.root_values[(int)result.chosen_action].q) {
            result.chosen_action = a;
            found = true;
        }
    }

    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

} // namespace avs
