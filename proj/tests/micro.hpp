#pragma once

// Seeded micro POMDP instances (<= 4 candidate cells, 12 poses) plus an exact
// depth-limited expectimax oracle over them. The oracle evaluates action
// values by full observation branching and belief conditioning, entirely
// independent of the sampling planner it is used to check.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "avs/belief.hpp"
#include "avs/pomcp.hpp"

namespace micro {

struct Instance {
    avs::GridMap map{1, 1, 1.0};
    avs::PoseGraph graph{1, 1, avs::MotionModel{}};
    avs::PomdpModel model;
    avs::Pose start;
    std::vector<int> cands;
    std::vector<int> weights; // particle multiplicities per candidate
    int mu = 5;

    avs::Belief belief() const {
        std::vector<int> p;
        for (size_t i = 0; i < cands.size(); ++i)
            for (int k = 0; k < weights[i]; ++k) p.push_back(cands[i]);
        return avs::Belief(p);
    }
};

// A 3-cell corridor with candidate cells scattered on its 8-cell ring.
inline Instance make_instance(uint64_t seed) {
    avs::Rng rng(seed);
    Instance inst;

    const std::pair<int, int> ring[] = {{0, 1}, {4, 1}, {1, 0}, {2, 0},
                                        {3, 0}, {1, 2}, {2, 2}, {3, 2}};
    const int n_cands = 1 + rng.uniform_int(4);
    std::vector<int> pick;
    for (int i = 0; i < 8; ++i) pick.push_back(i);
    for (int i = 0; i < n_cands; ++i) std::swap(pick[i], pick[i + rng.uniform_int(8 - i)]);

    std::string rows = "#####\n#####\n#####\n";
    auto set = [&](int x, int y, char c) { rows[(size_t)y * 6 + x] = c; };
    for (int x = 1; x <= 3; ++x) set(x, 1, '.');
    for (int i = 0; i < n_cands; ++i) {
        auto [x, y] = ring[pick[i]];
        set(x, y, 'F');
        inst.cands.push_back(y * 5 + x);
        inst.weights.push_back(1 + rng.uniform_int(5));
    }
    std::sort(inst.cands.begin(), inst.cands.end());
    inst.map = avs::grid_from_ascii(rows, 0.3);

    inst.model.frustum = avs::FrustumSpec{90.0 * (1 + rng.uniform_int(3)),
                                          1 + rng.uniform_int(3)};
    inst.model.motion = avs::MotionModel{};
    inst.start = avs::Pose{1 + rng.uniform_int(3), 1, rng.uniform_int(4)};
    inst.mu = 3 + rng.uniform_int(3);

    avs::PoseGraph g(5, 3, inst.model.motion);
    g.add_node(inst.start);
    inst.graph = expand(g, inst.map);
    return inst;
}

inline double q_value(const Instance& inst, const avs::Pose& pose,
                      const std::vector<double>& probs, int remaining, avs::Action a);

inline double best_value(const Instance& inst, const avs::Pose& pose,
                         const std::vector<double>& probs, int remaining) {
    if (remaining == 0) return 0.0;
    double best = -1e300;
    for (avs::Action a : legal_actions(inst.model.motion))
        best = std::max(best, q_value(inst, pose, probs, remaining, a));
    return best;
}

inline double q_value(const Instance& inst, const avs::Pose& pose,
                      const std::vector<double>& probs, int remaining, avs::Action a) {
    const avs::RewardSpec& rw = inst.model.rewards;
    if (a == avs::Action::Stop) return rw.r_step;

    const avs::AvsState moved =
        avs::transition(avs::AvsState{pose, 0}, a, inst.graph);
    std::vector<double> vis(inst.cands.size());
    double p_detect = 0.0;
    for (size_t i = 0; i < inst.cands.size(); ++i) {
        vis[i] = avs::visibility(inst.map, moved.robot, inst.cands[i], inst.model.frustum,
                                 inst.model.motion.num_headings);
        p_detect += probs[i] * vis[i];
    }
    const double r = p_detect * rw.r_detect + (1.0 - p_detect) * rw.r_step;
    if (remaining == 1 || p_detect >= 1.0 - 1e-12) return r;

    std::vector<double> next(probs.size());
    for (size_t i = 0; i < probs.size(); ++i) next[i] = probs[i] * (1.0 - vis[i]);
    const double mass = 1.0 - p_detect;
    for (double& v : next) v /= mass;
    return r + rw.gamma * mass * best_value(inst, moved.robot, next, remaining - 1);
}

// Optimal action set at the root (ties within 1e-6).
inline std::vector<avs::Action> optimal_actions(const Instance& inst) {
    std::vector<double> probs(inst.cands.size());
    double total = 0.0;
    for (int w : inst.weights) total += w;
    for (size_t i = 0; i < probs.size(); ++i) probs[i] = inst.weights[i] / total;

    std::vector<std::pair<avs::Action, double>> qs;
    double best = -1e300;
    for (avs::Action a : legal_actions(inst.model.motion)) {
        const double q = q_value(inst, inst.start, probs, inst.mu, a);
        qs.emplace_back(a, q);
        best = std::max(best, q);
    }
    std::vector<avs::Action> out;
    for (auto [a, q] : qs)
        if (q >= best - 1e-6) out.push_back(a);
    return out;
}

} // namespace micro
