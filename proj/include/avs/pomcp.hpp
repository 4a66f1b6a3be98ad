#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "avs/belief.hpp"
#include "avs/pomdp.hpp"

namespace avs {

struct PlannerConfig {
    int num_simulations = 1000; // simulation budget per plan call
    int max_sim_depth = 30;     // actions per simulation
    double ucb_c = 1000.0;      // exploration constant, order of the value range
    double gamma = 0.95;        // mirrors RewardSpec.gamma
    enum class RolloutPolicy { UniformRandom } rollout_policy = RolloutPolicy::UniformRandom;

    // 1 = serial reference tree (bit-reproducible). >1 = OpenMP root-parallel
    // trees merged at the root; statistically, not bitwise, equivalent.
    int num_threads = 1;
};

struct ActionValue {
    double q = 0.0;
    uint32_t n = 0;

    bool operator==(const ActionValue&) const = default;
};

struct PlanResult {
    Action chosen_action = Action::Stop;
    std::vector<SimRecord> records; // one per simulation, in simulation order
    std::array<ActionValue, kNumActions> root_values{};
    int nodes_created = 0;
    double wall_seconds = 0.0;
};

// Online POMCP: UCB1 tree search over action/observation histories with
// particle-seeded simulations and uniform-random rollouts. The map and graph
// stay frozen for the duration of a plan call; a fresh tree is built per call.
// Runs exactly cfg.num_simulations simulations, each on its own rng substream
// derived from (seed, simulation index). Chooses argmax-Q at the root, ties
// broken in fixed action order.
PlanResult plan(const Belief& belief, const Pose& current_pose, const GridMap& map,
                const PoseGraph& graph, const PomdpModel& model, const PlannerConfig& cfg,
                uint64_t seed);

} // namespace avs
