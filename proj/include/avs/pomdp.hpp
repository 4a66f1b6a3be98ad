#pragma once

#include "avs/actions.hpp"
#include "avs/grid_map.hpp"
#include "avs/pose.hpp"
#include "avs/pose_graph.hpp"

namespace avs {

// Binary observation: was the target seen.
struct Observation {
    bool detected = false;
};

// One hidden state: robot pose plus the hypothesized object cell.
struct AvsState {
    Pose robot;
    int object_cell = -1;

    bool operator==(const AvsState&) const = default;
};

struct RewardSpec {
    double r_detect = 1000.0;
    double r_step = -1.0;
    double gamma = 0.95;
};

// The full simulation model handed to the planner. Everything here is frozen
// during a plan call; all operations below are pure.
struct PomdpModel {
    RewardSpec rewards;
    FrustumSpec frustum;
    MotionModel motion;
};

// Deterministic pose dynamics over graph edges; a missing edge means the
// robot stays. The object never moves.
inline AvsState transition(const AvsState& state, Action action, const PoseGraph& graph) {
    const auto next = graph.edge(state.robot, action);
    return AvsState{next ? *next : state.robot, state.object_cell};
}

// Observation model: the visibility function on the knowledge map.
inline Observation observe(const AvsState& state, const GridMap& map, const FrustumSpec& spec,
                           int num_headings) {
    return Observation{visibility(map, state.robot, state.object_cell, spec, num_headings) == 1};
}

inline double reward(const AvsState& /*prev*/, Action /*action*/, Observation obs,
                     const RewardSpec& spec) {
    return obs.detected ? spec.r_detect : spec.r_step;
}

// Legal action set under the motion config, in fixed order.
inline std::vector<Action> legal_actions(const MotionModel& motion) {
    std::vector<Action> out;
    for (Action a : kActionOrder) {
        if (a == Action::Backward && !motion.backward_enabled) continue;
        out.push_back(a);
    }
    return out;
}

} // namespace avs
