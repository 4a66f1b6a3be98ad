#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "avs/belief.hpp"
#include "avs/pomcp.hpp"
#include "avs/scene.hpp"

namespace avs {

enum class ReinvigorationStrategy { TwoStep, Original };
enum class TerminationReason { Reached, Budget, FalseAlarmExhausted };
enum class AgentKind { Pompp, RandomWalk, GreedyFrontier };

struct EpisodeConfig {
    int max_episode_steps = 125;
    double success_distance = 1.0; // meters
    FrustumSpec frustum;
    PlannerConfig planner;
    RewardSpec rewards;
    MotionModel motion;
    ReinvigorationStrategy reinvigoration = ReinvigorationStrategy::TwoStep;
    double new_fraction = 0.2;
    int particle_count = 1200;
    DetectorModel detector;
    int false_alarm_patience = 3; // consecutive misses that abort an approach
    int max_false_alarms = 25;
    uint64_t seed = 0;
};

struct EpisodeResult {
    bool success = false;
    int steps_taken = 0;
    std::vector<Pose> path; // start pose plus one entry per real move
    int shortest_path_len = 0;
    double wall_time_per_step = 0.0; // mean plan wall time, seconds
    TerminationReason termination_reason = TerminationReason::Budget;
    int false_alarms = 0;

    bool operator==(const EpisodeResult&) const = default;
};

// Outcome equality ignoring wall-clock timing; what determinism tests compare.
bool same_outcome(const EpisodeResult& a, const EpisodeResult& b);

std::string termination_name(TerminationReason r);
std::string agent_name(AgentKind k);

// The full search episode: sense, map update, graph/state-space growth,
// belief reinvigoration, plan, move, detect, with the approach phase taking
// over after a detection. When `log` is non-null it receives the episode
// JSON log (schema in README).
EpisodeResult run_episode(const Scene& scene, const EpisodeConfig& cfg,
                          nlohmann::json* log = nullptr);

// Baselines sharing the detection/approach/success machinery.
EpisodeResult run_random_walk(const Scene& scene, const EpisodeConfig& cfg,
                              nlohmann::json* log = nullptr);
EpisodeResult run_greedy_frontier(const Scene& scene, const EpisodeConfig& cfg,
                                  nlohmann::json* log = nullptr);

EpisodeResult run_agent(AgentKind kind, const Scene& scene, const EpisodeConfig& cfg,
                        nlohmann::json* log = nullptr);

} // namespace avs
