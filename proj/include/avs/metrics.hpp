#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "avs/agent.hpp"
#include "avs/scene.hpp"

namespace avs {

struct MetricSummary {
    double sr = 0.0;
    std::optional<double> apl;
    std::optional<double> asppl_mean;
    std::optional<double> asppl_std;
    double spl = 0.0;
    double dts_mean = 0.0;
    double runtime_per_step_mean = 0.0;

    bool operator==(const MetricSummary&) const = default;
};

// Success rate over all episodes. Throws on an empty list.
double compute_sr(const std::vector<EpisodeResult>& results);

// Mean steps over successful episodes only; absent without successes.
std::optional<double> compute_apl(const std::vector<EpisodeResult>& results);

// Mean and population std of shortest/taken over successful episodes.
std::optional<std::pair<double, double>> compute_asppl(const std::vector<EpisodeResult>& results);

// (1/N) sum S_i * l_i / max(l_i^r, l_i).
double compute_spl(const std::vector<EpisodeResult>& results);

// Mean over all episodes of max(dist(final cell, object cell) - d_s, 0),
// meters. Geodesic over ground-truth free cells by default; straight-line
// when geodesic = false. `scenes` runs parallel to `results`.
double compute_dts(const std::vector<EpisodeResult>& results,
                   const std::vector<const Scene*>& scenes, double d_s, bool geodesic = true);

MetricSummary summarize(const std::vector<EpisodeResult>& results,
                        const std::vector<const Scene*>& scenes, double d_s,
                        bool geodesic = true);

// Shortest-path distance in meters between two free cells (4-connected BFS
// times resolution); straight-line fallback when disconnected.
double geodesic_distance_m(const Scene& scene, int cell_a, int cell_b);

// Length of the optimal action sequence from the start pose to the nearest
// success-qualifying pose on the full ground-truth pose graph; -1 when no
// such pose is reachable. The independent reference for shortest_path_len.
int optimal_path_length(const Scene& scene, const MotionModel& motion, const FrustumSpec& spec,
                        double success_distance_m);

} // namespace avs
