#include "avs/metrics.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

#include "avs/pose_graph.hpp"

namespace avs {

double compute_sr(const std::vector<EpisodeResult>& results) {
    if (results.empty()) throw std::invalid_argument("compute_sr: empty episode list");
    int ok = 0;
    for (const auto& r : results) ok += r.success ? 1 : 0;
    return (double)ok / (double)results.size();
}

std::optional<double> compute_apl(const std::vector<EpisodeResult>& results) {
    double sum = 0.0;
    int n = 0;
    for (const auto& r : results)
        if (r.success) {
            sum += r.steps_taken;
            ++n;
        }
    if (n == 0) return std::nullopt;
    return sum / n;
}

namespace {

double path_ratio(const EpisodeResult& r) {
    if (r.steps_taken <= 0) return r.shortest_path_len == 0 ? 1.0 : 0.0;
    return (double)r.shortest_path_len / (double)r.steps_taken;
}

} // namespace

std::optional<std::pair<double, double>> compute_asppl(const std::vector<EpisodeResult>& results) {
    std::vector<double> ratios;
    for (const auto& r : results)
        if (r.success) ratios.push_back(path_ratio(r));
    if (ratios.empty()) return std::nullopt;
    double mean = 0.0;
    for (double v : ratios) mean += v;
    mean /= ratios.size();
    double var = 0.0;
    for (double v : ratios) var += (v - mean) * (v - mean);
    var /= ratios.size(); // population std, matching the reported "(std)" columns
    return std::pair{mean, std::sqrt(var)};
}

double compute_spl(const std::vector<EpisodeResult>& results) {
    if (results.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& r : results) {
        if (!r.success) continue;
        const double denom = (double)std::max(r.steps_taken, r.shortest_path_len);
        sum += denom <= 0.0 ? 1.0 : (double)r.shortest_path_len / denom;
    }
    return sum / (double)results.size();
}

double geodesic_distance_m(const Scene& scene, int cell_a, int cell_b) {
    const double euclid = std::hypot((double)(scene.cell_x(cell_a) - scene.cell_x(cell_b)),
                                     (double)(scene.cell_y(cell_a) - scene.cell_y(cell_b))) *
                          scene.resolution;
    if (cell_a == cell_b) return 0.0;
    if (scene.occupied(cell_a) || scene.occupied(cell_b)) return euclid;
    std::vector<int> dist(scene.occupancy.size(), -1);
    std::deque<int> queue{cell_a};
    dist[cell_a] = 0;
    while (!queue.empty()) {
        const int c = queue.front();
        queue.pop_front();
        if (c == cell_b) return dist[c] * scene.resolution;
        const int x = scene.cell_x(c), y = scene.cell_y(c);
        const int nb[4][2] = {{x - 1, y}, {x + 1, y}, {x, y - 1}, {x, y + 1}};
        for (auto [nx, ny] : nb) {
            if (!scene.in_bounds(nx, ny) || scene.occupied(nx, ny)) continue;
            const int n = scene.index(nx, ny);
            if (dist[n] < 0) {
                dist[n] = dist[c] + 1;
                queue.push_back(n);
            }
        }
    }
    return euclid; // disconnected
}

double compute_dts(const std::vector<EpisodeResult>& results,
                   const std::vector<const Scene*>& scenes, double d_s, bool geodesic) {
    if (results.empty()) return 0.0;
    if (results.size() != scenes.size())
        throw std::invalid_argument("compute_dts: results/scenes size mismatch");
    double sum = 0.0;
    for (size_t i = 0; i < results.size(); ++i) {
        const Scene& s = *scenes[i];
        const Pose final = results[i].path.back();
        const int cell = s.index(final.x, final.y);
        const double d = geodesic ? geodesic_distance_m(s, cell, s.object_cell)
                                  : std::hypot((double)(final.x - s.cell_x(s.object_cell)),
                                               (double)(final.y - s.cell_y(s.object_cell))) *
                                        s.resolution;
        sum += std::max(d - d_s, 0.0);
    }
    return sum / (double)results.size();
}

MetricSummary summarize(const std::vector<EpisodeResult>& results,
                        const std::vector<const Scene*>& scenes, double d_s, bool geodesic) {
    MetricSummary m;
    m.sr = compute_sr(results);
    m.apl = compute_apl(results);
    if (auto asppl = compute_asppl(results)) {
        m.asppl_mean = asppl->first;
        m.asppl_std = asppl->second;
    }
    m.spl = compute_spl(results);
    m.dts_mean = compute_dts(results, scenes, d_s, geodesic);
    double t = 0.0;
    for (const auto& r : results) t += r.wall_time_per_step;
    m.runtime_per_step_mean = t / (double)results.size();
    return m;
}

int optimal_path_length(const Scene& scene, const MotionModel& motion, const FrustumSpec& spec,
                        double success_distance_m) {
    // Full-knowledge map: every free cell Seen, every wall an Occluder.
    std::string rows;
    for (int y = 0; y < scene.height; ++y) {
        for (int x = 0; x < scene.width; ++x) rows += scene.occupied(x, y) ? '#' : '.';
        rows += '\n';
    }
    const GridMap full = grid_from_ascii(rows, scene.resolution);

    PoseGraph seed(scene.width, scene.height, motion);
    seed.add_node(scene.start_pose);
    const PoseGraph g = expand(seed, full);

    const auto path = shortest_path_to(g, scene.start_pose, [&](const Pose& p) {
        return success_pose(scene, p, spec, motion.num_headings, success_distance_m);
    });
    return path ? (int)path->size() : -1;
}

} // namespace avs
