#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "avs/grid_map.hpp"
#include "avs/pose.hpp"
#include "avs/rng.hpp"

namespace avs {

// Ground-truth environment, hidden from the planner: occupancy, the true
// object cell and the start pose. Immutable during an episode.
struct Scene {
    int width = 0;
    int height = 0;
    double resolution = 0.3;
    std::vector<uint8_t> occupancy; // 1 = wall
    int object_cell = -1;
    Pose start_pose;

    int index(int x, int y) const { return y * width + x; }
    int cell_x(int idx) const { return idx % width; }
    int cell_y(int idx) const { return idx / width; }
    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
    bool occupied(int x, int y) const { return occupancy[index(x, y)] != 0; }
    bool occupied(int idx) const { return occupancy[idx] != 0; }

    bool operator==(const Scene&) const = default;
};

struct DetectorModel {
    double true_positive_rate = 1.0;
    double false_positive_rate = 0.0;
    int max_detect_range = 10;
};

// Occupancy report for exactly the ground-truth frustum cells (rays stop at
// the first occupied cell, which is included). Throws if the pose sits on an
// occupied cell.
Reconstruction sense(const Scene& scene, const Pose& pose, const FrustumSpec& spec,
                     int num_headings);

// Ground-truth visibility of the object: within frustum range and fov, ray
// unblocked by occupancy, and within max_range cells.
bool object_visible(const Scene& scene, const Pose& pose, const FrustumSpec& spec,
                    int num_headings, int max_range);

// Detector model: fires with true_positive_rate when the object is visible
// within max_detect_range, false_positive_rate otherwise.
bool detect(const Scene& scene, const Pose& pose, const FrustumSpec& spec,
            const DetectorModel& det, int num_headings, Rng& rng);

// The benchmark success predicate: robot within success_distance meters of
// the object (straight line, cell centers) with the object in view.
bool success_pose(const Scene& scene, const Pose& pose, const FrustumSpec& spec,
                  int num_headings, double success_distance_m);

// Text format, bit-exact round-trip:
//   line 1: "W H resolution"   line 2: "start x y theta"   line 3: "object x y"
//   then H rows of W chars, '#' = occupied, '.' = free.
std::string dump_scene(const Scene& scene);
Scene parse_scene(const std::string& text);

struct SceneGenParams {
    int width = 40;
    int height = 40;
    int num_rooms = 6;
    int corridor_width = 2;
    int min_object_dist_cells = -1; // -1: max(width, height) / 2
    uint64_t seed = 0;
};

// Rooms connected by corridors, fully walled boundary, object placed on a
// free cell at least min_object_dist_cells from the start. The start and
// object cells are guaranteed 4-connected through free space; throws after
// bounded retries when the parameters are infeasible.
Scene generate_scene(const SceneGenParams& params);

} // namespace avs
