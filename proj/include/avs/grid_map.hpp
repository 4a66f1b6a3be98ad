#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "avs/pose.hpp"

namespace avs {

enum class CellState : uint8_t { Occluder = 0, Seen, Candidate, Unknown };

// Sensing geometry: field of view half-opens around the pose heading,
// range is a Euclidean cell distance. The paper-level camera abstraction.
struct FrustumSpec {
    double fov_degrees = 90.0;
    int range_cells = 10;
};

// Occupancy slice restricted to one sensing frustum: (cell index, occupied).
struct Reconstruction {
    std::vector<std::pair<int, bool>> observed;
};

// The robot's partial knowledge map. Immutable after construction:
// map_update returns a new value, so snapshots are freely shareable
// across simulation workers.
class GridMap {
  public:
    GridMap(int width, int height, double resolution);

    static GridMap new_unknown(int width, int height, double resolution) {
        return GridMap(width, height, resolution);
    }

    int width() const { return width_; }
    int height() const { return height_; }
    double resolution() const { return resolution_; }
    int cell_count() const { return width_ * height_; }

    int index(int x, int y) const { return y * width_ + x; }
    int cell_x(int idx) const { return idx % width_; }
    int cell_y(int idx) const { return idx / width_; }
    bool in_bounds(int x, int y) const { return x >= 0 && x < width_ && y >= 0 && y < height_; }
    bool in_bounds(const Pose& p) const { return in_bounds(p.x, p.y); }

    CellState at(int idx) const { return cells_[idx]; }
    CellState at(int x, int y) const { return cells_[index(x, y)]; }

    bool operator==(const GridMap&) const = default;

    friend GridMap map_update(const GridMap&, const Pose&, const Reconstruction&,
                              const FrustumSpec&, int num_headings);
    friend GridMap grid_from_ascii(const std::string&, double);

  private:
    int width_;
    int height_;
    double resolution_;
    std::vector<CellState> cells_;
};

// --- segment geometry -------------------------------------------------------

// Visits the cells strictly between a and b on the rounded-line (Bresenham)
// segment joining their centers. Endpoints are canonically ordered first, so
// the visited set is symmetric in (a, b). Midpoint ties round toward the
// larger coordinate.
void for_cells_between(int ax, int ay, int bx, int by,
                       const std::function<void(int x, int y)>& visit);

// True if some cell strictly between a and b satisfies `blocked`.
bool segment_blocked(int ax, int ay, int bx, int by,
                     const std::function<bool(int x, int y)>& blocked);

// Range test: center-to-center Euclidean distance <= range_cells + 1e-9.
bool cell_in_range(int px, int py, int cx, int cy, int range_cells);

// Field-of-view test against the exact heading angle; the pose's own cell
// always passes.
bool cell_in_fov(const Pose& pose, int cx, int cy, double fov_degrees, int num_headings);

// --- operations --------------------------------------------------------------

// Frustum against an arbitrary blocking predicate (knowledge Occluders when
// sensing on the map, ground-truth occupancy when the simulator calls it).
// A blocked cell terminates its ray but is itself included.
std::vector<int> frustum_cells_if(const Pose& pose, const FrustumSpec& spec, int width,
                                  int height, int num_headings,
                                  const std::function<bool(int x, int y)>& blocked);

// Frustum on the knowledge map: Occluder cells block.
std::vector<int> frustum_cells(const Pose& pose, const FrustumSpec& spec, const GridMap& map,
                               int num_headings);

// One sensing step: frustum cells reported unoccupied become Seen, occupied
// become Occluder; the Candidate frontier is then recomputed from scratch.
// Seen/Occluder cells never change state. Throws if rec lists a cell outside
// the frustum of `pose`.
GridMap map_update(const GridMap& map, const Pose& pose, const Reconstruction& rec,
                   const FrustumSpec& spec, int num_headings);

// All cells currently in state Candidate, ascending index order.
std::vector<int> candidates(const GridMap& map);

// 1 iff `cell` is within range and fov of `pose` and no Occluder lies strictly
// between them. Unknown/Candidate/Seen cells do not block.
int visibility(const GridMap& map, const Pose& pose, int cell, const FrustumSpec& spec,
               int num_headings);

// '#'=Occluder '.'=Seen 'F'=Candidate '?'=Unknown, rows newline-separated.
std::string ascii_dump(const GridMap& map);

// Builds a map from the ascii_dump format. Fixture helper.
GridMap grid_from_ascii(const std::string& text, double resolution);

} // namespace avs
