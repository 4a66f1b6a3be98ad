#pragma once

#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "avs/actions.hpp"
#include "avs/grid_map.hpp"
#include "avs/pose.hpp"

namespace avs {

// Reachability graph over discovered poses. Nodes are poses, edges are
// labeled with the single action that traverses them. Snapshots are
// immutable per time step: expand() returns a new graph value.
class PoseGraph {
  public:
    PoseGraph(int width, int height, MotionModel motion)
        : width_(width), height_(height), motion_(motion) {}

    const MotionModel& motion() const { return motion_; }
    int width() const { return width_; }
    int height() const { return height_; }

    bool contains(const Pose& p) const { return adj_.count(key(p)) != 0; }
    size_t node_count() const { return order_.size(); }
    size_t edge_count() const;

    // Nodes in insertion order (deterministic iteration).
    const std::vector<Pose>& nodes() const { return order_; }

    void add_node(const Pose& p);

    // Edge target for (pose, action); nullopt when the edge does not exist.
    std::optional<Pose> edge(const Pose& p, Action a) const;

    // Logical graph equality (node insertion order excluded).
    bool operator==(const PoseGraph& other) const {
        return width_ == other.width_ && height_ == other.height_ && motion_ == other.motion_ &&
               adj_ == other.adj_;
    }

    uint32_t key(const Pose& p) const {
        return (uint32_t)((p.y * width_ + p.x) * motion_.num_headings + p.theta);
    }
    Pose unkey(uint32_t k) const {
        const int h = motion_.num_headings;
        return Pose{(int)(k / h) % width_, (int)(k / h) / width_, (int)(k % h)};
    }

  private:
    friend PoseGraph expand(const PoseGraph&, const GridMap&);

    int width_;
    int height_;
    MotionModel motion_;
    std::unordered_map<uint32_t, std::array<int32_t, kNumActions>> adj_;
    std::vector<Pose> order_;
};

// Reachability closure under the motion model: rotations are always valid at
// a node, translations require the target cell to be Seen. Superset of the
// input graph; idempotent at a fixed map.
PoseGraph expand(const PoseGraph& graph, const GridMap& map);

// Minimum-length action sequence from `from` to the first pose satisfying
// `goal`, BFS over unit-cost edges, neighbor expansion in fixed action order.
std::optional<std::vector<Action>> shortest_path_to(const PoseGraph& graph, const Pose& from,
                                                    const std::function<bool(const Pose&)>& goal);

// Shortest path to any pose whose cell equals to_cell (any heading).
std::optional<std::vector<Action>> shortest_path(const PoseGraph& graph, const Pose& from,
                                                 int to_cell);

// BFS distance (action count) from `from` to every reachable pose, keyed by
// graph.key(). Poses absent from the result are unreachable.
std::unordered_map<uint32_t, int> bfs_distances(const PoseGraph& graph, const Pose& from);

} // namespace avs
