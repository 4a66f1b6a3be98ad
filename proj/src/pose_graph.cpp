#include "avs/pose_graph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace avs {

size_t PoseGraph::edge_count() const {
    size_t n = 0;
    for (const auto& [k, edges] : adj_)
        for (int32_t t : edges)
            if (t >= 0) ++n;
    return n;
}

void PoseGraph::add_node(const Pose& p) {
    auto [it, inserted] = adj_.try_emplace(key(p));
    if (inserted) {
        it->second.fill(-1);
        order_.push_back(p);
    }
}

std::optional<Pose> PoseGraph::edge(const Pose& p, Action a) const {
    auto it = adj_.find(key(p));
    if (it == adj_.end()) return std::nullopt;
    const int32_t t = it->second[(int)a];
    if (t < 0) return std::nullopt;
    return unkey((uint32_t)t);
}

namespace {

// Motion target for one action, or nullopt when the move is invalid on the
// current map (translation onto a non-Seen cell, or Stop).
std::optional<Pose> motion_target(const Pose& p, Action a, const MotionModel& m,
                                  const GridMap& map) {
    switch (a) {
        case Action::TurnLeft: return Pose{p.x, p.y, m.turn_left(p.theta)};
        case Action::TurnRight: return Pose{p.x, p.y, m.turn_right(p.theta)};
        case Action::Forward:
        case Action::Backward: {
            if (a == Action::Backward && !m.backward_enabled) return std::nullopt;
            auto [dx, dy] = m.forward_delta(p.theta);
            if (a == Action::Backward) {
                dx = -dx;
                dy = -dy;
            }
            const int nx = p.x + dx;
            const int ny = p.y + dy;
            if (!map.in_bounds(nx, ny) || map.at(nx, ny) != CellState::Seen) return std::nullopt;
            return Pose{nx, ny, p.theta};
        }
        case Action::Stop: return std::nullopt;
    }
    return std::nullopt;
}

} // namespace

PoseGraph expand(const PoseGraph& graph, const GridMap& map) {
    PoseGraph g = graph;
    std::deque<Pose> queue(g.order_.begin(), g.order_.end());
    while (!queue.empty()) {
        const Pose p = queue.front();
        queue.pop_front();
        for (Action a : kActionOrder) {
            const auto target = motion_target(p, a, g.motion_, map);
            if (!target) {
                g.adj_[g.key(p)][(int)a] = -1;
                continue;
            }
            if (!g.contains(*target)) {
                g.add_node(*target); // may rehash adj_, so no cached references
                queue.push_back(*target);
            }
            g.adj_[g.key(p)][(int)a] = (int32_t)g.key(*target);
        }
    }
    return g;
}

std::optional<std::vector<Action>> shortest_path_to(
    const PoseGraph& graph, const Pose& from, const std::function<bool(const Pose&)>& goal) {
    if (!graph.contains(from)) throw std::invalid_argument("shortest_path: from not in graph");

    struct Link {
        uint32_t parent;
        Action action;
    };
    std::unordered_map<uint32_t, Link> visited;
    const uint32_t start = graph.key(from);
    visited.emplace(start, Link{start, Action::Stop});
    std::deque<uint32_t> queue{start};

    while (!queue.empty()) {
        const uint32_t k = queue.front();
        queue.pop_front();
        const Pose p = graph.unkey(k);
        if (goal(p)) {
            std::vector<Action> path;
            uint32_t cur = k;
            while (cur != start) {
                const Link& link = visited.at(cur);
                path.push_back(link.action);
                cur = link.parent;
            }
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (Action a : kActionOrder) {
            const auto next = graph.edge(p, a);
            if (!next) continue;
            const uint32_t nk = graph.key(*next);
            if (visited.count(nk)) continue;
            visited.emplace(nk, Link{k, a});
            queue.push_back(nk);
        }
    }
    return std::nullopt;
}

std::optional<std::vector<Action>> shortest_path(const PoseGraph& graph, const Pose& from,
                                                 int to_cell) {
    const int w = graph.width();
    return shortest_path_to(graph, from,
                            [&](const Pose& p) { return p.y * w + p.x == to_cell; });
}

std::unordered_map<uint32_t, int> bfs_distances(const PoseGraph& graph, const Pose& from) {
    if (!graph.contains(from)) throw std::invalid_argument("bfs_distances: from not in graph");
    std::unordered_map<uint32_t, int> dist;
    const uint32_t start = graph.key(from);
    dist.emplace(start, 0);
    std::deque<uint32_t> queue{start};
    while (!queue.empty()) {
        const uint32_t k = queue.front();
        queue.pop_front();
        const int d = dist.at(k);
        const Pose p = graph.unkey(k);
        for (Action a : kActionOrder) {
            const auto next = graph.edge(p, a);
            if (!next) continue;
            const uint32_t nk = graph.key(*next);
            if (dist.emplace(nk, d + 1).second) queue.push_back(nk);
        }
    }
    return dist;
}

} // namespace avs
