#include "avs/scene.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace avs {

Reconstruction sense(const Scene& scene, const Pose& pose, const FrustumSpec& spec,
                     int num_headings) {
    if (!scene.in_bounds(pose.x, pose.y) || scene.occupied(pose.x, pose.y))
        throw std::logic_error("sense: pose not on a free cell");
    Reconstruction rec;
    for (int idx : frustum_cells_if(pose, spec, scene.width, scene.height, num_headings,
                                    [&](int x, int y) { return scene.occupied(x, y); }))
        rec.observed.emplace_back(idx, scene.occupied(idx));
    return rec;
}

bool object_visible(const Scene& scene, const Pose& pose, const FrustumSpec& spec,
                    int num_headings, int max_range) {
    const int ox = scene.cell_x(scene.object_cell);
    const int oy = scene.cell_y(scene.object_cell);
    if (!cell_in_range(pose.x, pose.y, ox, oy, std::min(spec.range_cells, max_range)))
        return false;
    if (!cell_in_fov(pose, ox, oy, spec.fov_degrees, num_headings)) return false;
    return !segment_blocked(pose.x, pose.y, ox, oy,
                            [&](int x, int y) { return scene.occupied(x, y); });
}

bool detect(const Scene& scene, const Pose& pose, const FrustumSpec& spec,
            const DetectorModel& det, int num_headings, Rng& rng) {
    const bool visible = object_visible(scene, pose, spec, num_headings, det.max_detect_range);
    const double p = visible ? det.true_positive_rate : det.false_positive_rate;
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return rng.bernoulli(p);
}

bool success_pose(const Scene& scene, const Pose& pose, const FrustumSpec& spec,
                  int num_headings, double success_distance_m) {
    const double dx = pose.x - scene.cell_x(scene.object_cell);
    const double dy = pose.y - scene.cell_y(scene.object_cell);
    const double dist_m = std::sqrt(dx * dx + dy * dy) * scene.resolution;
    if (dist_m > success_distance_m + 1e-9) return false;
    return object_visible(scene, pose, spec, num_headings, spec.range_cells);
}

std::string dump_scene(const Scene& scene) {
    char head[96];
    std::snprintf(head, sizeof(head), "%d %d %.17g\n", scene.width, scene.height,
                  scene.resolution);
    std::string out = head;
    std::snprintf(head, sizeof(head), "start %d %d %d\n", scene.start_pose.x, scene.start_pose.y,
                  scene.start_pose.theta);
    out += head;
    std::snprintf(head, sizeof(head), "object %d %d\n", scene.cell_x(scene.object_cell),
                  scene.cell_y(scene.object_cell));
    out += head;
    for (int y = 0; y < scene.height; ++y) {
        for (int x = 0; x < scene.width; ++x) out += scene.occupied(x, y) ? '#' : '.';
        out += '\n';
    }
    return out;
}

Scene parse_scene(const std::string& text) {
    std::istringstream in(text);
    Scene s;
    std::string tag;
    int ox = 0, oy = 0;
    if (!(in >> s.width >> s.height >> s.resolution))
        throw std::invalid_argument("parse_scene: bad header");
    if (!(in >> tag >> s.start_pose.x >> s.start_pose.y >> s.start_pose.theta) || tag != "start")
        throw std::invalid_argument("parse_scene: bad start line");
    if (!(in >> tag >> ox >> oy) || tag != "object")
        throw std::invalid_argument("parse_scene: bad object line");
    if (s.width < 1 || s.height < 1) throw std::invalid_argument("parse_scene: bad dimensions");
    s.object_cell = oy * s.width + ox;
    s.occupancy.assign((size_t)s.width * s.height, 0);
    std::string row;
    for (int y = 0; y < s.height; ++y) {
        if (!(in >> row) || (int)row.size() != s.width)
            throw std::invalid_argument("parse_scene: bad grid row");
        for (int x = 0; x < s.width; ++x) {
            if (row[x] == '#')
                s.occupancy[s.index(x, y)] = 1;
            else if (row[x] != '.')
                throw std::invalid_argument("parse_scene: bad grid character");
        }
    }
    return s;
}

namespace {

struct Room {
    int x, y, w, h;
    int cx() const { return x + w / 2; }
    int cy() const { return y + h / 2; }
};

void carve(Scene& s, int x0, int y0, int x1, int y1) {
    x0 = std::clamp(x0, 1, s.width - 2);
    x1 = std::clamp(x1, 1, s.width - 2);
    y0 = std::clamp(y0, 1, s.height - 2);
    y1 = std::clamp(y1, 1, s.height - 2);
    for (int y = std::min(y0, y1); y <= std::max(y0, y1); ++y)
        for (int x = std::min(x0, x1); x <= std::max(x0, x1); ++x)
            s.occupancy[s.index(x, y)] = 0;
}

// free cells 4-connected to `from`
std::vector<uint8_t> flood_free(const Scene& s, int from) {
    std::vector<uint8_t> seen(s.occupancy.size(), 0);
    if (s.occupied(from)) return seen;
    std::deque<int> queue{from};
    seen[from] = 1;
    while (!queue.empty()) {
        const int c = queue.front();
        queue.pop_front();
        const int x = s.cell_x(c), y = s.cell_y(c);
        const int nb[4][2] = {{x - 1, y}, {x + 1, y}, {x, y - 1}, {x, y + 1}};
        for (auto [nx, ny] : nb) {
            if (!s.in_bounds(nx, ny) || s.occupied(nx, ny)) continue;
            const int n = s.index(nx, ny);
            if (!seen[n]) {
                seen[n] = 1;
                queue.push_back(n);
            }
        }
    }
    return seen;
}

bool try_generate(const SceneGenParams& p, uint64_t seed, Scene& out) {
    Rng rng(seed);
    Scene s;
    s.width = p.width;
    s.height = p.height;
    s.occupancy.assign((size_t)p.width * p.height, 1);

    std::vector<Room> rooms;
    for (int i = 0; i < p.num_rooms; ++i) {
        const int max_w = std::max(6, p.width * 2 / 5);
        const int max_h = std::max(6, p.height * 2 / 5);
        Room r;
        r.w = 5 + rng.uniform_int(std::max(1, max_w - 4));
        r.h = 5 + rng.uniform_int(std::max(1, max_h - 4));
        r.x = 1 + rng.uniform_int(std::max(1, p.width - r.w - 2));
        r.y = 1 + rng.uniform_int(std::max(1, p.height - r.h - 2));
        rooms.push_back(r);
        carve(s, r.x, r.y, r.x + r.w - 1, r.y + r.h - 1);
    }

    // L-shaped corridors between consecutive room centers
    const int cw = std::max(1, p.corridor_width);
    for (size_t i = 0; i + 1 < rooms.size(); ++i) {
        const Room& a = rooms[i];
        const Room& b = rooms[i + 1];
        carve(s, std::min(a.cx(), b.cx()), a.cy(), std::max(a.cx(), b.cx()), a.cy() + cw - 1);
        carve(s, b.cx(), std::min(a.cy(), b.cy()), b.cx() + cw - 1, std::max(a.cy(), b.cy()));
    }

    std::vector<int> free_cells;
    for (int i = 0; i < (int)s.occupancy.size(); ++i)
        if (!s.occupied(i)) free_cells.push_back(i);
    if (free_cells.size() < 4) return false;

    const int start_cell = free_cells[rng.uniform_int((int)free_cells.size())];
    s.start_pose = Pose{s.cell_x(start_cell), s.cell_y(start_cell), rng.uniform_int(4)};

    const auto reachable = flood_free(s, start_cell);
    const int min_dist = p.min_object_dist_cells >= 0 ? p.min_object_dist_cells
                                                      : std::max(p.width, p.height) / 2;
    std::vector<int> goals;
    for (int c : free_cells) {
        if (!reachable[c] || c == start_cell) continue;
        const double dx = s.cell_x(c) - s.start_pose.x;
        const double dy = s.cell_y(c) - s.start_pose.y;
        if (dx * dx + dy * dy >= (double)min_dist * min_dist) goals.push_back(c);
    }
    if (goals.empty()) return false;
    s.object_cell = goals[rng.uniform_int((int)goals.size())];
    out = s;
    return true;
}

} // namespace

Scene generate_scene(const SceneGenParams& params) {
    if (params.width < 8 || params.height < 8)
        throw std::invalid_argument("generate_scene: dimensions must be >= 8");
    if (params.num_rooms < 1) throw std::invalid_argument("generate_scene: num_rooms must be >= 1");
    Scene out;
    for (int attempt = 0; attempt < 64; ++attempt) {
        if (try_generate(params, Rng::derive(params.seed, (uint64_t)attempt).next_u64(), out))
            return out;
    }
    throw std::runtime_error("generate_scene: failed after bounded retries");
}

} // namespace avs
