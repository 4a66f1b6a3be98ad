#include "avs/grid_map.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace avs {

GridMap::GridMap(int width, int height, double resolution)
    : width_(width), height_(height), resolution_(resolution) {
    if (width < 1 || height < 1) throw std::invalid_argument("GridMap: dimensions must be >= 1");
    if (resolution <= 0.0) throw std::invalid_argument("GridMap: resolution must be > 0");
    cells_.assign((size_t)width * height, CellState::Unknown);
}

namespace {

long long floor_div(long long n, long long d) {
    long long q = n / d;
    long long r = n % d;
    if (r != 0 && ((r < 0) != (d < 0))) --q;
    return q;
}

} // namespace

void for_cells_between(int ax, int ay, int bx, int by,
                       const std::function<void(int, int)>& visit) {
    // Canonical endpoint order makes the traced set symmetric in (a, b).
    if (std::pair(ay, ax) > std::pair(by, bx)) {
        std::swap(ax, bx);
        std::swap(ay, by);
    }
    const long long dx = bx - ax;
    const long long dy = by - ay; // >= 0 after canonicalization
    const long long adx = std::llabs(dx);
    if (adx >= dy) {
        if (adx <= 1) return;
        const int sx = dx > 0 ? 1 : -1;
        for (long long i = 1; i < adx; ++i) {
            const int x = ax + (int)(sx * i);
            const int y = ay + (int)floor_div(2 * i * dy + adx, 2 * adx);
            visit(x, y);
        }
    } else {
        for (long long j = 1; j < dy; ++j) {
            const int y = ay + (int)j;
            const int x = ax + (int)floor_div(2 * j * dx + dy, 2 * dy);
            visit(x, y);
        }
    }
}

bool segment_blocked(int ax, int ay, int bx, int by,
                     const std::function<bool(int, int)>& blocked) {
    bool hit = false;
    for_cells_between(ax, ay, bx, by, [&](int x, int y) {
        if (!hit && blocked(x, y)) hit = true;
    });
    return hit;
}

bool cell_in_range(int px, int py, int cx, int cy, int range_cells) {
    const double dx = cx - px;
    const double dy = cy - py;
    const double r = range_cells + 1e-9;
    return dx * dx + dy * dy <= r * r;
}

bool cell_in_fov(const Pose& pose, int cx, int cy, double fov_degrees, int num_headings) {
    if (cx == pose.x && cy == pose.y) return true;
    const double heading = pose.theta * 360.0 / num_headings;
    const double to_cell = std::atan2((double)(cy - pose.y), (double)(cx - pose.x)) * 180.0 / M_PI;
    double diff = std::fmod(to_cell - heading, 360.0);
    if (diff > 180.0) diff -= 360.0;
    if (diff < -180.0) diff += 360.0;
    return std::fabs(diff) <= fov_degrees / 2.0 + 1e-9;
}

std::vector<int> frustum_cells_if(const Pose& pose, const FrustumSpec& spec, int width,
                                  int height, int num_headings,
                                  const std::function<bool(int, int)>& blocked) {
    if (pose.x < 0 || pose.x >= width || pose.y < 0 || pose.y >= height)
        throw std::invalid_argument("frustum_cells: pose out of bounds");
    std::vector<int> out;
    const int r = spec.range_cells;
    const int x0 = std::max(0, pose.x - r);
    const int x1 = std::min(width - 1, pose.x + r);
    const int y0 = std::max(0, pose.y - r);
    const int y1 = std::min(height - 1, pose.y + r);
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            if (!cell_in_range(pose.x, pose.y, x, y, r)) continue;
            if (!cell_in_fov(pose, x, y, spec.fov_degrees, num_headings)) continue;
            if (segment_blocked(pose.x, pose.y, x, y, blocked)) continue;
            out.push_back(y * width + x);
        }
    }
    return out;
}

std::vector<int> frustum_cells(const Pose& pose, const FrustumSpec& spec, const GridMap& map,
                               int num_headings) {
    return frustum_cells_if(pose, spec, map.width(), map.height(), num_headings,
                            [&](int x, int y) { return map.at(x, y) == CellState::Occluder; });
}

GridMap map_update(const GridMap& map, const Pose& pose, const Reconstruction& rec,
                   const FrustumSpec& spec, int num_headings) {
    if (!map.in_bounds(pose)) throw std::invalid_argument("map_update: pose out of bounds");

    std::vector<uint8_t> in_frustum(map.cell_count(), 0);
    for (int idx : frustum_cells(pose, spec, map, num_headings)) in_frustum[idx] = 1;

    GridMap next = map;
    for (const auto& [idx, occupied] : rec.observed) {
        if (idx < 0 || idx >= map.cell_count() || !in_frustum[idx])
            throw std::invalid_argument("map_update: reconstruction cell outside frustum");
        CellState cur = next.cells_[idx];
        if (cur == CellState::Seen || cur == CellState::Occluder) continue; // knowledge is monotone
        next.cells_[idx] = occupied ? CellState::Occluder : CellState::Seen;
    }

    // Frontier is re-derived from scratch: unknown-content cells bordering a
    // Seen cell are Candidate, the rest stay Unknown.
    const int w = next.width_;
    const int h = next.height_;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            CellState& c = next.cells_[next.index(x, y)];
            if (c == CellState::Seen || c == CellState::Occluder) continue;
            const bool frontier =
                (x > 0 && next.at(x - 1, y) == CellState::Seen) ||
                (x + 1 < w && next.at(x + 1, y) == CellState::Seen) ||
                (y > 0 && next.at(x, y - 1) == CellState::Seen) ||
                (y + 1 < h && next.at(x, y + 1) == CellState::Seen);
            c = frontier ? CellState::Candidate : CellState::Unknown;
        }
    }
    return next;
}

std::vector<int> candidates(const GridMap& map) {
    std::vector<int> out;
    for (int i = 0; i < map.cell_count(); ++i)
        if (map.at(i) == CellState::Candidate) out.push_back(i);
    return out;
}

int visibility(const GridMap& map, const Pose& pose, int cell, const FrustumSpec& spec,
               int num_headings) {
    if (!map.in_bounds(pose)) throw std::invalid_argument("visibility: pose out of bounds");
    if (cell < 0 || cell >= map.cell_count())
        throw std::invalid_argument("visibility: cell out of bounds");
    const int cx = map.cell_x(cell);
    const int cy = map.cell_y(cell);
    if (!cell_in_range(pose.x, pose.y, cx, cy, spec.range_cells)) return 0;
    if (!cell_in_fov(pose, cx, cy, spec.fov_degrees, num_headings)) return 0;
    if (segment_blocked(pose.x, pose.y, cx, cy,
                        [&](int x, int y) { return map.at(x, y) == CellState::Occluder; }))
        return 0;
    return 1;
}

std::string ascii_dump(const GridMap& map) {
    static constexpr char kChars[] = {'#', '.', 'F', '?'};
    std::string out;
    out.reserve((size_t)(map.width() + 1) * map.height());
    for (int y = 0; y < map.height(); ++y) {
        for (int x = 0; x < map.width(); ++x) out += kChars[(int)map.at(x, y)];
        out += '\n';
    }
    return out;
}

GridMap grid_from_ascii(const std::string& text, double resolution) {
    std::vector<std::string> rows;
    std::string cur;
    for (char ch : text) {
        if (ch == '\n') {
            if (!cur.empty()) rows.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) rows.push_back(cur);
    if (rows.empty()) throw std::invalid_argument("grid_from_ascii: empty text");

    GridMap map((int)rows[0].size(), (int)rows.size(), resolution);
    for (int y = 0; y < map.height(); ++y) {
        if ((int)rows[y].size() != map.width())
            throw std::invalid_argument("grid_from_ascii: ragged rows");
        for (int x = 0; x < map.width(); ++x) {
            CellState s;
            switch (rows[y][x]) {
                case '#': s = CellState::Occluder; break;
                case '.': s = CellState::Seen; break;
                case 'F': s = CellState::Candidate; break;
                case '?': s = CellState::Unknown; break;
                default: throw std::invalid_argument("grid_from_ascii: bad character");
            }
            map.cells_[map.index(x, y)] = s;
        }
    }
    return map;
}

} // namespace avs
