#pragma once

#include <cmath>
#include <compare>
#include <utility>

namespace avs {

// Discrete robot pose: grid cell (x = column, y = row) plus an orientation
// index theta in [0, num_headings). One heading step = 360/num_headings deg.
struct Pose {
    int x = 0;
    int y = 0;
    int theta = 0;

    auto operator<=>(const Pose&) const = default;
};

struct MotionModel {
    int num_headings = 4;
    bool backward_enabled = true;

    double heading_degrees(int theta) const { return theta * 360.0 / num_headings; }

    // Unit translation for a heading: nearest cell along the heading vector.
    // The 1e-9 nudge keeps exact half ties (e.g. sin 30 deg) rounding away
    // from zero regardless of libm rounding.
    std::pair<int, int> forward_delta(int theta) const {
        const double rad = heading_degrees(theta) * M_PI / 180.0;
        const double c = std::cos(rad);
        const double s = std::sin(rad);
        const int dx = (int)std::llround(c + (c >= 0 ? 1e-9 : -1e-9));
        const int dy = (int)std::llround(s + (s >= 0 ? 1e-9 : -1e-9));
        return {dx, dy};
    }

    int turn_left(int theta) const { return (theta + 1) % num_headings; }
    int turn_right(int theta) const { return (theta + num_headings - 1) % num_headings; }

    bool operator==(const MotionModel&) const = default;
};

} // namespace avs
