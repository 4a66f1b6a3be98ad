#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace avs {

enum class Action : uint8_t { Forward = 0, Backward, TurnLeft, TurnRight, Stop };

inline constexpr int kNumActions = 5;

// Fixed order used everywhere ties are broken (UCB, root argmax, BFS).
inline constexpr std::array<Action, kNumActions> kActionOrder = {
    Action::Forward, Action::Backward, Action::TurnLeft, Action::TurnRight, Action::Stop};

constexpr std::string_view action_name(Action a) {
    switch (a) {
        case Action::Forward: return "Forward";
        case Action::Backward: return "Backward";
        case Action::TurnLeft: return "Turn_Left";
        case Action::TurnRight: return "Turn_Right";
        case Action::Stop: return "Stop";
    }
    return "?";
}

} // namespace avs
