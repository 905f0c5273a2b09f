#include "quadland/task.hpp"

#include <array>

namespace quadland {

namespace {

constexpr std::array<std::string_view, 5> kLandingObs = {"x_rel", "z_rel", "vx",
                                                         "vz", "pitch"};
constexpr std::array<std::string_view, 2> kLandingAct = {"pwm", "pitch_cmd"};
constexpr std::array<std::string_view, 8> kSetpointObs = {
    "x_rel", "y_rel", "z_rel", "vx", "vy", "vz", "roll", "pitch"};
constexpr std::array<std::string_view, 3> kSetpointAct = {"pwm", "roll_cmd",
                                                          "pitch_cmd"};

}  // namespace

std::string_view task_name(Task task) {
  return task == Task::kLanding2d ? "landing2d" : "setpoint3d";
}

std::optional<Task> parse_task(std::string_view name) {
  if (name == "landing2d") return Task::kLanding2d;
  if (name == "setpoint3d") return Task::kSetpoint3d;
  return std::nullopt;
}

std::span<const std::string_view> observation_names(Task task) {
  if (task == Task::kLanding2d) return kLandingObs;
  return kSetpointObs;
}

std::span<const std::string_view> action_names(Task task) {
  if (task == Task::kLanding2d) return kLandingAct;
  return kSetpointAct;
}

}  // namespace quadland
