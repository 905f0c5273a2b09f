#ifndef QUADLAND_TASK_HPP_
#define QUADLAND_TASK_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace quadland {

enum class Task { kLanding2d, kSetpoint3d };

std::string_view task_name(Task task);
std::optional<Task> parse_task(std::string_view name);

std::span<const std::string_view> observation_names(Task task);
std::span<const std::string_view> action_names(Task task);

}  // namespace quadland

#endif  // QUADLAND_TASK_HPP_
