#ifndef QUADLAND_ENVIRONMENT_HPP_
#define QUADLAND_ENVIRONMENT_HPP_

#include <functional>
#include <memory>
#include <span>

#include "quadland/curriculum.hpp"
#include "quadland/dynamics.hpp"

namespace quadland {

struct StepResult {
  double reward = 0.0;
  bool terminated = false;  // true terminal state (goal reached, abort)
  bool truncated = false;   // time limit
  bool failed = false;      // integration produced a non-finite state
  bool success = false;     // task-specific success at episode end

  bool done() const { return terminated || truncated; }
};

// Gym-style episodic environment with normalized actions in [-1, 1].
class Environment {
 public:
  virtual ~Environment() = default;

  virtual int observation_size() const = 0;
  virtual int action_size() const = 0;

  // Starts a new episode; returns the policy observation.
  virtual std::span<const double> reset() = 0;
  virtual StepResult step(std::span<const double> action) = 0;
  virtual std::span<const double> observation() const = 0;

  // Receives the curriculum snapshot used by the next reset(). Environments
  // without a curriculum ignore it.
  virtual void set_curriculum(const CurriculumState&) {}

  virtual int step_count() const = 0;
  virtual const QuadState& state() const = 0;
  virtual const ControlInput& last_command() const = 0;
};

// Builds the environment for worker `index`.
using EnvironmentFactory =
    std::function<std::unique_ptr<Environment>(int index)>;

}  // namespace quadland

#endif  // QUADLAND_ENVIRONMENT_HPP_
