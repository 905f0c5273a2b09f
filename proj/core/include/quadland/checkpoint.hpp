#ifndef QUADLAND_CHECKPOINT_HPP_
#define QUADLAND_CHECKPOINT_HPP_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "quadland/policy.hpp"
#include "quadland/task.hpp"

namespace quadland {

inline constexpr int kCheckpointVersion = 1;

class CheckpointError : public std::runtime_error {
 public:
  explicit CheckpointError(const std::string& what) : std::runtime_error(what) {}
};

struct PolicyCheckpoint {
  Task task = Task::kLanding2d;
  MlpParams params;
  std::int64_t iteration = 0;
  std::int64_t timesteps = 0;
};

// JSON document holding layer shapes, weights, biases, log_std and the
// observation/action space descriptor. Doubles round-trip exactly.
void save_checkpoint(const std::filesystem::path& path,
                     const PolicyCheckpoint& checkpoint);

// Throws CheckpointError on I/O failure, version or shape mismatch.
PolicyCheckpoint load_checkpoint(const std::filesystem::path& path);

// Throws CheckpointError unless the checkpoint matches the task's spaces.
void require_task(const PolicyCheckpoint& checkpoint, Task task);

}  // namespace quadland

#endif  // QUADLAND_CHECKPOINT_HPP_
