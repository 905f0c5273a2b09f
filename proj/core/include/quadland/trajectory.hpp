#ifndef QUADLAND_TRAJECTORY_HPP_
#define QUADLAND_TRAJECTORY_HPP_

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadland/dynamics.hpp"
#include "quadland/environment.hpp"
#include "quadland/task.hpp"

namespace quadland {

struct TrajectoryRow {
  int step = 0;
  double t = 0.0;
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  double roll = 0.0;
  double pitch = 0.0;
  ControlInput command;
  double reward = 0.0;
  bool done = false;

  static TrajectoryRow capture(const Environment& env, int step, double dt,
                               double reward, bool done);
};

class TrajectoryFormatError : public std::runtime_error {
 public:
  explicit TrajectoryFormatError(const std::string& what)
      : std::runtime_error(what) {}
};

// Landing: step,t,x,z,vx,vz,pitch,pwm_cmd,pitch_cmd,reward,done
// Set-point adds the y, vy, roll and roll_cmd columns.
std::string trajectory_header(Task task);
void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryRow> rows,
                          Task task);

// Columns are matched by header name; x, z and pitch are required, the
// rest default to zero. Throws TrajectoryFormatError naming the line.
std::vector<TrajectoryRow> read_trajectory_csv(std::istream& in);

}  // namespace quadland

#endif  // QUADLAND_TRAJECTORY_HPP_
