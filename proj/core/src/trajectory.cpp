#include "quadland/trajectory.hpp"

#include <fmt/core.h>

#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace quadland {

TrajectoryRow TrajectoryRow::capture(const Environment& env, int step,
                                     double dt, double reward, bool done) {
  const QuadState& s = env.state();
  TrajectoryRow row;
  row.step = step;
  row.t = step * dt;
  row.position = s.position;
  row.velocity = s.velocity;
  row.roll = s.attitude.x();
  row.pitch = s.attitude.y();
  row.command = env.last_command();
  row.reward = reward;
  row.done = done;
  return row;
}

std::string trajectory_header(Task task) {
  if (task == Task::kLanding2d) {
    return "step,t,x,z,vx,vz,pitch,pwm_cmd,pitch_cmd,reward,done";
  }
  return "step,t,x,y,z,vx,vy,vz,roll,pitch,pwm_cmd,roll_cmd,pitch_cmd,reward,"
         "done";
}

void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryRow> rows,
                          Task task) {
  out << trajectory_header(task) << '\n';
  for (const TrajectoryRow& r : rows) {
    if (task == Task::kLanding2d) {
      out << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", r.step, r.t,
                         r.position.x(), r.position.z(), r.velocity.x(),
                         r.velocity.z(), r.pitch, r.command.pwm,
                         r.command.pitch_cmd, r.reward, r.done ? 1 : 0);
    } else {
      out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                         r.step, r.t, r.position.x(), r.position.y(),
                         r.position.z(), r.velocity.x(), r.velocity.y(),
                         r.velocity.z(), r.roll, r.pitch, r.command.pwm,
                         r.command.roll_cmd, r.command.pitch_cmd, r.reward,
                         r.done ? 1 : 0);
    }
  }
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_number(const std::string& text, std::size_t line,
                    const std::string& column) {
  std::string s = text;
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  double value = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  while (first != last && *first == ' ') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw TrajectoryFormatError(fmt::format(
        "row {}: column '{}' is not a number: '{}'", line, column, text));
  }
  return value;
}

}  // namespace

std::vector<TrajectoryRow> read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw TrajectoryFormatError("row 1: missing header");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split_fields(line);
  std::map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < header.size(); ++i) column[header[i]] = i;
  for (const char* required : {"x", "z", "pitch"}) {
    if (!column.count(required)) {
      throw TrajectoryFormatError(
          fmt::format("row 1: header lacks required column '{}'", required));
    }
  }

  std::vector<TrajectoryRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != header.size()) {
      throw TrajectoryFormatError(fmt::format(
          "row {}: expected {} fields, found {}", line_no, header.size(),
          fields.size()));
    }
    auto get = [&](const char* name, double fallback) {
      const auto it = column.find(name);
      if (it == column.end()) return fallback;
      return parse_number(fields[it->second], line_no, name);
    };
    TrajectoryRow r;
    r.step = static_cast<int>(get("step", static_cast<double>(rows.size())));
    r.t = get("t", 0.0);
    r.position = {get("x", 0.0), get("y", 0.0), get("z", 0.0)};
    r.velocity = {get("vx", 0.0), get("vy", 0.0), get("vz", 0.0)};
    r.roll = get("roll", 0.0);
    r.pitch = get("pitch", 0.0);
    r.command.pwm = get("pwm_cmd", 0.0);
    r.command.roll_cmd = get("roll_cmd", 0.0);
    r.command.pitch_cmd = get("pitch_cmd", 0.0);
    r.reward = get("reward", 0.0);
    r.done = get("done", 0.0) != 0.0;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace quadland
