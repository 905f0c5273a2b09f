#include "quadland/config.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "quadland/seeding.hpp"

namespace quadland {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Thrown by value parsers; the caller adds location context.
struct BadValue {
  std::string reason;
};

double to_double(std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw BadValue{fmt::format("'{}' is not a number", text)};
  }
  if (!std::isfinite(v)) throw BadValue{"value must be finite"};
  return v;
}

std::int64_t to_int(std::string_view text) {
  text = trim(text);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec == std::errc() && ptr == text.data() + text.size() && !text.empty()) {
    return v;
  }
  // Accept integral values written in floating-point form, e.g. 3e6.
  const double d = to_double(text);
  if (d != std::floor(d) || std::abs(d) > 9.0e18) {
    throw BadValue{fmt::format("'{}' is not an integer", text)};
  }
  return static_cast<std::int64_t>(d);
}

bool to_bool(std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw BadValue{fmt::format("'{}' is not a boolean", text)};
}

std::vector<double> to_doubles(std::string_view text) {
  std::vector<double> out;
  std::string s(text);
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::string token;
  while (in >> token) out.push_back(to_double(token));
  return out;
}

std::string fmt_double(double v) { return fmt::format("{}", v); }

struct Field {
  std::string_view section;
  std::string_view key;
  std::function<void(ExperimentConfig&, std::string_view)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

using Check = std::function<const char*(double)>;

Check positive() {
  return [](double v) -> const char* { return v > 0.0 ? nullptr : "must be positive"; };
}
Check non_negative() {
  return [](double v) -> const char* {
    return v >= 0.0 ? nullptr : "must be non-negative";
  };
}
Check any() {
  return [](double) -> const char* { return nullptr; };
}
Check between(double lo, double hi) {
  return [lo, hi](double v) -> const char* {
    return v >= lo && v <= hi ? nullptr : "is out of range";
  };
}

template <typename Access>
Field number(std::string_view section, std::string_view key, Access access,
             Check check = any()) {
  return {section, key,
          [access, check](ExperimentConfig& c, std::string_view text) {
            const double v = to_double(text);
            if (const char* err = check(v)) throw BadValue{err};
            access(c) = v;
          },
          [access](const ExperimentConfig& c) {
            return fmt_double(access(const_cast<ExperimentConfig&>(c)));
          }};
}

template <typename Access>
Field integer(std::string_view section, std::string_view key, Access access,
              Check check = any()) {
  return {section, key,
          [access, check](ExperimentConfig& c, std::string_view text) {
            const std::int64_t v = to_int(text);
            if (const char* err = check(static_cast<double>(v))) throw BadValue{err};
            using T = std::remove_reference_t<decltype(access(c))>;
            access(c) = static_cast<T>(v);
          },
          [access](const ExperimentConfig& c) {
            return fmt::format("{}", access(const_cast<ExperimentConfig&>(c)));
          }};
}

template <typename Access>
Field boolean(std::string_view section, std::string_view key, Access access) {
  return {section, key,
          [access](ExperimentConfig& c, std::string_view text) {
            access(c) = to_bool(text);
          },
          [access](const ExperimentConfig& c) -> std::string {
            return access(const_cast<ExperimentConfig&>(c)) ? "true" : "false";
          }};
}

#define QL_ACCESS(expr) [](ExperimentConfig& c) -> auto& { return c.expr; }

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    // [experiment]
    f.push_back({"experiment", "task",
                 [](ExperimentConfig& c, std::string_view text) {
                   const auto t = parse_task(trim(text));
                   if (!t) throw BadValue{"must be landing2d or setpoint3d"};
                   c.task = *t;
                 },
                 [](const ExperimentConfig& c) {
                   return std::string(task_name(c.task));
                 }});
    f.push_back(integer("experiment", "seed", QL_ACCESS(seed), non_negative()));
    f.push_back({"experiment", "output_dir",
                 [](ExperimentConfig& c, std::string_view text) {
                   if (trim(text).empty()) throw BadValue{"must not be empty"};
                   c.output_dir = std::string(trim(text));
                 },
                 [](const ExperimentConfig& c) { return c.output_dir; }});

    // [model]
    f.push_back({"model", "mass",
                 [](ExperimentConfig& c, std::string_view text) {
                   if (trim(text) == "auto") {
                     c.mass.reset();
                     return;
                   }
                   const double v = to_double(text);
                   if (!(v > 0.0)) throw BadValue{"must be positive or 'auto'"};
                   c.mass = v;
                 },
                 [](const ExperimentConfig& c) {
                   return c.mass ? fmt_double(*c.mass) : std::string("auto");
                 }});
    f.push_back(number("model", "gravity", QL_ACCESS(gravity), non_negative()));
    f.push_back(number("model", "attitude_gain", QL_ACCESS(attitude_gain)));
    f.push_back(number("model", "attitude_tau", QL_ACCESS(attitude_tau), positive()));
    f.push_back(number("model", "thrust_pole", QL_ACCESS(thrust_pole), positive()));
    f.push_back(number("model", "thrust_c", QL_ACCESS(thrust_c)));
    f.push_back(number("model", "thrust_d", QL_ACCESS(thrust_d)));
    f.push_back(boolean("model", "drag_enabled", QL_ACCESS(drag_enabled)));
    f.push_back(number("model", "drag_kx", QL_ACCESS(drag_kx)));
    f.push_back(number("model", "drag_ky", QL_ACCESS(drag_ky)));
    f.push_back(number("model", "drag_kz", QL_ACCESS(drag_kz)));
    f.push_back(number("model", "rotor_curve_a", QL_ACCESS(rotor_curve_a)));
    f.push_back(number("model", "rotor_curve_b", QL_ACCESS(rotor_curve_b)));
    f.push_back(number("model", "rotor_curve_c", QL_ACCESS(rotor_curve_c)));

    // [arena]
    f.push_back(number("arena", "x_min", QL_ACCESS(arena.x_min)));
    f.push_back(number("arena", "x_max", QL_ACCESS(arena.x_max)));
    f.push_back(number("arena", "y_min", QL_ACCESS(arena.y_min)));
    f.push_back(number("arena", "y_max", QL_ACCESS(arena.y_max)));
    f.push_back(number("arena", "z_min", QL_ACCESS(arena.z_min)));
    f.push_back(number("arena", "z_max", QL_ACCESS(arena.z_max)));

    // [control]
    f.push_back(number("control", "dt", QL_ACCESS(dt), positive()));
    f.push_back(integer("control", "episode_steps", QL_ACCESS(episode_steps), positive()));
    f.push_back(number("control", "hover_pwm", QL_ACCESS(hover_pwm),
                       between(kPwmMin, kPwmMax)));
    f.push_back(number("control", "pwm_scale", QL_ACCESS(pwm_scale), non_negative()));
    f.push_back(number("control", "max_tilt_deg", QL_ACCESS(max_tilt_deg),
                       between(0.0, 30.0)));

    // [landing]
    f.push_back(number("landing", "goal_x", QL_ACCESS(landing_goal_x)));
    f.push_back(number("landing", "goal_z", QL_ACCESS(landing_goal_z)));
    f.push_back(number("landing", "boundary_margin", QL_ACCESS(boundary_margin),
                       non_negative()));
    f.push_back(number("landing", "obstacle_reward", QL_ACCESS(obstacle_reward)));
    f.push_back(number("landing", "platform_length", QL_ACCESS(platform_length),
                       positive()));
    f.push_back(number("landing", "platform_depth", QL_ACCESS(platform_depth),
                       positive()));

    // [setpoint]
    f.push_back(number("setpoint", "goal_x", QL_ACCESS(setpoint_goal_x)));
    f.push_back(number("setpoint", "goal_y", QL_ACCESS(setpoint_goal_y)));
    f.push_back(number("setpoint", "goal_z", QL_ACCESS(setpoint_goal_z)));
    f.push_back(number("setpoint", "reset_margin", QL_ACCESS(reset_margin),
                       non_negative()));
    f.push_back(number("setpoint", "hold_radius", QL_ACCESS(hold_radius), positive()));
    f.push_back(integer("setpoint", "hold_steps", QL_ACCESS(hold_steps), non_negative()));

    // [curriculum]
    f.push_back(boolean("curriculum", "enabled", QL_ACCESS(curriculum_enabled)));
    f.push_back(number("curriculum", "tolerance_start",
                       QL_ACCESS(schedule.tolerance_start), positive()));
    f.push_back(number("curriculum", "tolerance_end",
                       QL_ACCESS(schedule.tolerance_end), positive()));
    f.push_back(number("curriculum", "tolerance_rate",
                       QL_ACCESS(schedule.tolerance_rate), non_negative()));
    f.push_back(number("curriculum", "init_halfwidth_x",
                       QL_ACCESS(schedule.init_halfwidth_x), non_negative()));
    f.push_back(number("curriculum", "init_halfwidth_z",
                       QL_ACCESS(schedule.init_halfwidth_z), non_negative()));
    f.push_back(number("curriculum", "init_growth_x",
                       QL_ACCESS(schedule.init_growth_x), non_negative()));
    f.push_back(number("curriculum", "init_growth_z",
                       QL_ACCESS(schedule.init_growth_z), non_negative()));
    f.push_back(number("curriculum", "max_halfwidth_x",
                       QL_ACCESS(schedule.max_halfwidth_x), non_negative()));
    f.push_back(number("curriculum", "max_halfwidth_z",
                       QL_ACCESS(schedule.max_halfwidth_z), non_negative()));
    f.push_back(number("curriculum", "final_tilt_deg", QL_ACCESS(final_tilt_deg),
                       between(-89.0, 0.0)));
    f.push_back(number("curriculum", "tilt_episodes",
                       QL_ACCESS(schedule.tilt_episodes), positive()));
    f.push_back(integer("curriculum", "tilt_start_timesteps",
                        QL_ACCESS(schedule.tilt_start_timesteps), non_negative()));
    f.push_back(integer("curriculum", "platform_timesteps",
                        QL_ACCESS(schedule.platform_timesteps), non_negative()));
    f.push_back(number("curriculum", "gamma_start", QL_ACCESS(gamma.start),
                       between(0.0, 1.0)));
    f.push_back(number("curriculum", "gamma_end", QL_ACCESS(gamma.end),
                       between(0.0, 1.0)));
    f.push_back(integer("curriculum", "gamma_ramp_start",
                        QL_ACCESS(gamma.ramp_start), non_negative()));
    f.push_back(integer("curriculum", "gamma_ramp_iterations",
                        QL_ACCESS(gamma.ramp_iterations), non_negative()));

    // [ppo]
    f.push_back(integer("ppo", "n_steps", QL_ACCESS(ppo.n_steps), positive()));
    f.push_back(integer("ppo", "n_envs", QL_ACCESS(ppo.n_envs), positive()));
    f.push_back(integer("ppo", "minibatch_size", QL_ACCESS(ppo.minibatch_size),
                        positive()));
    f.push_back(integer("ppo", "epochs", QL_ACCESS(ppo.epochs), positive()));
    f.push_back(number("ppo", "clip_range", QL_ACCESS(ppo.clip_range),
                       between(1e-12, 1.0 - 1e-12)));
    f.push_back(number("ppo", "learning_rate", QL_ACCESS(ppo.learning_rate), positive()));
    f.push_back(number("ppo", "gae_lambda", QL_ACCESS(ppo.gae_lambda), between(0.0, 1.0)));
    f.push_back(number("ppo", "value_coef", QL_ACCESS(ppo.value_coef), non_negative()));
    f.push_back(number("ppo", "entropy_coef", QL_ACCESS(ppo.entropy_coef),
                       non_negative()));
    f.push_back(number("ppo", "max_grad_norm", QL_ACCESS(ppo.max_grad_norm), positive()));
    f.push_back(integer("ppo", "total_timesteps", QL_ACCESS(ppo.total_timesteps),
                        positive()));
    f.push_back(integer("ppo", "hidden_units", QL_ACCESS(ppo.hidden_units), positive()));
    f.push_back(integer("ppo", "checkpoint_every", QL_ACCESS(checkpoint_every),
                        non_negative()));
    f.push_back(number("ppo", "stop_success_rate", QL_ACCESS(stop_success_rate),
                       between(0.0, 1.0)));
    f.push_back(integer("ppo", "stop_min_timesteps", QL_ACCESS(stop_min_timesteps),
                        non_negative()));
    f.push_back(integer("ppo", "progress_every", QL_ACCESS(progress_every),
                        non_negative()));

    // [eval]
    f.push_back({"eval", "positions",
                 [](ExperimentConfig& c, std::string_view text) {
                   try {
                     c.eval_positions = parse_positions(text);
                   } catch (const ConfigError& e) {
                     throw BadValue{e.what()};
                   }
                 },
                 [](const ExperimentConfig& c) {
                   std::string out;
                   for (const Point2& p : c.eval_positions) {
                     if (!out.empty()) out += "; ";
                     out += fmt::format("{} {}", p.x(), p.y());
                   }
                   return out;
                 }});
    f.push_back(integer("eval", "trials", QL_ACCESS(eval_trials), positive()));
    f.push_back({"eval", "tolerance",
                 [](ExperimentConfig& c, std::string_view text) {
                   const auto v = to_doubles(text);
                   if (v.size() != 5) throw BadValue{"needs five half-widths"};
                   for (std::size_t i = 0; i < 5; ++i) {
                     if (!(v[i] > 0.0)) throw BadValue{"half-widths must be positive"};
                     c.eval_tolerance[i] = v[i];
                   }
                 },
                 [](const ExperimentConfig& c) {
                   const auto& t = c.eval_tolerance;
                   return fmt::format("{} {} {} {} {}", t[0], t[1], t[2], t[3], t[4]);
                 }});
    f.push_back(number("eval", "start_jitter", QL_ACCESS(eval_start_jitter),
                       non_negative()));
    f.push_back(integer("eval", "seed", QL_ACCESS(eval_seed), non_negative()));
    f.push_back(integer("eval", "setpoint_trials", QL_ACCESS(setpoint_eval_trials),
                        positive()));
    return f;
  }();
  return table;
}

#undef QL_ACCESS

const Field* find_field(std::string_view section, std::string_view key) {
  for (const Field& f : fields()) {
    if (f.section == section && f.key == key) return &f;
  }
  return nullptr;
}

std::pair<std::string_view, std::string_view> split_dotted(std::string_view dotted) {
  const auto dot = dotted.find('.');
  if (dot == std::string_view::npos) {
    throw ConfigError(fmt::format("override '{}' must be section.key", dotted));
  }
  return {dotted.substr(0, dot), dotted.substr(dot + 1)};
}

}  // namespace

std::vector<ConfigEntry> parse_ini(std::string_view text, std::string_view source) {
  std::vector<ConfigEntry> entries;
  std::map<std::pair<std::string, std::string>, int> seen;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    // Comments start at '#' or ';' at line start or after whitespace.
    for (std::size_t i = 0; i < line.size(); ++i) {
      if ((line[i] == '#' || line[i] == ';') &&
          (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t')) {
        line = line.substr(0, i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ConfigError(fmt::format("{}:{}: malformed section header '{}'",
                                      source, line_no, line));
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
    } else {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigError(fmt::format("{}:{}: expected 'key = value', got '{}'",
                                      source, line_no, line));
      }
      ConfigEntry e{section, std::string(trim(line.substr(0, eq))),
                    std::string(trim(line.substr(eq + 1))), line_no};
      if (e.key.empty()) {
        throw ConfigError(fmt::format("{}:{}: empty key", source, line_no));
      }
      if (section.empty()) {
        throw ConfigError(fmt::format("{}:{}: key '{}' appears before any section",
                                      source, line_no, e.key));
      }
      const auto [it, inserted] = seen.emplace(std::pair{e.section, e.key}, line_no);
      if (!inserted) {
        throw ConfigError(fmt::format("{}:{}: [{}] {} already set on line {}",
                                      source, line_no, e.section, e.key, it->second));
      }
      entries.push_back(std::move(e));
    }
    if (end == text.size()) break;
  }
  return entries;
}

std::vector<Point2> parse_positions(std::string_view text) {
  std::vector<Point2> out;
  std::string_view rest = text;
  while (!trim(rest).empty()) {
    const auto semi = rest.find(';');
    const std::string_view item = trim(rest.substr(0, semi));
    rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);
    if (item.empty()) continue;
    std::vector<double> v;
    try {
      v = to_doubles(item);
    } catch (const BadValue& e) {
      throw ConfigError(fmt::format("position '{}': {}", item, e.reason));
    }
    if (v.size() != 2) {
      throw ConfigError(fmt::format("position '{}' must be 'x z'", item));
    }
    out.emplace_back(v[0], v[1]);
  }
  if (out.empty()) throw ConfigError("position list is empty");
  return out;
}

ExperimentConfig ExperimentConfig::defaults(Task task) {
  ExperimentConfig c;
  c.task = task;
  if (task == Task::kSetpoint3d) {
    c.output_dir = "runs/setpoint3d";
    c.curriculum_enabled = false;
    c.gamma.start = 0.97;
    c.gamma.end = 0.97;
    c.ppo.total_timesteps = 1'000'000;
    c.stop_success_rate = 0.0;
    c.stop_min_timesteps = 0;
  } else {
    c.output_dir = "runs/landing2d";
    c.ppo.total_timesteps = 3'000'000;
  }
  return c;
}

ExperimentConfig ExperimentConfig::parse(std::string_view text,
                                         std::string_view source,
                                         std::optional<Task> task_override) {
  const std::vector<ConfigEntry> entries = parse_ini(text, source);
  Task task = Task::kLanding2d;
  for (const ConfigEntry& e : entries) {
    if (e.section == "experiment" && e.key == "task") {
      const auto t = parse_task(e.value);
      if (!t) {
        throw ConfigError(fmt::format("{}:{}: [experiment] task: must be landing2d "
                                      "or setpoint3d",
                                      source, e.line));
      }
      task = *t;
    }
  }
  if (task_override) task = *task_override;

  ExperimentConfig config = defaults(task);
  for (const ConfigEntry& e : entries) {
    const Field* field = find_field(e.section, e.key);
    if (field == nullptr) {
      throw ConfigError(fmt::format("{}:{}: unknown key [{}] {}", source, e.line,
                                    e.section, e.key));
    }
    if (e.section == "experiment" && e.key == "task") continue;
    try {
      field->set(config, e.value);
    } catch (const BadValue& bad) {
      throw ConfigError(fmt::format("{}:{}: [{}] {}: {}", source, e.line,
                                    e.section, e.key, bad.reason));
    }
  }
  config.validate();
  return config;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path,
                                        std::optional<Task> task_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path.string(), task_override);
}

std::string ExperimentConfig::set(std::string_view dotted_key,
                                  std::string_view value) {
  const auto [section, key] = split_dotted(dotted_key);
  const Field* field = find_field(section, key);
  if (field == nullptr) {
    throw ConfigError(fmt::format("unknown key [{}] {}", section, key));
  }
  std::string previous = field->get(*this);
  try {
    field->set(*this, value);
  } catch (const BadValue& bad) {
    throw ConfigError(fmt::format("[{}] {}: {}", section, key, bad.reason));
  }
  return previous;
}

std::string ExperimentConfig::get(std::string_view dotted_key) const {
  const auto [section, key] = split_dotted(dotted_key);
  const Field* field = find_field(section, key);
  if (field == nullptr) {
    throw ConfigError(fmt::format("unknown key [{}] {}", section, key));
  }
  return field->get(*this);
}

void ExperimentConfig::validate() const {
  auto wrap = [](const char* section, auto&& fn) {
    try {
      fn();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(fmt::format("[{}] {}", section, e.what()));
    }
  };
  wrap("model", [&] { model_params().validate(); });
  wrap("arena", [&] { arena.validate(); });
  wrap("landing", [&] { landing_config().validate(); });
  wrap("setpoint", [&] { setpoint_config().validate(); });
  wrap("curriculum", [&] {
    curriculum_schedule().validate();
    gamma.validate();
  });
  wrap("ppo", [&] { ppo.validate(); });
  if (hover_pwm + pwm_scale > kPwmMax || hover_pwm - pwm_scale < kPwmMin) {
    // Commands are clipped, so this only warns about a lost range.
  }
}

std::string ExperimentConfig::to_ini() const {
  std::string out =
      "# quadland experiment configuration\n"
      "# lengths in m, times in s, angles in degrees\n";
  std::string_view current;
  for (const Field& f : fields()) {
    if (f.section != current) {
      out += fmt::format("\n[{}]\n", f.section);
      current = f.section;
    }
    out += fmt::format("{} = {}\n", f.key, f.get(*this));
  }
  return out;
}

ModelParams ExperimentConfig::model_params() const {
  ModelParams p;
  p.gravity = gravity;
  p.attitude_gain = attitude_gain;
  p.attitude_tau = attitude_tau;
  p.thrust_pole = thrust_pole;
  p.thrust_c = thrust_c;
  p.thrust_d = thrust_d;
  p.drag_enabled = drag_enabled;
  p.drag = {drag_kx, drag_ky, drag_kz};
  p.rotor_curve = {rotor_curve_a, rotor_curve_b, rotor_curve_c};
  p.mass = mass ? *mass : calibrated_mass(hover_pwm, p);
  return p;
}

ActionScaling ExperimentConfig::action_scaling() const {
  return {hover_pwm, pwm_scale, max_tilt_deg * kDegToRad};
}

LandingConfig ExperimentConfig::landing_config() const {
  LandingConfig c;
  c.model = model_params();
  c.arena = arena;
  c.scaling = action_scaling();
  c.dt = dt;
  c.episode_steps = episode_steps;
  c.goal_position = {landing_goal_x, landing_goal_z};
  c.boundary_margin = boundary_margin;
  c.rewards.obstacle = obstacle_reward;
  c.platform_length = platform_length;
  c.platform_depth = platform_depth;
  return c;
}

SetpointConfig ExperimentConfig::setpoint_config() const {
  SetpointConfig c;
  c.model = model_params();
  c.arena = arena;
  c.scaling = action_scaling();
  c.dt = dt;
  c.episode_steps = episode_steps;
  c.goal_position = {setpoint_goal_x, setpoint_goal_y, setpoint_goal_z};
  c.reset_margin = reset_margin;
  c.hold_radius = hold_radius;
  c.hold_steps = hold_steps;
  return c;
}

CurriculumSchedule ExperimentConfig::curriculum_schedule() const {
  CurriculumSchedule s = schedule;
  s.final_tilt = final_tilt_deg * kDegToRad;
  return s;
}

TrainerOptions ExperimentConfig::trainer_options() const {
  TrainerOptions o;
  o.task = task;
  o.ppo = ppo;
  o.ppo.seed = seed;
  o.gamma = gamma;
  if (task == Task::kLanding2d && curriculum_enabled) {
    o.curriculum = curriculum_schedule();
  }
  o.output_dir = std::filesystem::path(output_dir);
  o.checkpoint_every = checkpoint_every;
  o.stop_success_rate = stop_success_rate;
  o.stop_min_timesteps = stop_min_timesteps;
  o.progress_every = progress_every;
  return o;
}

EnvironmentFactory ExperimentConfig::environment_factory() const {
  const std::uint64_t base = seed;
  if (task == Task::kSetpoint3d) {
    return [cfg = setpoint_config(), base](int i) -> std::unique_ptr<Environment> {
      return std::make_unique<SetpointEnv>(
          cfg, derive_seed(base, streams::kEnvironmentBase + i));
    };
  }
  return [cfg = landing_config(), base](int i) -> std::unique_ptr<Environment> {
    return std::make_unique<LandingEnv>(
        cfg, derive_seed(base, streams::kEnvironmentBase + i));
  };
}

LandingEvalSpec ExperimentConfig::landing_eval_spec() const {
  LandingEvalSpec s;
  s.positions = eval_positions;
  s.trials = eval_trials;
  s.tolerance = eval_tolerance;
  s.start_jitter = eval_start_jitter;
  s.seed = eval_seed;
  return s;
}

SetpointEvalSpec ExperimentConfig::setpoint_eval_spec() const {
  return {setpoint_eval_trials, eval_seed};
}

}  // namespace quadland
