#include "quadland/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace quadland {

bool ControlInput::within_bounds() const {
  return pwm >= kPwmMin && pwm <= kPwmMax && std::abs(roll_cmd) <= kMaxTiltCmd &&
         std::abs(pitch_cmd) <= kMaxTiltCmd &&
         std::abs(yaw_rate_cmd) <= kMaxYawRateCmd;
}

bool QuadState::is_finite() const {
  return position.allFinite() && velocity.allFinite() &&
         attitude.allFinite() && std::isfinite(thrust_filter);
}

double RotorCurve::speed_from_thrust(double thrust) const {
  if (!is_set()) return thrust;
  if (a == 0.0) return std::max(0.0, (thrust - c) / b);
  const double disc = b * b - 4.0 * a * (c - thrust);
  if (disc <= 0.0) return std::max(0.0, -b / (2.0 * a));
  return std::max(0.0, (-b + std::sqrt(disc)) / (2.0 * a));
}

ModelParams ModelParams::crazyflie() {
  ModelParams params;
  params.mass = calibrated_mass(42000.0, params);
  return params;
}

void ModelParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  require(std::isfinite(mass) && mass > 0.0, "mass must be positive");
  require(std::isfinite(gravity) && gravity >= 0.0,
          "gravity must be non-negative");
  require(std::isfinite(attitude_gain), "attitude_gain must be finite");
  require(std::isfinite(attitude_tau) && attitude_tau > 0.0,
          "attitude_tau must be positive");
  require(std::isfinite(thrust_pole) && thrust_pole > 0.0,
          "thrust_pole must be positive");
  require(std::isfinite(thrust_c) && std::isfinite(thrust_d),
          "thrust coefficients must be finite");
  require(drag.allFinite(), "drag constants must be finite");
}

Mat3 rotation_matrix(const Vec3& attitude) {
  const double cr = std::cos(attitude.x()), sr = std::sin(attitude.x());
  const double cp = std::cos(attitude.y()), sp = std::sin(attitude.y());
  const double cy = std::cos(attitude.z()), sy = std::sin(attitude.z());
  Mat3 r;
  r << cy * cp - sr * sy * sp, -cr * sy, cy * sp + cp * sr * sy,
       cp * sy + cy * sr * sp, cr * cy, sy * sp - cy * cp * sr,
       -cr * sp, sr, cr * cp;
  return r;
}

ThrustRates thrust_dynamics(double thrust_filter, double pwm,
                            const ModelParams& params) {
  return {.filter_rate = -params.thrust_pole * thrust_filter + pwm,
          .total_thrust = params.thrust_c * thrust_filter + params.thrust_d * pwm};
}

double thrust_dc_gain(const ModelParams& params) {
  return params.thrust_c / params.thrust_pole + params.thrust_d;
}

double discrete_motor_dc_gain_x4() {
  return 4.0 * kMotorDiscreteGain / (1.0 - kMotorDiscretePole);
}

Vec3 drag_force(const Vec3& velocity_body, double total_thrust,
                const ModelParams& params) {
  if (!params.drag_enabled) return Vec3::Zero();
  const double rotor_speed_sum =
      4.0 * params.rotor_curve.speed_from_thrust(total_thrust / 4.0);
  return params.drag.cwiseProduct(velocity_body) * rotor_speed_sum;
}

Vec3 attitude_rate(const Vec3& attitude, const ControlInput& cmd,
                   const ModelParams& params) {
  const double k = params.attitude_gain;
  const double tau = params.attitude_tau;
  return {(k * cmd.roll_cmd - attitude.x()) / tau,
          (k * cmd.pitch_cmd - attitude.y()) / tau, cmd.yaw_rate_cmd};
}

StateDerivative state_derivative(const QuadState& state,
                                 const ControlInput& cmd,
                                 const ModelParams& params) {
  const ThrustRates thrust =
      thrust_dynamics(state.thrust_filter, cmd.pwm, params);
  const Mat3 r = rotation_matrix(state.attitude);

  Vec3 body_force(0.0, 0.0, thrust.total_thrust);
  if (params.drag_enabled) {
    body_force += drag_force(r.transpose() * state.velocity,
                             thrust.total_thrust, params);
  }

  StateDerivative d;
  d.position = state.velocity;
  d.velocity = r * body_force / params.mass;
  d.velocity.z() -= params.gravity;
  d.attitude = attitude_rate(state.attitude, cmd, params);
  d.thrust_filter = thrust.filter_rate;
  return d;
}

namespace {

QuadState advance(const QuadState& s, const StateDerivative& d, double h) {
  QuadState out;
  out.position = s.position + h * d.position;
  out.velocity = s.velocity + h * d.velocity;
  out.attitude = s.attitude + h * d.attitude;
  out.thrust_filter = s.thrust_filter + h * d.thrust_filter;
  return out;
}

}  // namespace

QuadState rk4_step(const QuadState& state, const ControlInput& cmd,
                   const ModelParams& params, double dt) {
  const StateDerivative k1 = state_derivative(state, cmd, params);
  const StateDerivative k2 =
      state_derivative(advance(state, k1, 0.5 * dt), cmd, params);
  const StateDerivative k3 =
      state_derivative(advance(state, k2, 0.5 * dt), cmd, params);
  const StateDerivative k4 =
      state_derivative(advance(state, k3, dt), cmd, params);

  const double w = dt / 6.0;
  QuadState next;
  next.position = state.position +
                  w * (k1.position + 2.0 * k2.position + 2.0 * k3.position +
                       k4.position);
  next.velocity = state.velocity +
                  w * (k1.velocity + 2.0 * k2.velocity + 2.0 * k3.velocity +
                       k4.velocity);
  next.attitude = state.attitude +
                  w * (k1.attitude + 2.0 * k2.attitude + 2.0 * k3.attitude +
                       k4.attitude);
  next.thrust_filter =
      state.thrust_filter + w * (k1.thrust_filter + 2.0 * k2.thrust_filter +
                                 2.0 * k3.thrust_filter + k4.thrust_filter);
  if (!next.is_finite()) {
    throw IntegrationError("rk4_step produced a non-finite state");
  }
  return next;
}

double hover_pwm(const ModelParams& params) {
  return params.mass * params.gravity / thrust_dc_gain(params);
}

double calibrated_mass(double pwm, const ModelParams& params) {
  return pwm * thrust_dc_gain(params) / params.gravity;
}

double steady_thrust_filter(double pwm, const ModelParams& params) {
  return pwm / params.thrust_pole;
}

ControlInput denormalize_action(std::span<const double> raw, ActionMode mode,
                                const ActionScaling& scaling) {
  auto tilt = [&](double v) {
    return std::clamp(scaling.max_tilt * v, -kMaxTiltCmd, kMaxTiltCmd);
  };
  ControlInput cmd;
  cmd.pwm = std::clamp(scaling.hover_pwm + scaling.pwm_scale * raw[0],
                       kPwmMin, kPwmMax);
  if (mode == ActionMode::kPlanar) {
    cmd.pitch_cmd = tilt(raw[1]);
  } else {
    cmd.roll_cmd = tilt(raw[1]);
    cmd.pitch_cmd = tilt(raw[2]);
  }
  return cmd;
}

}  // namespace quadland
