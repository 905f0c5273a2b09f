#ifndef QUADLAND_DYNAMICS_HPP_
#define QUADLAND_DYNAMICS_HPP_

#include <Eigen/Core>

#include <numbers>
#include <span>
#include <stdexcept>
#include <string>

namespace quadland {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kDegToRad = std::numbers::pi / 180.0;

// Bounds of the onboard controller's command interface.
inline constexpr double kPwmMin = 10000.0;
inline constexpr double kPwmMax = 60000.0;
inline constexpr double kMaxTiltCmd = 30.0 * kDegToRad;
inline constexpr double kMaxYawRateCmd = 200.0 * kDegToRad;

// Crazyflie single-motor PWM->thrust model, 500 Hz discrete transfer function.
inline constexpr double kMotorDiscreteGain = 7.2345374e-8;
inline constexpr double kMotorDiscretePole = 0.9695404;

struct ControlInput {
  double pwm = 0.0;
  double roll_cmd = 0.0;       // rad
  double pitch_cmd = 0.0;      // rad
  double yaw_rate_cmd = 0.0;   // rad/s

  bool within_bounds() const;
};

struct QuadState {
  Vec3 position = Vec3::Zero();   // inertial, m
  Vec3 velocity = Vec3::Zero();   // inertial, m/s
  Vec3 attitude = Vec3::Zero();   // roll, pitch, yaw (rad)
  double thrust_filter = 0.0;     // internal thrust model state

  bool is_finite() const;
};

// Time derivative of QuadState; same layout.
struct StateDerivative {
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  Vec3 attitude = Vec3::Zero();
  double thrust_filter = 0.0;
};

// Quadratic per-rotor curve F = a w^2 + b w + c. With a == b == 0 the curve
// is unset and rotor speed falls back to the thrust value itself.
struct RotorCurve {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  bool is_set() const { return a != 0.0 || b != 0.0; }
  double speed_from_thrust(double thrust) const;
};

struct ModelParams {
  double mass = 0.0;  // kg; see calibrated_mass()
  double gravity = 9.81;
  double attitude_gain = 1.1094;
  double attitude_tau = 0.1838;   // s
  double thrust_pole = 15.467;    // 1/s
  double thrust_c = 1.425e-4;
  double thrust_d = 2.894e-7;
  Vec3 drag = Vec3::Zero();       // diagonal of K_a
  bool drag_enabled = false;
  RotorCurve rotor_curve;

  // Identified Crazyflie constants with the mass that hovers at PWM 42000.
  static ModelParams crazyflie();

  // Throws std::invalid_argument naming the first violated constraint.
  void validate() const;
};

class IntegrationError : public std::runtime_error {
 public:
  explicit IntegrationError(const std::string& what)
      : std::runtime_error(what) {}
};

// Body-to-inertial rotation for (roll, pitch, yaw). Z-X-Y sequence
// R = Rz(yaw) Rx(roll) Ry(pitch).
Mat3 rotation_matrix(const Vec3& attitude);

struct ThrustRates {
  double filter_rate = 0.0;   // dOmega/dt
  double total_thrust = 0.0;  // N
};

ThrustRates thrust_dynamics(double thrust_filter, double pwm,
                            const ModelParams& params);

// DC gain (N per PWM count) of the continuous total-thrust model.
double thrust_dc_gain(const ModelParams& params);
// DC gain of the discrete single-motor model, times four.
double discrete_motor_dc_gain_x4();

Vec3 drag_force(const Vec3& velocity_body, double total_thrust,
                const ModelParams& params);

Vec3 attitude_rate(const Vec3& attitude, const ControlInput& cmd,
                   const ModelParams& params);

StateDerivative state_derivative(const QuadState& state,
                                 const ControlInput& cmd,
                                 const ModelParams& params);

// Classic fourth-order Runge-Kutta with the command held over the step.
// Throws IntegrationError if the result is not finite.
QuadState rk4_step(const QuadState& state, const ControlInput& cmd,
                   const ModelParams& params, double dt);

// PWM that balances gravity at steady state (unclipped).
double hover_pwm(const ModelParams& params);

// Mass for which hover_pwm() equals the given PWM.
double calibrated_mass(double pwm, const ModelParams& params);

// Thrust filter value at steady state for a constant PWM.
double steady_thrust_filter(double pwm, const ModelParams& params);

enum class ActionMode { kPlanar, kSpatial };

// Affine map from normalized policy outputs to commands.
struct ActionScaling {
  double hover_pwm = 42000.0;
  double pwm_scale = 16500.0;
  double max_tilt = kMaxTiltCmd;
};

// kPlanar: raw = (pwm, pitch). kSpatial: raw = (pwm, roll, pitch).
// Components are expected in [-1, 1]; outputs always satisfy the command
// bounds.
ControlInput denormalize_action(std::span<const double> raw, ActionMode mode,
                                const ActionScaling& scaling = {});

}  // namespace quadland

#endif  // QUADLAND_DYNAMICS_HPP_
