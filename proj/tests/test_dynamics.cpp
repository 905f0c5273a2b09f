#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Geometry>

#include "quadland/dynamics.hpp"

namespace quadland {
namespace {

constexpr double kPi = std::numbers::pi;

ModelParams params() { return ModelParams::crazyflie(); }

TEST(RotationMatrix, ZeroAttitudeIsIdentity) {
  EXPECT_TRUE(rotation_matrix(Vec3::Zero()).isApprox(Mat3::Identity(), 1e-15));
}

TEST(RotationMatrix, PurePitch) {
  const double t = 0.37;
  Mat3 expected;
  expected << std::cos(t), 0, std::sin(t), 0, 1, 0, -std::sin(t), 0, std::cos(t);
  const Mat3 r = rotation_matrix({0.0, t, 0.0});
  EXPECT_LT((r - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(RotationMatrix, MatchesElementaryRotationProduct) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int i = 0; i < 100; ++i) {
    const Vec3 a(angle(rng), angle(rng), angle(rng));
    const Mat3 oracle = (Eigen::AngleAxisd(a.z(), Vec3::UnitZ()) *
                         Eigen::AngleAxisd(a.x(), Vec3::UnitX()) *
                         Eigen::AngleAxisd(a.y(), Vec3::UnitY()))
                            .toRotationMatrix();
    EXPECT_LT((rotation_matrix(a) - oracle).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(RotationMatrix, OrthonormalForRandomAttitudes) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int i = 0; i < 1000; ++i) {
    const Mat3 r = rotation_matrix({angle(rng), angle(rng), angle(rng)});
    EXPECT_LT((r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(r.determinant(), 1.0, 1e-12);
  }
}

TEST(ThrustDynamics, SteadyStateAtHoverPwm) {
  const ModelParams p = params();
  const double pwm = 42000.0;
  const ThrustRates r = thrust_dynamics(pwm / 15.467, pwm, p);
  EXPECT_NEAR(r.filter_rate, 0.0, 1e-9);
  EXPECT_NEAR(r.total_thrust, 0.399108, 5e-7);
  EXPECT_NEAR(r.total_thrust, pwm * (1.425e-4 / 15.467 + 2.894e-7), 1e-15);
}

TEST(ThrustDynamics, ZeroInput) {
  const ThrustRates r = thrust_dynamics(0.0, 0.0, params());
  EXPECT_EQ(r.filter_rate, 0.0);
  EXPECT_EQ(r.total_thrust, 0.0);
}

TEST(ThrustDynamics, NonNegativeThrustForAdmissibleInputs) {
  const ModelParams p = params();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pwm(kPwmMin, kPwmMax);
  for (int i = 0; i < 1000; ++i) {
    // The filter state stays within the steady-state range of admissible pwm.
    const double omega = pwm(rng) / p.thrust_pole;
    EXPECT_GE(thrust_dynamics(omega, pwm(rng), p).total_thrust, 0.0);
  }
}

TEST(ThrustDynamics, DcGainsAgreeWithinTolerance) {
  const double continuous = thrust_dc_gain(params());
  const double discrete = 4.0 * 7.2345374e-8 / (1.0 - 0.9695404);
  EXPECT_DOUBLE_EQ(discrete_motor_dc_gain_x4(), discrete);
  EXPECT_LT(std::abs(continuous - discrete) / discrete, 0.003);
}

TEST(DragForce, ZeroVelocityGivesZeroForce) {
  ModelParams p = params();
  p.drag_enabled = true;
  p.drag = Vec3(-1e-3, -1e-3, -2e-3);
  EXPECT_EQ(drag_force(Vec3::Zero(), 0.4, p), Vec3::Zero());
}

TEST(DragForce, DisabledGivesZeroForce) {
  ModelParams p = params();
  p.drag = Vec3(-1.0, -1.0, -1.0);
  EXPECT_EQ(drag_force(Vec3(1.0, 2.0, 3.0), 0.4, p), Vec3::Zero());
}

TEST(DragForce, LinearInRotorSpeedSum) {
  ModelParams p = params();
  p.drag_enabled = true;
  const double k = 2.5e-4;
  p.drag = Vec3(-k, -k, -k);
  // Curve F = a w^2 with a chosen so each rotor spins at w0 for thrust F0.
  const double w0 = 1500.0, f0 = 0.1;
  p.rotor_curve = {f0 / (w0 * w0), 0.0, 0.0};
  const Vec3 f = drag_force(Vec3(1.0, 0.0, 0.0), 4.0 * f0, p);
  EXPECT_NEAR(f.x(), -k * 4.0 * w0, 1e-12);
  EXPECT_EQ(f.y(), 0.0);
  EXPECT_EQ(f.z(), 0.0);
}

TEST(DragForce, UnsetCurveFallsBackToThrust) {
  ModelParams p = params();
  p.drag_enabled = true;
  p.drag = Vec3(-2.0, 0.0, 0.0);
  EXPECT_NEAR(drag_force(Vec3(1.0, 0.0, 0.0), 0.4, p).x(), -0.8, 1e-15);
}

TEST(RotorCurve, InvertsQuadratic) {
  const RotorCurve curve{2e-8, 3e-6, 1e-3};
  for (double w : {100.0, 900.0, 2500.0}) {
    const double f = curve.a * w * w + curve.b * w + curve.c;
    EXPECT_NEAR(curve.speed_from_thrust(f), w, 1e-8 * w);
  }
}

TEST(AttitudeRate, EquilibriumAtScaledCommand) {
  const ModelParams p = params();
  ControlInput cmd;
  cmd.roll_cmd = 0.2;
  cmd.pitch_cmd = -0.3;
  const Vec3 rate = attitude_rate({p.attitude_gain * 0.2, p.attitude_gain * -0.3, 0.0},
                                  cmd, p);
  EXPECT_NEAR(rate.x(), 0.0, 1e-15);
  EXPECT_NEAR(rate.y(), 0.0, 1e-15);
}

TEST(AttitudeRate, StepFromRest) {
  ControlInput cmd;
  cmd.roll_cmd = kPi / 6.0;
  cmd.yaw_rate_cmd = 0.5;
  const Vec3 rate = attitude_rate(Vec3::Zero(), cmd, params());
  EXPECT_NEAR(rate.x(), 1.1094 * (kPi / 6.0) / 0.1838, 1e-12);
  EXPECT_EQ(rate.z(), 0.5);
}

QuadState hover_state(const ModelParams& p) {
  QuadState s;
  s.position = Vec3(0.0, 0.0, 1.0);
  s.thrust_filter = steady_thrust_filter(hover_pwm(p), p);
  return s;
}

TEST(StateDerivative, HoverBalancesGravity) {
  const ModelParams p = params();
  ControlInput cmd;
  cmd.pwm = hover_pwm(p);
  const StateDerivative d = state_derivative(hover_state(p), cmd, p);
  EXPECT_LT(d.velocity.norm(), 1e-12);
  EXPECT_NEAR(d.thrust_filter, 0.0, 1e-9);
}

TEST(StateDerivative, FreeFall) {
  const ModelParams p = params();
  const StateDerivative d = state_derivative(QuadState{}, ControlInput{}, p);
  EXPECT_EQ(d.velocity, Vec3(0.0, 0.0, -p.gravity));
}

TEST(StateDerivative, PitchedThrust) {
  const ModelParams p = params();
  const double theta = 0.3;
  QuadState s;
  s.attitude = Vec3(0.0, theta, 0.0);
  s.thrust_filter = 2000.0;
  ControlInput cmd;
  cmd.pwm = 30000.0;
  cmd.pitch_cmd = theta / p.attitude_gain;
  const double f = p.thrust_c * 2000.0 + p.thrust_d * 30000.0;
  const StateDerivative d = state_derivative(s, cmd, p);
  EXPECT_NEAR(d.velocity.x(), f / p.mass * std::sin(theta), 1e-12);
  EXPECT_NEAR(d.velocity.y(), 0.0, 1e-15);
  EXPECT_NEAR(d.velocity.z(), f / p.mass * std::cos(theta) - p.gravity, 1e-12);
}

TEST(Rk4Step, FreeFallIsExact) {
  const ModelParams p = params();
  QuadState s;
  s.position = Vec3(0.0, 0.0, 2.0);
  const QuadState next = rk4_step(s, ControlInput{}, p, 0.02);
  EXPECT_NEAR(next.position.z() - 2.0, -0.0019620, 1e-12);
  EXPECT_NEAR(next.velocity.z(), -0.19620, 1e-12);
}

TEST(Rk4Step, HorizontalVelocityConservedWithoutThrust) {
  const ModelParams p = params();
  QuadState s;
  s.velocity = Vec3(0.7, -0.3, 0.0);
  s.attitude = Vec3(0.1, -0.2, 0.0);
  for (int i = 0; i < 300; ++i) s = rk4_step(s, ControlInput{}, p, 0.02);
  EXPECT_EQ(s.velocity.x(), 0.7);
  EXPECT_EQ(s.velocity.y(), -0.3);
}

TEST(Rk4Step, ThrustFilterConvergesAtFourthOrder) {
  const ModelParams p = params();
  const double pwm = 42000.0, horizon = 1.0;
  auto error = [&](double dt) {
    QuadState s;
    ControlInput cmd;
    cmd.pwm = pwm;
    const int n = static_cast<int>(std::lround(horizon / dt));
    for (int i = 0; i < n; ++i) s = rk4_step(s, cmd, p, dt);
    const double exact =
        pwm / p.thrust_pole * (1.0 - std::exp(-p.thrust_pole * horizon));
    return std::abs(s.thrust_filter - exact);
  };
  const double order = std::log2(error(0.02) / error(0.01));
  EXPECT_GE(order, 3.7);
  EXPECT_LE(order, 4.3);
}

TEST(Rk4Step, AttitudeStepResponse) {
  const ModelParams p = params();
  const double phi_c = kPi / 6.0;
  ControlInput cmd;
  cmd.pwm = hover_pwm(p);
  cmd.roll_cmd = phi_c;
  for (double m : {1.0, 3.0, 5.0}) {
    const double t = m * p.attitude_tau;
    QuadState s = hover_state(p);
    const int n = static_cast<int>(t / 0.02);
    for (int i = 0; i < n; ++i) s = rk4_step(s, cmd, p, 0.02);
    s = rk4_step(s, cmd, p, t - n * 0.02);
    const double exact = p.attitude_gain * phi_c * (1.0 - std::exp(-m));
    EXPECT_NEAR(s.attitude.x(), exact, 1e-6) << "t = " << m << " tau";
  }
}

TEST(Rk4Step, Deterministic) {
  const ModelParams p = params();
  QuadState s;
  s.position = Vec3(0.1, 0.2, 1.0);
  s.attitude = Vec3(0.1, 0.2, 0.0);
  ControlInput cmd{45000.0, 0.1, -0.2, 0.0};
  const QuadState a = rk4_step(s, cmd, p, 0.02);
  const QuadState b = rk4_step(s, cmd, p, 0.02);
  EXPECT_EQ(a.position, b.position);
  EXPECT_EQ(a.velocity, b.velocity);
  EXPECT_EQ(a.attitude, b.attitude);
  EXPECT_EQ(a.thrust_filter, b.thrust_filter);
}

TEST(Rk4Step, NonFiniteStateThrows) {
  QuadState s;
  s.velocity.x() = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(rk4_step(s, ControlInput{}, params(), 0.02), IntegrationError);
}

TEST(HoverPwm, CalibratedMass) {
  const ModelParams p = params();
  EXPECT_NEAR(p.mass, 0.399108 / 9.81, 1e-7);
  EXPECT_NEAR(p.mass, 0.040684, 5e-7);
  EXPECT_NEAR(hover_pwm(p), 42000.0, 1e-9);
}

TEST(HoverPwm, ZeroAndDoubledMass) {
  ModelParams p = params();
  const double base = hover_pwm(p);
  p.mass *= 2.0;
  EXPECT_NEAR(hover_pwm(p), 2.0 * base, 1e-9);
  p.mass = 0.0;
  EXPECT_EQ(hover_pwm(p), 0.0);
}

TEST(HoverPwm, HoldsAltitudeForAnEpisode) {
  const ModelParams p = params();
  QuadState s = hover_state(p);
  ControlInput cmd;
  cmd.pwm = 42000.0;
  for (int i = 0; i < 300; ++i) {
    s = rk4_step(s, cmd, p, 0.02);
    ASSERT_LT(std::abs(s.position.z() - 1.0), 0.01);
    ASSERT_LT(std::abs(s.velocity.z()), 0.01);
  }
}

TEST(DenormalizeAction, CenterIsHover) {
  const std::array<double, 3> zero{0.0, 0.0, 0.0};
  const ControlInput c = denormalize_action(zero, ActionMode::kSpatial);
  EXPECT_EQ(c.pwm, 42000.0);
  EXPECT_EQ(c.roll_cmd, 0.0);
  EXPECT_EQ(c.pitch_cmd, 0.0);
  EXPECT_EQ(c.yaw_rate_cmd, 0.0);
}

TEST(DenormalizeAction, Extremes) {
  const std::array<double, 2> raw{1.0, -1.0};
  const ControlInput c = denormalize_action(raw, ActionMode::kPlanar);
  EXPECT_EQ(c.pwm, 58500.0);
  EXPECT_NEAR(c.pitch_cmd, -30.0 * kPi / 180.0, 1e-15);
  EXPECT_EQ(c.roll_cmd, 0.0);
  const std::array<double, 2> low{-1.0, 0.0};
  EXPECT_EQ(denormalize_action(low, ActionMode::kPlanar).pwm, 25500.0);
}

TEST(DenormalizeAction, ClipsToCommandBounds) {
  ActionScaling wide;
  wide.pwm_scale = 40000.0;
  const std::array<double, 2> hi{1.0, 1.0}, lo{-1.0, -1.0};
  EXPECT_EQ(denormalize_action(hi, ActionMode::kPlanar, wide).pwm, kPwmMax);
  EXPECT_EQ(denormalize_action(lo, ActionMode::kPlanar, wide).pwm, kPwmMin);
}

TEST(DenormalizeAction, MonotoneAndBounded) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    std::array<double, 3> a{u(rng), u(rng), u(rng)};
    std::array<double, 3> b = a;
    const int k = i % 3;
    b[k] = std::min(1.0, a[k] + std::abs(u(rng)));
    const ControlInput ca = denormalize_action(a, ActionMode::kSpatial);
    const ControlInput cb = denormalize_action(b, ActionMode::kSpatial);
    EXPECT_TRUE(ca.within_bounds());
    EXPECT_TRUE(cb.within_bounds());
    const std::array<double, 3> va{ca.pwm, ca.roll_cmd, ca.pitch_cmd};
    const std::array<double, 3> vb{cb.pwm, cb.roll_cmd, cb.pitch_cmd};
    EXPECT_LE(va[k], vb[k]);
  }
}

TEST(ModelParams, ValidateRejectsNonPhysical) {
  ModelParams p = params();
  p.mass = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = params();
  p.attitude_tau = -1.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = params();
  p.thrust_pole = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  EXPECT_NO_THROW(params().validate());
}

}  // namespace
}  // namespace quadland
