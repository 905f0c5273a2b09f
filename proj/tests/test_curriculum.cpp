#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "quadland/curriculum.hpp"

namespace quadland {
namespace {

constexpr double kFinalTilt = -std::numbers::pi / 7.0;

CurriculumState run_episodes(const CurriculumSchedule& s, int episodes,
                             std::int64_t steps_each) {
  CurriculumState c = initial_curriculum(s);
  for (int i = 0; i < episodes; ++i) c = advance_episode(c, steps_each, s);
  return c;
}

TEST(GoalTolerance, Values) {
  const GoalTolerance a = goal_tolerance(0.25);
  EXPECT_EQ(a, (GoalTolerance{0.25, 0.25, 1.5, 1.5, 0.0625}));
  const GoalTolerance b = goal_tolerance(0.10);
  EXPECT_DOUBLE_EQ(b[2], 1.0);
  EXPECT_DOUBLE_EQ(b[4], 0.025);
  const GoalTolerance c = goal_tolerance(0.15);
  EXPECT_EQ(c[2], 1.5);
  EXPECT_DOUBLE_EQ(c[4], 0.0375);
}

TEST(GoalTolerance, NonDecreasingInD) {
  GoalTolerance prev = goal_tolerance(0.10);
  for (int i = 1; i <= 150; ++i) {
    const GoalTolerance next = goal_tolerance(0.10 + i * 0.001);
    for (int k = 0; k < 5; ++k) EXPECT_GE(next[k], prev[k]);
    prev = next;
  }
}

TEST(Curriculum, EpisodeZero) {
  const CurriculumState c = initial_curriculum(CurriculumSchedule{});
  EXPECT_EQ(c.tolerance, 0.25);
  EXPECT_EQ(c.goal_tilt, 0.0);
  EXPECT_FALSE(c.platform_active);
  EXPECT_EQ(c.init_halfwidth_x, 0.1);
  EXPECT_EQ(c.init_halfwidth_z, 0.1);
  EXPECT_EQ(c.gamma, 0.97);
}

TEST(Curriculum, ToleranceFloorAfterFiveThousandEpisodes) {
  const CurriculumSchedule s;
  EXPECT_DOUBLE_EQ(run_episodes(s, 2500, 1).tolerance, 0.175);
  EXPECT_EQ(run_episodes(s, 5000, 1).tolerance, 0.10);
  EXPECT_EQ(run_episodes(s, 6000, 1).tolerance, 0.10);
}

TEST(Curriculum, InitBoxGrowth) {
  const CurriculumSchedule s;
  const CurriculumState c = run_episodes(s, 6000, 1);
  EXPECT_NEAR(c.init_halfwidth_x, 1.1, 1e-12);
  EXPECT_NEAR(c.init_halfwidth_z, 0.85, 1e-12);
  const CurriculumState capped = run_episodes(s, 40000, 1);
  EXPECT_EQ(capped.init_halfwidth_x, 3.4);
  EXPECT_EQ(capped.init_halfwidth_z, 1.2);
}

TEST(Curriculum, TiltFrozenUntilTimestepGate) {
  const CurriculumSchedule s;
  // 2000 episodes of 200 steps end exactly at 4e5.
  const CurriculumState at_gate = run_episodes(s, 2000, 200);
  EXPECT_EQ(at_gate.timestep_total, 400000);
  EXPECT_EQ(at_gate.goal_tilt, 0.0);
  const CurriculumState past = advance_episode(at_gate, 1, s);
  EXPECT_EQ(past.tilt_episode_count, 1);
  EXPECT_DOUBLE_EQ(past.goal_tilt, kFinalTilt / 6000.0);
}

TEST(Curriculum, TiltReachesFinalAfterSixThousandTiltEpisodes) {
  CurriculumSchedule s;
  s.tilt_start_timesteps = 0;
  EXPECT_EQ(run_episodes(s, 6000, 1).goal_tilt, kFinalTilt);
  EXPECT_EQ(run_episodes(s, 9000, 1).goal_tilt, kFinalTilt);
  EXPECT_DOUBLE_EQ(run_episodes(s, 3000, 1).goal_tilt, kFinalTilt / 2.0);
}

TEST(Curriculum, PlatformAppearsAfterGate) {
  const CurriculumSchedule s;
  const CurriculumState at_gate = run_episodes(s, 4000, 200);
  EXPECT_EQ(at_gate.timestep_total, 800000);
  EXPECT_FALSE(at_gate.platform_active);
  EXPECT_TRUE(advance_episode(at_gate, 1, s).platform_active);
}

TEST(Curriculum, MonotoneUnderRandomEpisodeLengths) {
  const CurriculumSchedule s;
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> len(1, 300);
  CurriculumState c = initial_curriculum(s);
  for (int i = 0; i < 20000; ++i) {
    const CurriculumState n = advance_episode(c, len(rng), s);
    ASSERT_LE(n.tolerance, c.tolerance);
    ASSERT_GE(n.tolerance, 0.10);
    ASSERT_LE(n.goal_tilt, c.goal_tilt);
    ASSERT_GE(n.goal_tilt, kFinalTilt);
    ASSERT_GE(n.init_halfwidth_x, c.init_halfwidth_x);
    ASSERT_GE(n.init_halfwidth_z, c.init_halfwidth_z);
    ASSERT_TRUE(!c.platform_active || n.platform_active);
    ASSERT_EQ(n.platform_active, n.timestep_total > 800000);
    if (n.timestep_total <= 400000) {
      ASSERT_EQ(n.goal_tilt, 0.0);
    }
    c = n;
  }
  EXPECT_TRUE(curriculum_complete(c, s));
}

TEST(Curriculum, CompletedStateMatchesSchedule) {
  const CurriculumSchedule s;
  const CurriculumState c = completed_curriculum(s);
  EXPECT_TRUE(curriculum_complete(c, s));
  EXPECT_EQ(c.goal_tilt, kFinalTilt);
  EXPECT_EQ(c.tolerance, 0.10);
  EXPECT_TRUE(c.platform_active);
  EXPECT_FALSE(curriculum_complete(initial_curriculum(s), s));
}

TEST(GammaSchedule, Checkpoints) {
  EXPECT_EQ(gamma_schedule(1), 0.97);
  EXPECT_EQ(gamma_schedule(100), 0.97);
  EXPECT_EQ(gamma_schedule(300), 0.97);
  EXPECT_DOUBLE_EQ(gamma_schedule(400), 0.98);
  EXPECT_EQ(gamma_schedule(500), 0.99);
  EXPECT_EQ(gamma_schedule(5000), 0.99);
}

TEST(GammaSchedule, NonDecreasing) {
  double prev = gamma_schedule(0);
  for (int i = 1; i < 700; ++i) {
    const double g = gamma_schedule(i);
    EXPECT_GE(g, prev);
    EXPECT_GE(g, 0.97);
    EXPECT_LE(g, 0.99);
    prev = g;
  }
}

TEST(Schedules, ValidateRejectsBadValues) {
  CurriculumSchedule s;
  s.tolerance_end = 0.3;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  GammaSchedule g;
  g.end = 0.9;
  EXPECT_THROW(g.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace quadland
