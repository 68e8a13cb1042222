#include "tricopter/mixer.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tricopter;

namespace {

const MixerConfigd kDefaults;

}  // namespace

TEST(Mix, PassThroughAtZeroOutputs) {
  EXPECT_EQ(mix(1500.0, 0.0, 0.0, 0.0, kDefaults), (ActuatorCommandd{1500, 1500, 1500, 0}));
}

TEST(Mix, RollSplitsFrontRotors) {
  EXPECT_EQ(mix(1500.0, 50.0, 0.0, 0.0, kDefaults), (ActuatorCommandd{1550, 1450, 1500, 0}));
}

TEST(Mix, PitchAndYawFollowMixMatrix) {
  // Row-by-row evaluation of the mix matrix [1 -0.5; -1 -0.5; 0 1] and servo gain 0.1.
  const auto cmd = mix(1500.0, 20.0, 40.0, 100.0, kDefaults);
  EXPECT_DOUBLE_EQ(cmd.pwm_front_left, 1500 + 20 - 0.5 * 40);
  EXPECT_DOUBLE_EQ(cmd.pwm_front_right, 1500 - 20 - 0.5 * 40);
  EXPECT_DOUBLE_EQ(cmd.pwm_tail, 1500 + 40);
  EXPECT_DOUBLE_EQ(cmd.servo_angle, 10.0);
}

TEST(Mix, SaturatesAtUpperBound) {
  const auto cmd = mix(1950.0, 100.0, 0.0, 0.0, kDefaults);
  EXPECT_EQ(cmd.pwm_front_left, 2000.0);
  EXPECT_EQ(cmd.pwm_front_right, 1850.0);
  EXPECT_EQ(mix(1500.0, 0.0, 0.0, 1000.0, kDefaults).servo_angle, 45.0);
  EXPECT_EQ(mix(1500.0, 0.0, 0.0, -1000.0, kDefaults).servo_angle, -45.0);
}

TEST(Mix, RejectsThrottleOutsideRange) {
  for (double t : {999.0, 2000.5, std::nan("")}) {
    try {
      mix(t, 0.0, 0.0, 0.0, kDefaults);
      FAIL() << t;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::invalid_throttle);
    }
  }
  EXPECT_NO_THROW(mix(1000.0, 0.0, 0.0, 0.0, kDefaults));
  EXPECT_NO_THROW(mix(2000.0, 0.0, 0.0, 0.0, kDefaults));
}

class MixProperties : public ::testing::Test {
 protected:
  std::mt19937_64 gen{31};
  std::uniform_real_distribution<double> out{-800, 800};
  std::uniform_real_distribution<double> throttle{1000, 2000};
};

TEST_F(MixProperties, OutputsStayInRange) {
  for (int i = 0; i < 20000; ++i) {
    const auto c = mix(throttle(gen), out(gen), out(gen), out(gen), kDefaults);
    for (double p : {c.pwm_front_left, c.pwm_front_right, c.pwm_tail}) {
      ASSERT_GE(p, 1000.0);
      ASSERT_LE(p, 2000.0);
    }
    ASSERT_LE(std::abs(c.servo_angle), 45.0);
  }
}

TEST_F(MixProperties, RollAntisymmetry) {
  for (int i = 0; i < 20000; ++i) {
    const double t = throttle(gen), r = out(gen);
    const auto plus = mix(t, r, 0.0, 0.0, kDefaults);
    const auto minus = mix(t, -r, 0.0, 0.0, kDefaults);
    ASSERT_EQ(plus.pwm_front_left, minus.pwm_front_right);
    ASSERT_EQ(plus.pwm_front_right, minus.pwm_front_left);
    ASSERT_EQ(plus.pwm_tail, minus.pwm_tail);
    ASSERT_EQ(plus.servo_angle, minus.servo_angle);
  }
}

TEST_F(MixProperties, YawOnlyMovesServo) {
  for (int i = 0; i < 20000; ++i) {
    const double t = throttle(gen), r = out(gen), p = out(gen);
    const auto a = mix(t, r, p, out(gen), kDefaults);
    const auto b = mix(t, r, p, out(gen), kDefaults);
    ASSERT_EQ(a.pwm(), b.pwm());
  }
}

TEST_F(MixProperties, Monotonicity) {
  for (int i = 0; i < 20000; ++i) {
    const double t = throttle(gen), r = out(gen), p = out(gen), y = out(gen);
    double lo = out(gen), hi = out(gen);
    if (lo > hi) std::swap(lo, hi);
    // front_left rises with roll, front_right falls, tail rises with pitch, servo with yaw
    ASSERT_LE(mix(t, lo, p, y, kDefaults).pwm_front_left, mix(t, hi, p, y, kDefaults).pwm_front_left);
    ASSERT_GE(mix(t, lo, p, y, kDefaults).pwm_front_right, mix(t, hi, p, y, kDefaults).pwm_front_right);
    ASSERT_LE(mix(t, r, lo, y, kDefaults).pwm_tail, mix(t, r, hi, y, kDefaults).pwm_tail);
    ASSERT_GE(mix(t, r, lo, y, kDefaults).pwm_front_left, mix(t, r, hi, y, kDefaults).pwm_front_left);
    ASSERT_LE(mix(t, r, p, lo, kDefaults).servo_angle, mix(t, r, p, hi, kDefaults).servo_angle);
    double t2 = throttle(gen), t1 = throttle(gen);
    if (t1 > t2) std::swap(t1, t2);
    ASSERT_LE(mix(t1, r, p, y, kDefaults).pwm_tail, mix(t2, r, p, y, kDefaults).pwm_tail);
  }
}

TEST_F(MixProperties, SaturationIsIdempotent) {
  std::uniform_real_distribution<double> wild(-5000, 5000);
  for (int i = 0; i < 20000; ++i) {
    const ActuatorCommandd raw{wild(gen), wild(gen), wild(gen), wild(gen)};
    const auto once = saturate(raw, kDefaults);
    ASSERT_EQ(saturate(once, kDefaults), once);
  }
}

TEST(PwmEncode, LinearMap) {
  EXPECT_EQ(pwm_encode(0.0), 1000.0);
  EXPECT_EQ(pwm_encode(1.0), 2000.0);
  EXPECT_EQ(pwm_encode(0.5), 1500.0);
  EXPECT_THROW(pwm_encode(1.01), Error);
  EXPECT_THROW(pwm_encode(-0.01), Error);
}

TEST(MixerConfig, Validation) {
  MixerConfigd cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.pwm_min = 2000;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.servo_gain = INFINITY;
  EXPECT_THROW(cfg.validate(), Error);
}
