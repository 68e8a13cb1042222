#include "tricopter/fusion.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

using namespace tricopter;

namespace {

AttitudeEstimated with_roll(double roll) {
  AttitudeEstimated e;
  e.angle.x() = roll;
  return e;
}

ImuSample<double> sample_at(double t, double roll_deg, double gyro_roll = 0.0) {
  ImuSample<double> s;
  s.t = t;
  s.gyro = {gyro_roll, 0, 0};
  s.accel = {0, std::sin(deg2rad(roll_deg)), std::cos(deg2rad(roll_deg))};
  return s;
}

const FilterConfigd kDefaultFilter{0.93, 0.01};

}  // namespace

TEST(IntegrateGyro, Examples) {
  EXPECT_DOUBLE_EQ(integrate_gyro(0.0, 100.0, 0.01), 1.0);
  EXPECT_EQ(integrate_gyro(0.0, 0.0, 0.01), 0.0);
  double a = 0;
  for (int k = 0; k < 6000; ++k) a = integrate_gyro(a, 0.5, 0.01);
  EXPECT_NEAR(a, 0.5 * 60.0, 1e-9);
}

TEST(IntegrateGyro, WrapsAcrossSeam) {
  EXPECT_NEAR(integrate_gyro(179.5, 100.0, 0.01), -179.5, 1e-12);
  EXPECT_NEAR(integrate_gyro(-179.5, -100.0, 0.01), 179.5, 1e-12);
}

TEST(ComplementaryUpdate, Examples) {
  EXPECT_NEAR(complementary_update(with_roll(30), 0.0, 30.0, kDefaultFilter, Axis::roll).angle.x(), 30.0, 1e-12);
  EXPECT_NEAR(complementary_update(with_roll(0), 0.0, 100.0, kDefaultFilter, Axis::roll).angle.x(), 7.0, 1e-12);
  // 0.93 * (90 + 10 * 0.01) + 0.07 * 90
  EXPECT_NEAR(complementary_update(with_roll(90), 10.0, 90.0, kDefaultFilter, Axis::roll).angle.x(), 90.093, 1e-12);
}

TEST(ComplementaryUpdate, OnlyTouchesItsAxisAndAdvancesTime) {
  AttitudeEstimated e;
  e.angle = {1, 2, 3};
  e.t = 0.5;
  const auto next = complementary_update(e, 5.0, 20.0, kDefaultFilter, Axis::pitch);
  EXPECT_EQ(next.angle.x(), 1.0);
  EXPECT_EQ(next.angle.z(), 3.0);
  EXPECT_NE(next.angle.y(), 2.0);
  EXPECT_DOUBLE_EQ(next.t, 0.51);
}

TEST(ComplementaryUpdate, RejectsNonFiniteInput) {
  try {
    complementary_update(with_roll(0), std::nan(""), 0.0, kDefaultFilter, Axis::roll);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_sample);
  }
  EXPECT_THROW(complementary_update(with_roll(0), 0.0, std::numeric_limits<double>::infinity(), kDefaultFilter, Axis::roll), Error);
}

TEST(ComplementaryUpdate, BlendsTheShortWayAcrossSeam) {
  // 179 and -179 are 2 deg apart; the blend must not drag through zero.
  const double out = complementary_update(with_roll(179), 0.0, -179.0, kDefaultFilter, Axis::roll).angle.x();
  EXPECT_NEAR(wrap_degrees(out - 179.14), 0.0, 1e-9);
}

TEST(ComplementaryUpdate, FixedPointProperty) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> angle(-179.9, 180.0), alpha(0, 1);
  for (int i = 0; i < 10000; ++i) {
    const double a = angle(gen);
    const FilterConfigd cfg{alpha(gen), 0.01};
    EXPECT_NEAR(complementary_update(with_roll(a), 0.0, a, cfg, Axis::roll).angle.x(), a, 1e-12);
  }
}

TEST(ComplementaryUpdate, GeometricConvergenceByAlphaPerStep) {
  const double target = 42.0;
  AttitudeEstimated e = with_roll(-10.0);
  double previous_gap = std::abs(e.angle.x() - target);
  for (int n = 1; n <= 200; ++n) {
    e = complementary_update(e, 0.0, target, kDefaultFilter, Axis::roll);
    const double gap = std::abs(e.angle.x() - target);
    ASSERT_NEAR(gap, (target + 10.0) * std::pow(0.93, n), 1e-9) << "step " << n;
    if (previous_gap > 1e-6) {
      ASSERT_NEAR(gap / previous_gap, 0.93, 1e-6);
    }
    previous_gap = gap;
  }
}

TEST(ComplementaryUpdate, ConvexityBound) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> v(-170, 170), alpha(0, 1);
  for (int i = 0; i < 10000; ++i) {
    // Within a half-turn the short way round is the direct way.
    double lo = v(gen), hi = v(gen);
    if (lo > hi) std::swap(lo, hi);
    hi = std::min(hi, lo + 180.0);
    std::uniform_real_distribution<double> inside(lo, hi);
    const double est = inside(gen), acc = inside(gen);
    const double out = complementary_update(with_roll(est), 0.0, acc, FilterConfigd{alpha(gen), 0.01}, Axis::roll)
                           .angle.x();
    ASSERT_GE(out, lo - 1e-12);
    ASSERT_LE(out, hi + 1e-12);
  }
}

TEST(ComplementaryUpdate, BiasSteadyStateMatchesClosedForm) {
  // x = alpha (x + b dt) + (1 - alpha) A  =>  x - A = alpha b dt / (1 - alpha)
  const double bias = 0.5, truth = 25.0;
  AttitudeEstimated e = with_roll(truth);
  for (int k = 0; k < 2000; ++k) e = complementary_update(e, bias, truth, kDefaultFilter, Axis::roll);
  EXPECT_NEAR(e.angle.x() - truth, 0.93 * bias * 0.01 / 0.07, 1e-6);
}

TEST(LowpassBlend, Examples) {
  EXPECT_NEAR(lowpass_blend(0.0, 100.0, 0.02), 2.0, 1e-12);
  for (double beta : {0.0, 0.02, 0.5, 1.0}) EXPECT_EQ(lowpass_blend(50.0, 50.0, beta), 50.0);
}

TEST(LowpassBlend, IteratedMatchesGeometricClosedForm) {
  const double a = 80.0, x0 = -20.0, beta = 0.02;
  double x = x0;
  for (int n = 1; n <= 100; ++n) {
    x = lowpass_blend(x, a, beta);
    if (n == 1 || n == 10 || n == 100) {
      EXPECT_NEAR(x, a + (x0 - a) * std::pow(1 - beta, n), 1e-9) << n;
    }
  }
}

TEST(LowpassBlend, RejectsBetaOutsideUnitInterval) {
  EXPECT_THROW(lowpass_blend(0.0, 1.0, 1.5), Error);
  EXPECT_THROW(lowpass_blend(0.0, 1.0, -0.1), Error);
}

TEST(Decomposition, UpdateEqualsBlendOfIntegration) {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> angle(-180, 180), rate(-500, 500), alpha(0, 1), dt(0.001, 0.05);
  for (int i = 0; i < 20000; ++i) {
    const FilterConfigd cfg{alpha(gen), dt(gen)};
    const double est = angle(gen), g = rate(gen), acc = angle(gen);
    const double lhs = complementary_update(with_roll(est), g, acc, cfg, Axis::roll).angle.x();
    const double rhs = lowpass_blend(integrate_gyro(est, g, cfg.dt), acc, 1 - cfg.alpha);
    ASSERT_LE(std::abs(wrap_degrees(lhs - rhs)), 1e-12) << est << " " << g << " " << acc;
  }
}

TEST(BatchEstimate, EmptyInput) {
  EXPECT_TRUE(batch_estimate<double>({}, kDefaultFilter, AttitudeEstimated{}).empty());
}

TEST(BatchEstimate, SingleSampleFixedPoint) {
  const std::vector<ImuSample<double>> samples{sample_at(0.01, 30.0)};
  const auto out = batch_estimate<double>(samples, kDefaultFilter, with_roll(30.0));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_NEAR(out[0].angle.x(), 30.0, 1e-12);
}

TEST(BatchEstimate, ConstantAccelerometerConvergesGeometrically) {
  const double a = 40.0;
  std::vector<ImuSample<double>> samples;
  for (int k = 1; k <= 100; ++k) samples.push_back(sample_at(k * 0.01, a));
  const auto out = batch_estimate<double>(samples, kDefaultFilter, AttitudeEstimated{});
  ASSERT_EQ(out.size(), samples.size());
  EXPECT_NEAR(out.back().angle.x(), a * (1 - std::pow(0.93, 100)), 1e-9);
  EXPECT_DOUBLE_EQ(out.back().t, 1.0);
}

TEST(BatchEstimate, IsPureFunctionOfInputs) {
  std::vector<ImuSample<double>> samples;
  for (int k = 1; k <= 50; ++k) samples.push_back(sample_at(k * 0.01, 10.0 + k, 3.0));
  const auto a = batch_estimate<double>(samples, kDefaultFilter, AttitudeEstimated{});
  const auto b = batch_estimate<double>(samples, kDefaultFilter, AttitudeEstimated{});
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].angle, b[i].angle);
}

TEST(BatchEstimate, RejectsOutOfOrderAndIrregularTimestamps) {
  std::vector<ImuSample<double>> samples{sample_at(0.02, 0), sample_at(0.01, 0)};
  try {
    batch_estimate<double>(samples, kDefaultFilter, AttitudeEstimated{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::non_monotonic_input);
  }
  samples = {sample_at(0.01, 0), sample_at(0.0215, 0)};
  try {
    batch_estimate<double>(samples, kDefaultFilter, AttitudeEstimated{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::irregular_spacing);
  }
  samples = {sample_at(0.01, 0), sample_at(0.0205, 0)};
  EXPECT_NO_THROW(batch_estimate<double>(samples, kDefaultFilter, AttitudeEstimated{}));
}

TEST(FilterConfig, Validation) {
  EXPECT_THROW((FilterConfigd{1.5, 0.01}.validate()), Error);
  EXPECT_THROW((FilterConfigd{0.9, 0.0}.validate()), Error);
  EXPECT_NO_THROW((FilterConfigd{0.98, 0.01}.validate()));
}

TEST(FusionFloat, TemplateWorksForFloat) {
  AttitudeEstimate<float> e;
  e = complementary_update(e, 0.0f, 100.0f, FilterConfig<float>{}, Axis::yaw);
  EXPECT_NEAR(e.angle.z(), 7.0f, 1e-5f);
}
