#include <array>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "regcover/tensor.hpp"

using namespace regcover;

namespace {

const double kPi = std::numbers::pi;

// cos of the angle between a 2x2x2 tensor and the rank-1 cone: spectral
// norm over Frobenius norm. Spectral norm by the higher-order power method
// started from the leading singular vectors of each unfolding.
double rank1_cosine(const std::array<double, 8>& T) {
  auto at = [&](int i, int j, int k) { return T[4 * i + 2 * j + k]; };
  auto lead = [](double a, double b, double c) {
    // leading eigenvector of [[a, b], [b, c]]
    const double theta = 0.5 * std::atan2(2 * b, a - c);
    return std::array<double, 2>{std::cos(theta), std::sin(theta)};
  };
  std::array<std::array<double, 2>, 3> vec;
  for (int mode = 0; mode < 3; ++mode) {
    double g00 = 0, g01 = 0, g11 = 0;
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        double e0, e1;
        if (mode == 0) { e0 = at(0, x, y); e1 = at(1, x, y); }
        else if (mode == 1) { e0 = at(x, 0, y); e1 = at(x, 1, y); }
        else { e0 = at(x, y, 0); e1 = at(x, y, 1); }
        g00 += e0 * e0;
        g01 += e0 * e1;
        g11 += e1 * e1;
      }
    }
    vec[mode] = lead(g00, g01, g11);
  }
  double value = 0.0;
  for (int it = 0; it < 30; ++it) {
    for (int mode = 0; mode < 3; ++mode) {
      std::array<double, 2> next{0, 0};
      for (int a = 0; a < 2; ++a) {
        for (int x = 0; x < 2; ++x) {
          for (int y = 0; y < 2; ++y) {
            if (mode == 0) next[a] += at(a, x, y) * vec[1][x] * vec[2][y];
            else if (mode == 1) next[a] += at(x, a, y) * vec[0][x] * vec[2][y];
            else next[a] += at(x, y, a) * vec[0][x] * vec[1][y];
          }
        }
      }
      value = std::hypot(next[0], next[1]);
      if (value == 0.0) return 0.0;
      vec[mode] = {next[0] / value, next[1] / value};
    }
  }
  double frob = 0.0;
  for (double t : T) frob += t * t;
  return value / std::sqrt(frob);
}

}  // namespace

TEST(TensorShape, Derived) {
  const TensorShape s({2, 3, 4});
  EXPECT_EQ(s.order(), 3);
  EXPECT_EQ(s.sum(), 9);
  EXPECT_DOUBLE_EQ(s.mean(), 3.0);
  EXPECT_EQ(s.min_dim(), 2);
  EXPECT_DOUBLE_EQ(s.total(), 24.0);
  EXPECT_NEAR(s.log_total(), std::log(24.0), 1e-14);
  EXPECT_THROW(TensorShape({3}), InputError);
  EXPECT_THROW(TensorShape({3, 1}), InputError);
}

TEST(CpGeneral, Examples) {
  const TensorShape s222({2, 2, 2});
  EXPECT_NEAR(cp_covering_log_general(s222, 1, 1, 0.5, 3).value, 60 * std::log(2.0), 1e-12);
  EXPECT_NEAR(cp_covering_log_general(s222, 1, 1, 0.5, 3).value, 41.589, 5e-4);
  EXPECT_NEAR(cp_covering_log_general(s222, 1, 1, 1, 3).value, 37.430, 5e-4);
  // The printed 95.742 rounds the last term; 12 log 4 + 72 log 3 = 95.7356.
  const double v = cp_covering_log_general(TensorShape({3, 3}), 2, 2, 0.5, 3).value;
  EXPECT_NEAR(v, 12 * std::log(4.0) + 72 * std::log(3.0), 1e-12);
  EXPECT_NEAR(v, 95.742, 0.01);
  EXPECT_THROW(cp_covering_log_general(s222, 1, 1, 2.5, 3), InputError);
  EXPECT_THROW(cp_covering_log_general(s222, 0, 1, 0.5, 3), InputError);
}

TEST(CpGeneral, SphereVariantDropsOneFromTheLogCoefficient) {
  const TensorShape s({2, 2, 2});
  const auto r = cp_covering_log_general(s, 1, 5.0, 0.5, 3, true);
  EXPECT_NEAR(r.value, 5 * std::log(2.0) + 54 * std::log(2.0), 1e-12);
  EXPECT_FALSE(r.notes.empty());
}

TEST(CpLowRank, Examples) {
  const TensorShape s222({2, 2, 2});
  EXPECT_NEAR(cp_covering_log_lowrank(s222, 1, 1, 0.5, 3, 3).value,
              6 * std::log(18.0) - 3 * std::log(3.0), 1e-12);
  // printed as 14.047; the expression evaluates to 14.0464
  EXPECT_NEAR(cp_covering_log_lowrank(s222, 1, 1, 0.5, 3, 3).value, 14.047, 1e-3);
  EXPECT_NEAR(cp_covering_log_lowrank(s222, 1, 1, 0.5, 1, 3).value, 6 * std::log(6.0), 1e-12);
  EXPECT_NEAR(cp_covering_log_lowrank(TensorShape({4, 4}), 2, 1, 0.1, 3, 3).value, 89.991, 5e-3);
  EXPECT_THROW(cp_covering_log_lowrank(s222, 3, 1, 0.5, 3, 3), InputError);
  EXPECT_THROW(cp_covering_log_lowrank(s222, 1, 1, 0.5, 0.5, 3), InputError);
}

TEST(CpLowRank, SphereVariantOnlyTouchesTheLogTerm) {
  const TensorShape s({4, 4});
  const auto plain = cp_covering_log_lowrank(s, 2, 1, 0.1, 3, 3);
  const auto sphere = cp_covering_log_lowrank(s, 2, 7, 0.1, 3, 3, true);
  EXPECT_NEAR(plain.value - sphere.value, std::log(3 * 2 * 1 / 0.1), 1e-12);
  EXPECT_FALSE(sphere.notes.empty());
}

TEST(CpBounds, FiniteAndNonnegativeForEpsUpToT) {
  for (auto dims : {std::vector<int>{2, 2}, {3, 4}, {2, 2, 2}, {5, 5, 5}}) {
    const TensorShape s(dims);
    for (int r = 1; r <= s.min_dim(); ++r) {
      for (double eps : {0.01, 0.3, 1.0}) {
        const double g = cp_covering_log_general(s, r, 1.0, eps).value;
        const double l = cp_covering_log_lowrank(s, r, 1.0, eps).value;
        EXPECT_TRUE(std::isfinite(g));
        EXPECT_TRUE(std::isfinite(l));
        EXPECT_GE(g, 0.0);
        EXPECT_GE(l, 0.0);
      }
    }
  }
}

TEST(CpAngle, ReproducesPublishedExponents) {
  const TensorShape s({100, 100, 100});
  const double a = cp_angle_probability_log(s, 30, kPi / 6, 3, 3).value;
  EXPECT_GE(a, -38600);
  EXPECT_LE(a, -38550);
  EXPECT_NEAR(a, -38567, 1.0);
  const double b = cp_angle_probability_log(s, 30, kPi / 7, 3, 3).value;
  EXPECT_NEAR(b, -139455, 20);
}

TEST(CpAngle, SmallCase) {
  const double v = cp_angle_probability_log(TensorShape({2, 2, 2}), 1, kPi / 6, 1, 1).value;
  EXPECT_NEAR(v, 7 * std::log(std::sin(kPi / 3)) - 5 * std::log(kPi / 6) + 6 * std::log(3.0) -
                     0.5 * std::log(8.0),
              1e-12);
  EXPECT_NEAR(v, 7.780, 5e-3);
}

TEST(CpAngle, Preconditions) {
  EXPECT_THROW(cp_angle_probability_log(TensorShape({2, 2, 2}), 1, kPi / 6 + 1e-9), InputError);
  EXPECT_THROW(cp_angle_probability_log(TensorShape({2, 2}), 1, kPi / 8), InputError);
  EXPECT_THROW(cp_angle_probability_log(TensorShape({2, 2, 2}), 3, kPi / 8), InputError);
  EXPECT_NO_THROW(cp_angle_probability_log(TensorShape({2, 2, 2}), 1, kPi / 6));
}

// d/d eps of the bound is 2 (N - 1) cot(2 eps) - (r d nbar - 1)/eps, which is
// >= 0 on (0, pi/6] once (N - 1) (pi/3) cot(pi/3) >= r d nbar - 1.
TEST(CpAngle, NondecreasingInEpsWhenTheExponentDominates) {
  const std::vector<std::pair<std::vector<int>, int>> cases = {
      {{3, 3, 3}, 1}, {{4, 4}, 1}, {{5, 5, 5}, 2}, {{10, 10, 10}, 3}, {{100, 100, 100}, 30}};
  for (const auto& [dims, r] : cases) {
    const TensorShape s(dims);
    const double p = static_cast<double>(r) * s.sum();
    ASSERT_GE((s.total() - 1) * (kPi / 3) / std::tan(kPi / 3), p - 1);
    double prev = -std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 200; ++k) {
      const double eps = kPi / 6 * k / 200;
      const double v = cp_angle_probability_log(s, r, eps).value;
      EXPECT_GE(v, prev - 1e-9 * std::abs(prev));
      prev = v;
    }
  }
}

TEST(CpAngle, SmallestCubeIsNotMonotoneNearTheEndpoint) {
  // (2,2,2), r = 1: N - 1 = 7 falls short of 1.654 (r d nbar - 1) = 8.27.
  const TensorShape s({2, 2, 2});
  EXPECT_LT(cp_angle_probability_log(s, 1, kPi / 6).value,
            cp_angle_probability_log(s, 1, kPi / 6 - 0.01).value);
}

// Angle to rank 1 for Gaussian 2x2x2 tensors against the bound. The 2x2
// matrix case violates the N >= 8 hypothesis, so the smallest admissible
// cube is used.
TEST(CpAngle, MonteCarloFractionBelowBound) {
  const TensorShape s({2, 2, 2});
  const int samples = 1000000;
  for (double eps : {kPi / 6, kPi / 8}) {
    SplitMix64 rng(77);
    const double cos_eps = std::cos(eps);
    long hits = 0;
    for (int k = 0; k < samples; ++k) {
      std::array<double, 8> T;
      for (double& t : T) t = rng.normal();
      if (rank1_cosine(T) >= cos_eps) ++hits;
    }
    const double bound = cp_angle_probability_log(s, 1, eps, 3, 3).value;
    ASSERT_GT(hits, 0);
    EXPECT_LE(std::log(static_cast<double>(hits) / samples), bound);
  }
}
