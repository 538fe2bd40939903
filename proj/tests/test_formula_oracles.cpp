// Straight-line recomputations of the closed-form example values. Nothing
// here calls a library helper to build the expected number.
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "regcover/regcover.hpp"

using namespace regcover;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kRel = 1e-9;

void expect_rel(double actual, double expected) {
  EXPECT_NEAR(actual, expected, kRel * std::max(1.0, std::abs(expected)));
}

double logp(double x) { return x > 1.0 ? std::log(x) : 0.0; }

double six_over_pi2() { return 6.0 / (kPi * kPi); }

NetArchitecture ratnn_121() {
  NetArchitecture a;
  a.kind = ArchKind::ratnn;
  a.L = 2;
  a.dims = {1, 2, 1};
  a.s = 2;
  a.t = 1.0;
  return a;
}

NetArchitecture relu_net(std::vector<int> dims, std::vector<double> omegas) {
  NetArchitecture a;
  a.kind = ArchKind::relu;
  a.L = static_cast<int>(omegas.size());
  a.dims = std::move(dims);
  a.omegas = std::move(omegas);
  return a;
}

}  // namespace

TEST(Oracle, PolynomialEvaluation) {
  const PolynomialMap curve(1, {{{1.0, {1}}}, {{1.0, {2}}}, {{1.0, {3}}}});
  Eigen::VectorXd t(1);
  t << 2.0;
  const Eigen::VectorXd v = eval_poly_map(curve, t);
  expect_rel(v(0), 2.0);
  expect_rel(v(1), 2.0 * 2.0);
  expect_rel(v(2), 2.0 * 2.0 * 2.0);
  t << 1.0;
  const Eigen::MatrixXd J1 = jacobian(curve, t);
  expect_rel(J1(0, 0), 1.0);
  expect_rel(J1(1, 0), 2.0 * 1.0);
  expect_rel(J1(2, 0), 3.0 * 1.0 * 1.0);

  const PolynomialMap uv(2, {{{1.0, {1, 1}}}, {{1.0, {1, 0}}, {1.0, {0, 1}}}});
  Eigen::VectorXd x(2);
  x << 3.0, -1.0;
  const Eigen::VectorXd w = eval_poly_map(uv, x);
  expect_rel(w(0), 3.0 * -1.0);
  expect_rel(w(1), 3.0 + -1.0);
  const Eigen::MatrixXd J = jacobian(uv, x);
  expect_rel(J(0, 0), -1.0);
  expect_rel(J(0, 1), 3.0);
  expect_rel(J(1, 0), 1.0);
  expect_rel(J(1, 1), 1.0);
}

TEST(Oracle, PomtComponents) {
  expect_rel(pomt_components_log(2, 3).nats, std::log(2.0) + 2 * std::log(3.0));
  expect_rel(pomt_components_log(3, 3).nats, std::log(3.0) + 2 * std::log(5.0));
  expect_rel(pomt_components_log(2, 3).nats, std::log(18.0));
  expect_rel(pomt_components_log(3, 3).nats, std::log(75.0));
}

TEST(Oracle, RegularityProfiles) {
  auto rat = [](int n, int N, int d) { return (n + 1) * std::log(2.0 * N * d + 1.0); };
  expect_rel(profile_rational_image(1, 2, 1).log_K.nats, rat(1, 2, 1));
  expect_rel(profile_rational_image(2, 3, 2).log_K.nats, rat(2, 3, 2));
  expect_rel(profile_rational_image(1, 1, 1).log_K.nats, rat(1, 1, 1));
  EXPECT_EQ(profile_rational_image(2, 3, 2).n, 2);

  expect_rel(profile_semialgebraic(2, 1, 2, 1).log_K.nats,
             2 * std::log(4.0) + std::min(std::log(4.0), std::log(7.0) + std::log(2.0)));
  expect_rel(profile_semialgebraic(3, 2, 3, 2).log_K.nats,
             3 * std::log(6.0) + std::min(2 * std::log(6.0), 2 * std::log(7.0) + std::log(3.0)));

  const RegularityProfile u =
      profile_union({LogReal{std::log(4.0)}, 1}, {LogReal{0.0}, 1});
  expect_rel(u.log_K.nats, std::log(4.0 + 1.0));
  EXPECT_EQ(u.n, 1);

  const std::vector<int> s22{2, 2};
  const std::vector<int> s222{2, 2, 2};
  // ball: ((n+1) log 4d, n) with n = r * sum(n_i), d = order
  expect_rel(profile_cp_tensor(s22, 1, ImageVariant::ball).log_K.nats, 5 * std::log(4.0 * 2));
  EXPECT_EQ(profile_cp_tensor(s22, 1, ImageVariant::ball).n, 4);
  expect_rel(profile_cp_tensor(s222, 1, ImageVariant::ball).log_K.nats, 7 * std::log(4.0 * 3));
  EXPECT_EQ(profile_cp_tensor(s222, 1, ImageVariant::ball).n, 6);
  expect_rel(profile_cp_tensor(s22, 1, ImageVariant::sphere).log_K.nats,
             5 * std::log(4.0 * 2 + 1));
  EXPECT_EQ(profile_cp_tensor(s22, 1, ImageVariant::sphere).n, 3);
}

TEST(Oracle, CoveringBound) {
  expect_rel(covering_bound_log({LogReal{std::log(6.0)}, 1}, 3, 1.0, 0.1).value,
             1 * std::log(2 * 1.0 * 1 * std::pow(3.0, 1.5) / 0.1) + std::log(2.0) + std::log(6.0));
  expect_rel(covering_bound_log({LogReal{std::log(4.0)}, 1}, 2, 1.0, 0.1).value,
             1 * std::log(2 * 1.0 * 1 * std::pow(2.0, 1.5) / 0.1) + std::log(2.0) + std::log(4.0));
}

TEST(Oracle, TubeVolume) {
  auto oracle = [](double logK, int n, int N, double t, double eps, double c) {
    double v = 0.5 * N * std::log(kPi) - std::lgamma(0.5 * N + 1.0) + N * std::log(2.0) +
               (N - n) * std::log(eps) + logK;
    if (n >= 1) v += n * std::log(c * t * std::pow(N, 1.5) * n);
    return v;
  };
  expect_rel(tube_volume_log({LogReal{std::log(4.0)}, 1}, 2, 1.0, 0.1, 3.0).value,
             oracle(std::log(4.0), 1, 2, 1.0, 0.1, 3.0));
  expect_rel(tube_volume_log({LogReal{std::log(6.0)}, 1}, 3, 1.0, 0.01, 3.0).value,
             oracle(std::log(6.0), 1, 3, 1.0, 0.01, 3.0));
  // the written-out form of the first case
  expect_rel(tube_volume_log({LogReal{std::log(4.0)}, 1}, 2, 1.0, 0.1, 3.0).value,
             std::log(kPi) + 2 * std::log(2.0) + std::log(0.1) + std::log(4.0) +
                 std::log(3 * std::pow(2.0, 1.5)));
}

TEST(Oracle, TubeHitProbability) {
  auto oracle = [](int N, int n, int d, double eps, double sigma, double c) {
    return (N - n) * std::log(eps / sigma) + N * std::log(2.0) +
           c * (n * std::log(static_cast<double>(d)) + n * std::log(static_cast<double>(N)));
  };
  expect_rel(tube_hit_probability_log(3, 1, 3, 0.01, 1.0, 3.0).value,
             oracle(3, 1, 3, 0.01, 1.0, 3.0));
  expect_rel(tube_hit_probability_log(3, 1, 3, 0.001, 1.0, 3.0).value,
             oracle(3, 1, 3, 0.001, 1.0, 3.0));
}

TEST(Oracle, DudleyAndWidth) {
  expect_rel(dudley_term(0.0, 1.0, 1.0), std::sqrt(kPi));
  expect_rel(dudley_term(0.0, 1.0, std::exp(1.0)), std::sqrt(kPi) + 1.0);

  expect_rel(width_bound_regular({LogReal{0.0}, 0}, 1, 1.0).value, 2 * 2 * std::sqrt(std::log(2.0)));
  // n = 1: c0 = 2 t n N^{3/2}, kappa = log 2K, C = c0 e^kappa, D = min(2 t sqrt N, C)
  const double c0 = 2 * 1.0 * 1 * std::pow(3.0, 1.5);
  const double C = c0 * 2 * 6.0;
  const double D = std::min(2 * std::sqrt(3.0), C);
  expect_rel(width_bound_regular({LogReal{std::log(6.0)}, 1}, 3, 1.0).value,
             2 * (D * std::sqrt(kPi) + D * std::sqrt(std::log(C / D))));
}

TEST(Oracle, SubgNormDim) {
  EXPECT_EQ(subg_norm_dim(10, 0.01, std::sqrt(2.0), 1, 1),
            static_cast<long>(std::ceil((10 + std::log(100.0)) / (2.0 - 1.0))));
  EXPECT_EQ(subg_norm_dim(1, 0.5, 2.0, 1, 1),
            static_cast<long>(std::ceil((1 + std::log(2.0)) / (4.0 - 1.0))));
}

TEST(Oracle, CpCovering) {
  // r d nbar = r * sum(n_i)
  expect_rel(cp_covering_log_general(TensorShape({2, 2, 2}), 1, 1.0, 0.5, 3).value,
             6 * std::log(1.0 / 0.5) + 3 * 6 * (3 * std::log(2.0)));
  expect_rel(cp_covering_log_general(TensorShape({3, 3}), 2, 2.0, 0.5, 3).value,
             12 * std::log(2.0 / 0.5) + 3 * 12 * (2 * std::log(3.0)));
  expect_rel(cp_covering_log_lowrank(TensorShape({2, 2, 2}), 1, 1.0, 0.5, 3, 3).value,
             6 * std::log(3 * 3 * 1.0 / 0.5) + 3 * 9 * 1 * std::log(1.0) - 3 * 1 * std::log(3.0));
  expect_rel(cp_covering_log_lowrank(TensorShape({4, 4}), 2, 1.0, 0.1, 3, 3).value,
             16 * std::log(3 * 2 * 1.0 / 0.1) + 3 * 4 * 4 * std::log(2.0) - 2 * 4 * std::log(3.0));
  const double e = kPi / 6;
  expect_rel(cp_angle_probability_log(TensorShape({2, 2, 2}), 1, e, 1, 1).value,
             7 * std::log(std::sin(2 * e)) - 5 * std::log(e) + 6 * std::log(1.0 * 3) +
                 1 * 9 * 1 * std::log(1.0) - 0.5 * std::log(8.0) - 3 * 1 * std::log(1.0));
}

TEST(Oracle, Fwht) {
  const std::vector<double> ones = fwht({1, 1, 1, 1});
  expect_rel(ones[0], 2.0);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(ones[i], 0.0, 1e-15);

  // naive H_8 / sqrt(8) with H_ij = (-1)^{popcount(i & j)}
  const std::vector<double> x{0.5, -1.0, 2.0, 3.5, 0.0, -0.25, 1.0, 4.0};
  const std::vector<double> y = fwht(x);
  for (int i = 0; i < 8; ++i) {
    double acc = 0.0;
    for (int j = 0; j < 8; ++j) acc += ((__builtin_popcount(i & j) % 2) ? -1.0 : 1.0) * x[j];
    EXPECT_NEAR(y[i], acc / std::sqrt(8.0), 1e-12);
  }
}

TEST(Oracle, SketchDims) {
  auto subg = [](int n, int d, int N, double eps, double delta) {
    const double Np = std::min<double>(N, std::pow(n, d));
    return static_cast<long>(
        std::ceil((n * std::log(n * d * Np) + std::log(1 / delta)) / (eps * eps)));
  };
  auto sors = [](int n, int d, int N, double eps, double delta) {
    const double Np = std::min<double>(N, std::pow(n, d));
    const double Delta = n * std::log(n * d * Np) * std::log(1 / delta) / (eps * eps);
    const double l2 = Delta > std::exp(1.0) ? std::log(Delta) * std::log(Delta) : 1.0;
    return static_cast<long>(std::ceil(Delta * l2 * std::log(Np / delta)));
  };
  EXPECT_EQ(subg_dim_poly(2, 3, 10, 0.5, 0.01), subg(2, 3, 10, 0.5, 0.01));
  EXPECT_EQ(subg_dim_poly(2, 3, 4, 0.5, 0.01), subg(2, 3, 4, 0.5, 0.01));
  EXPECT_EQ(sors_dim_poly(2, 3, 10, 0.5, 0.01), sors(2, 3, 10, 0.5, 0.01));
  EXPECT_EQ(sors_dim_poly(2, 2, 4, 0.5, 0.1), sors(2, 2, 4, 0.5, 0.1));
  EXPECT_EQ(subg(2, 3, 10, 0.5, 0.01), 50);
  EXPECT_EQ(subg(2, 3, 4, 0.5, 0.01), 44);
  EXPECT_EQ(sors(2, 3, 10, 0.5, 0.01), 23456);
  EXPECT_EQ(sors(2, 2, 4, 0.5, 0.1), 2915);

  auto subg_lip = [](int n, int d, int N, int M, double t, double lip, double tau, double eps,
                     double delta) {
    const double lambda = std::max(1.0, d * N * t * lip / tau);
    const double inner =
        n * std::log(lambda + lambda * eps * std::sqrt((M + std::log(1 / delta)) / n)) +
        std::log(1 / delta);
    return static_cast<long>(std::ceil(inner / (eps * eps)));
  };
  auto sors_lip = [](int n, int d, int N, int M, double t, double lip, double tau, double eps,
                     double delta) {
    const double lambda = std::max(1.0, d * N * t * lip / tau);
    const double Delta = n * std::log(lambda * std::sqrt(M)) * std::log(1 / delta) / (eps * eps);
    const double l2 = Delta > std::exp(1.0) ? std::log(Delta) * std::log(Delta) : 1.0;
    return static_cast<long>(std::ceil(Delta * l2 * std::log(N / delta)));
  };
  LipschitzSketchParams p;
  p.n = 2;
  p.d = 2;
  p.N = 10;
  p.M = 10;
  p.t = 1;
  p.lip = 1;
  p.tau = 0.1;
  p.eps = 0.5;
  p.delta = 0.01;
  EXPECT_EQ(subg_dim_lipschitz(p), subg_lip(2, 2, 10, 10, 1, 1, 0.1, 0.5, 0.01));
  EXPECT_EQ(subg_lip(2, 2, 10, 10, 1, 1, 0.1, 0.5, 0.01), 68);
  p.tau = 1.0;
  EXPECT_EQ(subg_dim_lipschitz(p), subg_lip(2, 2, 10, 10, 1, 1, 1.0, 0.5, 0.01));
  EXPECT_EQ(subg_lip(2, 2, 10, 10, 1, 1, 1.0, 0.5, 0.01), 50);
  p.tau = 0.1;
  p.M = 16;
  p.delta = 0.1;
  EXPECT_EQ(sors_dim_lipschitz(p), sors_lip(2, 2, 10, 16, 1, 1, 0.1, 0.5, 0.1));
  EXPECT_EQ(sors_lip(2, 2, 10, 16, 1, 1, 0.1, 0.5, 0.1), 13138);
}

TEST(Oracle, SketchIsometries) {
  // full-row SORS: sqrt(M/m) = 1 times an orthogonal matrix
  const SketchOperator full = SorsSketch::with_rows(8, {0, 1, 2, 3, 4, 5, 6, 7}, RngSeed{5});
  Eigen::VectorXd x(8);
  x << 1, -2, 0.5, 3, 0, 1, -1, 2;
  expect_rel(apply_sketch(full, x).norm(), std::sqrt(1 + 4 + 0.25 + 9 + 0 + 1 + 1 + 4));

  // distortion on {e_1} is | ||first column|| - 1 |
  const SubGaussianSketch g(4, 4, RngSeed{17});
  const Eigen::MatrixXd S = g.matrix();
  double sq = 0.0;
  for (int i = 0; i < 4; ++i) sq += S(i, 0) * S(i, 0);
  Eigen::MatrixXd e1 = Eigen::MatrixXd::Zero(4, 1);
  e1(0, 0) = 1.0;
  expect_rel(distortion_trial(SampleCloud::from_points(e1), SketchOperator(g)),
             std::abs(std::sqrt(sq) - 1.0));
}

TEST(Oracle, LeastSquares) {
  Eigen::MatrixXd col(2, 1);
  col << 1, 1;
  Eigen::VectorXd b(2);
  b << -1, -3;
  // normal equations: (1 + 1) z = 1 + 3
  expect_rel(ls_solve(col, b, 0)(0), (1.0 + 3.0) / 2.0);
  Eigen::MatrixXd row(1, 2);
  row << 1, 1;
  Eigen::VectorXd c(1);
  c << -2;
  // pseudoinverse: A^T (A A^T)^{-1} (-b)
  const Eigen::VectorXd z = ls_solve(row, c, 0);
  expect_rel(z(0), 2.0 / 2.0);
  expect_rel(z(1), 2.0 / 2.0);
}

TEST(Oracle, RationalDegrees) {
  expect_rel(rat_approx_degree(1, 0.1), six_over_pi2() * std::pow(std::log(4 * 1.0 / 0.1), 2));
  expect_rel(rat_approx_degree(1, 0.01), six_over_pi2() * std::pow(std::log(4 * 1.0 / 0.01), 2));

  const std::vector<int> hidden{4};
  expect_rel(ratnn_degree(hidden, 3, 2, false).nats, std::log(2.0 * 4 * 3 * 3));
  expect_rel(ratnn_degree(hidden, 3, 2, true).nats, std::log(2.0 * 4 * 3 * 3 * (1 + 1.0 / 3)));
  const std::vector<int> ch{2};
  expect_rel(ratcnn_degree(ch, 3, 2, 2, false).nats, std::log(2.0 * 2 * 2 * 2 * 3 * 3));
  expect_rel(ratcnn_degree(ch, 3, 2, 2, true).nats, std::log(2.0 * 2 * 2 * 2 * 3 * 3 * 1.5));
}

TEST(Oracle, RationalNetworkBounds) {
  // N = 7: layer 1 has 1*2 weights + 2 biases, layer 2 has 2*1 + 1
  const double N = 2 + 2 + 2 + 1;
  const double logW1 = std::log(N) + 2.5 * std::log(1.0 * 1) + 2 * std::log(2.0) + std::log(2.0);
  expect_rel(ratnn_covering_log(ratnn_121(), 1, 0.1, 1.0).value,
             N * std::log(1.0 / 0.1) + (N + 1) * logW1);

  NetArchitecture conv;
  conv.kind = ArchKind::ratcnn;
  conv.L = 2;
  conv.dims = {1, 2, 1};
  conv.channels = {1, 2, 1};
  conv.k = 2;
  conv.s = 2;
  const double Nc = (2 * 1 * 4 + 2) + (1 * 2 * 4 + 1);
  const double logWc = std::log(Nc) + 2.5 * std::log(1.0) + 2 * std::log(2.0) +
                       2 * (2 - 1) * std::log(2.0) + std::log(2.0);
  expect_rel(ratnn_covering_log(conv, 1, 0.1, 1.0).value,
             Nc * std::log(1.0 / 0.1) + (Nc + 1) * logWc);

  for (int n : {100, 10000}) {
    const double logW =
        std::log(N) + 2.5 * std::log(static_cast<double>(n)) + 2 * std::log(2.0) + std::log(2.0);
    const double alpha = std::min(1.0, 1.0 * 1.0 * std::sqrt(1.0));
    const double arg = std::log(1.0) + logW + std::log(1.0) - std::log(alpha) - 0.5 * std::log(n);
    expect_rel(ratnn_rademacher_bound(ratnn_121(), n, {1.0, 1.0}).value,
               alpha * std::sqrt(N / n) * (std::sqrt(kPi) + std::sqrt(std::max(0.0, arg))));
  }
}

TEST(Oracle, ReluBounds) {
  const NetArchitecture a = relu_net({2, 2, 2}, {2, 2});
  for (int n : {100, 10000}) {
    const double scale = 1.0 * std::sqrt(2.0) * 2 * 2;
    const double alpha = std::min(1.0, scale);
    const double beta = scale / alpha;
    const double inner = std::log(beta) + std::log(static_cast<double>(n)) + 2 * std::log(2.0) +
                         2 * logp(logp(beta * std::sqrt(n / 2.0)));
    const double N = (2 * 2 + 2) + (2 * 2 + 2);
    expect_rel(relu_rademacher_bound(a, n, {1.0, 1.0}).value,
               alpha * std::sqrt(N / n) * std::sqrt(inner));
  }
}

TEST(Oracle, GeneralizationBound) {
  expect_rel(generalization_bound(0.1, 0.05, 100),
             2 * 0.1 + 3 * std::sqrt(std::log(2 / 0.05) / (2 * 100.0)));
  expect_rel(generalization_bound(0.0, 0.5, 2), 3 * std::sqrt(std::log(4.0) / 4.0));
}

TEST(Oracle, ReluApproxDegree) {
  const NetArchitecture one = relu_net({2, 2}, {2});
  expect_rel(relu_approx_degree(one, 2.0).nats,
             std::log(1 + six_over_pi2() * std::pow(std::log(8.0 / 2.0), 2)));

  // eps_final = a / (lip sqrt n) = 0.1, first-layer eps = 0.1 / (1 + w_2)
  const NetArchitecture two = relu_net({2, 2, 2}, {2, 2});
  const double eps_final = 1.0 / (1.0 * std::sqrt(100.0));
  expect_rel(relu_target_error(two, 100, {1.0, 1.0}), eps_final);
  const double eps = eps_final / 3.0;
  const double D1 = six_over_pi2() * std::pow(std::log(4 * 2 * 1 / eps), 2);
  const double D2 = six_over_pi2() * std::pow(std::log(4 * 2 * 2 / eps), 2);
  expect_rel(relu_approx_degree(two, eps_final).nats,
             std::log(1 + D1) + std::log(1 + D2) + std::log(1.0 + 2));
}
