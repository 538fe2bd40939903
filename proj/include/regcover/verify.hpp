#pragma once

// Monte-Carlo checks that put empirical quantities next to the bounds:
// sampled greedy nets and packings, sketch distortion trials, tube hit
// probes and Rademacher estimates.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "regcover/bounds.hpp"
#include "regcover/core.hpp"
#include "regcover/nnbound.hpp"
#include "regcover/polyopt.hpp"
#include "regcover/regularity.hpp"
#include "regcover/sketch.hpp"

namespace regcover {

/// Smallest integer constant c for which `sketch_success_rate` passes on
/// the calibration suite (see `calibrate_subg_constant`).
inline constexpr double kCalibratedSubgConstant = 1.0;

/// Constant used for the ReLU Rademacher comparison.
inline constexpr double kCalibratedReluConstant = 1.0;

// ---------------------------------------------------------------------------
// Sample clouds
// ---------------------------------------------------------------------------

struct CloudProvenance {
  std::optional<PolynomialMap> map;
  double box_radius = 0.0;
  int count = 0;
  RngSeed seed{};
};

/// Points stored column-wise (N x count).
struct SampleCloud {
  Eigen::MatrixXd points;
  CloudProvenance provenance;

  int size() const noexcept { return static_cast<int>(points.cols()); }
  int dim() const noexcept { return static_cast<int>(points.rows()); }

  static SampleCloud from_points(Eigen::MatrixXd points) {
    return SampleCloud{std::move(points), {}};
  }
};

namespace detail {

inline constexpr int kBlock = 4096;

inline RngSeed derive_seed(RngSeed seed, std::uint64_t tag) {
  return RngSeed{stream(seed, tag)()};
}

inline void check_cloud(const SampleCloud& cloud) {
  require(cloud.size() >= 1, "sample cloud is empty");
}

}  // namespace detail

/// count points p(u) with u uniform in [-box_radius, box_radius]^n.
inline SampleCloud sample_poly_image(const PolynomialMap& map, double box_radius, int count,
                                     RngSeed seed) {
  require(count >= 1, "sample_poly_image requires count >= 1");
  require(box_radius >= 0.0, "box radius must be >= 0");
  SampleCloud cloud{Eigen::MatrixXd(map.N(), count), {map, box_radius, count, seed}};
  const std::size_t blocks = (count + detail::kBlock - 1) / detail::kBlock;
  parallel_for(blocks, [&](std::size_t b) {
    SplitMix64 rng = stream(seed, b);
    const int begin = static_cast<int>(b) * detail::kBlock;
    const int end = std::min(count, begin + detail::kBlock);
    Eigen::VectorXd u(map.n());
    for (int i = begin; i < end; ++i) {
      for (int j = 0; j < map.n(); ++j) u(j) = rng.uniform(-box_radius, box_radius);
      cloud.points.col(i) = eval_poly_map(map, u);
    }
  });
  return cloud;
}

// ---------------------------------------------------------------------------
// Nets and packings
// ---------------------------------------------------------------------------

/// Farthest-point greedy net: starts from the sample nearest the center of
/// the bounding box and keeps adding the sample farthest from the net until
/// every sample is within eps. Returns column indices into the cloud.
/// The chosen points are pairwise more than eps apart.
inline std::vector<int> greedy_net(const SampleCloud& cloud, double eps) {
  detail::check_cloud(cloud);
  require(eps > 0.0, "greedy_net requires eps > 0");
  const auto& P = cloud.points;
  const int count = cloud.size();
  const Eigen::VectorXd center = 0.5 * (P.rowwise().minCoeff() + P.rowwise().maxCoeff());
  int first = 0;
  (P.colwise() - center).colwise().squaredNorm().minCoeff(&first);

  std::vector<int> net{first};
  Eigen::VectorXd dist2 = (P.colwise() - P.col(first)).colwise().squaredNorm().transpose();
  const double eps2 = eps * eps;
  for (;;) {
    int far = 0;
    const double worst = dist2.maxCoeff(&far);
    if (worst <= eps2) break;
    net.push_back(far);
    const Eigen::VectorXd p = P.col(far);
    for (int i = 0; i < count; ++i) {
      const double d2 = (P.col(i) - p).squaredNorm();
      if (d2 < dist2(i)) dist2(i) = d2;
    }
  }
  return net;
}

/// Size of a maximal subset whose points are pairwise more than eps apart.
/// Two greedy maximal packings are built, one by a scan in order of the
/// first coordinate and the farthest-point net, and the larger is returned.
/// In one dimension the scan is a maximum packing.
inline int packing_count(const SampleCloud& cloud, double eps) {
  detail::check_cloud(cloud);
  require(eps > 0.0, "packing_count requires eps > 0");
  const auto& P = cloud.points;
  std::vector<int> order(cloud.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return P(0, a) < P(0, b); });
  const double eps2 = eps * eps;
  std::vector<int> chosen;
  for (int i : order) {
    bool separated = true;
    // chosen is sorted by first coordinate; only the tail within eps can conflict
    for (auto it = chosen.rbegin(); it != chosen.rend(); ++it) {
      if (P(0, i) - P(0, *it) > eps) break;
      if ((P.col(i) - P.col(*it)).squaredNorm() <= eps2) {
        separated = false;
        break;
      }
    }
    if (separated) chosen.push_back(i);
  }
  const int scan = static_cast<int>(chosen.size());
  const int farthest = static_cast<int>(greedy_net(cloud, eps).size());
  return std::max(scan, farthest);
}

/// Largest nearest-neighbor distance from up to `probes` evenly spaced
/// samples to the rest of the cloud.
inline double nearest_neighbor_spacing(const SampleCloud& cloud, int probes = 1000) {
  detail::check_cloud(cloud);
  const int count = cloud.size();
  if (count == 1) return 0.0;
  const int k = std::min(probes, count);
  std::vector<double> best(k);
  parallel_for(k, [&](std::size_t q) {
    const int i = static_cast<int>(static_cast<long>(q) * count / k);
    double m = std::numeric_limits<double>::infinity();
    for (int j = 0; j < count; ++j) {
      if (j == i) continue;
      m = std::min(m, (cloud.points.col(i) - cloud.points.col(j)).squaredNorm());
    }
    best[q] = m;
  });
  return std::sqrt(*std::max_element(best.begin(), best.end()));
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

enum class Comparison { at_most, at_least };

/// Empirical value next to a bound. `pass()` is derived from the two values.
struct VerifyReport {
  double empirical = 0.0;
  BoundReport bound;
  Comparison comparison = Comparison::at_most;
  int trials = 0;
  RngSeed seed{};
  std::vector<std::string> warnings;

  bool pass() const {
    if (std::isnan(empirical)) return false;
    return comparison == Comparison::at_most ? empirical <= bound.value
                                             : empirical >= bound.value;
  }
};

/// log(greedy net size) of a sampled polynomial image against the covering
/// bound for the ball profile of the image.
inline VerifyReport covering_check(const PolynomialMap& map, double box_radius, double t,
                                   double eps, int count, RngSeed seed) {
  const RegularityProfile profile = profile_poly_image(map.n(), std::max(1, map.degree()), ImageVariant::ball);
  VerifyReport report;
  report.bound = covering_bound_log(profile, map.N(), t, eps);
  const SampleCloud cloud = sample_poly_image(map, box_radius, count, seed);
  report.empirical = std::log(static_cast<double>(greedy_net(cloud, eps).size()));
  report.trials = count;
  report.seed = seed;
  const double spacing = nearest_neighbor_spacing(cloud);
  if (spacing > eps / 2.0) {
    report.warnings.push_back("undersampled: nearest-neighbor spacing " +
                              std::to_string(spacing) + " exceeds eps/2");
  }
  return report;
}

// ---------------------------------------------------------------------------
// Sketch distortion
// ---------------------------------------------------------------------------

/// max over nonzero points x of | ||S x|| / ||x|| - 1 |.
inline double distortion_trial(const SampleCloud& cloud, const SketchOperator& op) {
  detail::check_cloud(cloud);
  require(sketch_cols(op) == cloud.dim(), "distortion_trial: sketch width must equal N");
  const Eigen::VectorXd norms = cloud.points.colwise().norm().transpose();
  std::vector<int> keep;
  for (int i = 0; i < cloud.size(); ++i) {
    if (norms(i) > 0.0) keep.push_back(i);
  }
  require(!keep.empty(), "distortion_trial: every sample point is zero");
  Eigen::MatrixXd X(cloud.dim(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) X.col(k) = cloud.points.col(keep[k]);
  const Eigen::VectorXd sketched = apply_sketch(op, X).colwise().norm().transpose();
  double worst = 0.0;
  for (std::size_t k = 0; k < keep.size(); ++k) {
    worst = std::max(worst, std::abs(sketched(k) / norms(keep[k]) - 1.0));
  }
  return worst;
}

/// Sampled points x violating the (eps, delta, tau) sketch property of S on
/// f = p: ||S f(x)|| > tau while ||S f(x)|| lies outside
/// [(1 - eps) ||f(x)||, (1 + eps) ||f(x)||].
inline int sketch_property_violations(const SampleCloud& cloud, const SketchOperator& op,
                                      double eps, double tau) {
  detail::check_cloud(cloud);
  require(sketch_cols(op) == cloud.dim(), "sketch width must equal N");
  require(eps > 0.0 && eps < 1.0 && tau > 0.0, "requires eps in (0, 1) and tau > 0");
  const Eigen::VectorXd norms = cloud.points.colwise().norm().transpose();
  const Eigen::VectorXd sketched = apply_sketch(op, cloud.points).colwise().norm().transpose();
  int violations = 0;
  for (int i = 0; i < cloud.size(); ++i) {
    if (sketched(i) <= tau) continue;
    if (sketched(i) < (1.0 - eps) * norms(i) || sketched(i) > (1.0 + eps) * norms(i)) {
      ++violations;
    }
  }
  return violations;
}

enum class SketchEnsemble { gaussian, rademacher, sors };

inline std::string to_string(SketchEnsemble e) {
  switch (e) {
    case SketchEnsemble::gaussian: return "gaussian";
    case SketchEnsemble::rademacher: return "rademacher";
    case SketchEnsemble::sors: return "sors";
  }
  return "?";
}

inline SketchEnsemble sketch_ensemble_from_string(const std::string& s) {
  if (s == "gaussian") return SketchEnsemble::gaussian;
  if (s == "rademacher") return SketchEnsemble::rademacher;
  if (s == "sors") return SketchEnsemble::sors;
  throw InputError("unknown sketch ensemble '" + s + "' (expected gaussian|rademacher|sors)");
}

inline SketchOperator make_sketch(SketchEnsemble ensemble, int m, int M, RngSeed seed) {
  switch (ensemble) {
    case SketchEnsemble::gaussian:
      return SubGaussianSketch(m, M, seed, SubGaussianDistribution::gaussian);
    case SketchEnsemble::rademacher:
      return SubGaussianSketch(m, M, seed, SubGaussianDistribution::rademacher);
    case SketchEnsemble::sors:
      return SorsSketch(m, M, seed);
  }
  throw InputError("unknown sketch ensemble");
}

/// Sketching dimension for a polynomial image from the formula matching the
/// ensemble, with constant c and unit alpha / beta.
inline long sketch_dim_for(SketchEnsemble ensemble, const PolynomialMap& map, double eps,
                           double delta, double c) {
  const int d = std::max(1, map.degree());
  return ensemble == SketchEnsemble::sors
             ? sors_dim_poly(map.n(), d, map.N(), eps, delta, 1.0, c)
             : subg_dim_poly(map.n(), d, map.N(), eps, delta, 1.0, c);
}

struct SuccessRateOptions {
  int trials = 50;
  int count = 10000;
  double c = kCalibratedSubgConstant;
  std::optional<long> m;  // overrides the formula when set
};

/// Fraction of independent sketches whose distortion on a sampled image is
/// <= eps; passes when the fraction is >= 1 - delta.
inline VerifyReport sketch_success_rate(const PolynomialMap& map, double box_radius,
                                        SketchEnsemble ensemble, double eps, double delta,
                                        RngSeed seed, const SuccessRateOptions& opts = {}) {
  const std::string ref = "sketch success rate";
  require(opts.trials >= 1, "sketch_success_rate requires trials >= 1", ref);
  require(eps > 0.0 && eps < 1.0 && delta > 0.0 && delta < 1.0,
          "eps and delta must lie in (0, 1)", ref);
  const long m = opts.m ? *opts.m : sketch_dim_for(ensemble, map, eps, delta, opts.c);
  require(m >= 1 && m <= std::numeric_limits<int>::max(), "sketch rows out of range", ref);
  const SampleCloud cloud =
      sample_poly_image(map, box_radius, opts.count, detail::derive_seed(seed, 0));
  std::vector<char> ok(opts.trials);
  parallel_for(opts.trials, [&](std::size_t k) {
    const SketchOperator op =
        make_sketch(ensemble, static_cast<int>(m), map.N(), detail::derive_seed(seed, k + 1));
    ok[k] = distortion_trial(cloud, op) <= eps;
  });
  VerifyReport report;
  report.empirical =
      static_cast<double>(std::count(ok.begin(), ok.end(), 1)) / static_cast<double>(opts.trials);
  report.bound = BoundReport{1.0 - delta, false, {{"c", opts.c}, {"m", static_cast<double>(m)}},
                             ref, {}};
  report.comparison = Comparison::at_least;
  report.trials = opts.trials;
  report.seed = seed;
  return report;
}

/// Random map R^n -> R^N whose coordinates carry every monomial of total
/// degree <= d with i.i.d. standard normal coefficients.
inline PolynomialMap random_polynomial_map(int n, int N, int d, RngSeed seed) {
  require(n >= 1 && N >= 1 && d >= 0, "random_polynomial_map requires n, N >= 1, d >= 0");
  std::vector<std::vector<int>> monomials;
  std::vector<int> e(n, 0);
  auto rec = [&](auto&& self, int j, int left) -> void {
    if (j == n) {
      monomials.push_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[j] = k;
      self(self, j + 1, left - k);
    }
    e[j] = 0;
  };
  rec(rec, 0, d);
  SplitMix64 rng = stream(seed, 0);
  std::vector<std::vector<Term>> coords(N);
  for (auto& coord : coords) {
    coord.reserve(monomials.size());
    for (const auto& mono : monomials) coord.push_back({rng.normal(), mono});
  }
  return PolynomialMap(n, std::move(coords));
}

/// The fixed suite behind kCalibratedSubgConstant: a random cubic
/// R^2 -> R^256 at eps = 0.5, delta = 0.1, 50 Gaussian sketches.
inline bool calibration_suite_passes(double c, int count = 10000) {
  const PolynomialMap map = random_polynomial_map(2, 256, 3, RngSeed{20240601});
  SuccessRateOptions opts;
  opts.trials = 50;
  opts.count = count;
  opts.c = c;
  return sketch_success_rate(map, 1.0, SketchEnsemble::gaussian, 0.5, 0.1, RngSeed{7}, opts)
      .pass();
}

/// Smallest c in 1..16 passing the calibration suite, or nullopt.
inline std::optional<int> calibrate_subg_constant(int count = 10000) {
  for (int c = 1; c <= 16; ++c) {
    if (calibration_suite_passes(c, count)) return c;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Tube probe
// ---------------------------------------------------------------------------

struct TubeProbeOptions {
  int mc_samples = 1000000;
  int grid_density = 2000;  // grid points per parameter axis
  int polish_steps = 8;
  double c = kDefaultConstant;
};

namespace detail {

// Image points of a regular parameter grid over [-box, box]^n, sorted by
// their first coordinate, plus the largest distance between the images of
// axis-adjacent grid points.
struct ImageGrid {
  Eigen::MatrixXd images;   // N x G, sorted by row 0
  Eigen::MatrixXd params;   // n x G, same order
  double gap = 0.0;
};

inline ImageGrid build_image_grid(const PolynomialMap& map, double box, int density) {
  const int n = map.n();
  long total = 1;
  for (int j = 0; j < n; ++j) {
    total *= density;
    require(total <= 50'000'000L, "tube_probe: parameter grid too large");
  }
  const double step = density > 1 ? 2.0 * box / (density - 1) : 0.0;
  Eigen::MatrixXd params(n, total);
  Eigen::MatrixXd images(map.N(), total);
  for (long g = 0; g < total; ++g) {
    long rest = g;
    for (int j = 0; j < n; ++j) {
      params(j, g) = density > 1 ? -box + step * static_cast<double>(rest % density) : 0.0;
      rest /= density;
    }
    images.col(g) = eval_poly_map(map, params.col(g));
  }
  double gap = 0.0;
  long stride = 1;
  for (int j = 0; j < n; ++j) {
    for (long g = 0; g < total; ++g) {
      if ((g / stride) % density + 1 < density) {
        gap = std::max(gap, (images.col(g + stride) - images.col(g)).norm());
      }
    }
    stride *= density;
  }
  std::vector<long> order(total);
  std::iota(order.begin(), order.end(), 0L);
  std::stable_sort(order.begin(), order.end(),
                   [&](long a, long b) { return images(0, a) < images(0, b); });
  ImageGrid grid{Eigen::MatrixXd(map.N(), total), Eigen::MatrixXd(n, total), gap};
  for (long g = 0; g < total; ++g) {
    grid.images.col(g) = images.col(order[g]);
    grid.params.col(g) = params.col(order[g]);
  }
  return grid;
}

// Local Gauss-Newton on min ||p(u) - x|| with u clamped to the box.
inline double polish_distance(const PolynomialMap& map, double box, Eigen::VectorXd u,
                              const Eigen::VectorXd& x, int steps) {
  Eigen::VectorXd r = eval_poly_map(map, u) - x;
  double best = r.norm();
  for (int s = 0; s < steps; ++s) {
    const Eigen::VectorXd du = ls_solve(jacobian(map, u), r, 1e-12);
    const Eigen::VectorXd trial = (u + du).cwiseMax(-box).cwiseMin(box);
    const Eigen::VectorXd r_trial = eval_poly_map(map, trial) - x;
    if (!(r_trial.norm() < best)) break;
    u = trial;
    r = r_trial;
    best = r.norm();
  }
  return best;
}

}  // namespace detail

/// log of the fraction of points uniform in B(center, sigma) within eps of
/// p([-box, box]^n), against the tube hit probability bound. Distances come
/// from a dense parameter grid refined by local Gauss-Newton. Zero hits
/// give -infinity.
inline VerifyReport tube_probe(const PolynomialMap& map, double box_radius,
                               const Eigen::VectorXd& center, double sigma, double eps,
                               RngSeed seed, const TubeProbeOptions& opts = {}) {
  const std::string ref = "tube probe";
  require(center.size() == map.N(), "tube_probe: center must have length N", ref);
  require(opts.mc_samples >= 1 && opts.grid_density >= 1,
          "tube_probe requires mc_samples, grid_density >= 1", ref);
  require(box_radius >= 0.0, "box radius must be >= 0", ref);
  VerifyReport report;
  report.bound = tube_hit_probability_log(map.N(), map.n(), std::max(1, map.degree()), eps,
                                          sigma, opts.c);
  const detail::ImageGrid grid = detail::build_image_grid(map, box_radius, opts.grid_density);
  const double reach = eps + grid.gap;
  const int N = map.N();
  const long G = grid.images.cols();

  const std::size_t blocks = (opts.mc_samples + detail::kBlock - 1) / detail::kBlock;
  std::vector<long> hits(blocks, 0);
  parallel_for(blocks, [&](std::size_t b) {
    SplitMix64 rng = stream(seed, b);
    const int begin = static_cast<int>(b) * detail::kBlock;
    const int end = std::min(opts.mc_samples, begin + detail::kBlock);
    Eigen::VectorXd x(N);
    for (int i = begin; i < end; ++i) {
      double norm2 = 0.0;
      for (int k = 0; k < N; ++k) {
        x(k) = rng.normal();
        norm2 += x(k) * x(k);
      }
      const double radius = sigma * std::pow(rng.uniform(), 1.0 / N);
      x = center + (radius / std::sqrt(norm2)) * x;

      const double* row0 = grid.images.data();  // column-major: row 0 has stride N
      long lo = 0, hi = G;
      while (lo < hi) {  // first grid image with first coordinate >= x0 - reach
        const long mid = (lo + hi) / 2;
        if (row0[mid * N] < x(0) - reach) lo = mid + 1; else hi = mid;
      }
      double best2 = std::numeric_limits<double>::infinity();
      long best = -1;
      for (long g = lo; g < G && row0[g * N] <= x(0) + reach; ++g) {
        const double d2 = (grid.images.col(g) - x).squaredNorm();
        if (d2 < best2) {
          best2 = d2;
          best = g;
        }
      }
      if (best < 0 || best2 > reach * reach) continue;
      double dist = std::sqrt(best2);
      if (dist > eps) {
        dist = std::min(dist, detail::polish_distance(map, box_radius, grid.params.col(best), x,
                                                      opts.polish_steps));
      }
      if (dist <= eps) ++hits[b];
    }
  });
  const long total_hits = std::accumulate(hits.begin(), hits.end(), 0L);
  report.empirical = total_hits == 0
                         ? -std::numeric_limits<double>::infinity()
                         : std::log(static_cast<double>(total_hits) / opts.mc_samples);
  report.trials = opts.mc_samples;
  report.seed = seed;
  if (total_hits > 0 && total_hits < 30) {
    report.warnings.push_back("only " + std::to_string(total_hits) +
                              " hits; the empirical log-probability is noisy");
  }
  return report;
}

// ---------------------------------------------------------------------------
// Rademacher estimation
// ---------------------------------------------------------------------------

struct RademacherEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Mean over sigma_draws sign vectors of max_h (1/n) sum_i sigma_i values(h, i),
/// where rows of `values` are hypotheses and columns samples.
inline RademacherEstimate rademacher_mc(const Eigen::MatrixXd& values, int sigma_draws,
                                        RngSeed seed) {
  require(values.rows() >= 1 && values.cols() >= 1,
          "rademacher_mc needs at least one hypothesis and one sample");
  require(sigma_draws >= 1, "rademacher_mc requires sigma_draws >= 1");
  const int n = static_cast<int>(values.cols());
  std::vector<double> sup(sigma_draws);
  const std::size_t blocks = (sigma_draws + detail::kBlock - 1) / detail::kBlock;
  parallel_for(blocks, [&](std::size_t b) {
    SplitMix64 rng = stream(seed, b);
    const int begin = static_cast<int>(b) * detail::kBlock;
    const int end = std::min(sigma_draws, begin + detail::kBlock);
    Eigen::VectorXd sigma(n);
    for (int k = begin; k < end; ++k) {
      for (int i = 0; i < n; ++i) sigma(i) = rng.sign();
      sup[k] = (values * sigma).maxCoeff() / n;
    }
  });
  const double mean = std::accumulate(sup.begin(), sup.end(), 0.0) / sigma_draws;
  double var = 0.0;
  for (double s : sup) var += (s - mean) * (s - mean);
  var = sigma_draws > 1 ? var / (sigma_draws - 1) : 0.0;
  return {mean, std::sqrt(var / sigma_draws)};
}

/// Evaluates x -> A_L rho(... rho(A_1 x + b_1) ...) + b_L with rho = ReLU.
/// Each layer is stored as the d_i x (d_{i-1} + 1) block (A_i | b_i).
inline Eigen::VectorXd relu_forward(const std::vector<Eigen::MatrixXd>& layers,
                                    const Eigen::VectorXd& x) {
  Eigen::VectorXd h = x;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& W = layers[i];
    require(W.cols() == h.size() + 1, "relu_forward: layer shapes do not chain");
    h = W.leftCols(h.size()) * h + W.col(h.size());
    if (i + 1 < layers.size()) h = h.cwiseMax(0.0);
  }
  return h;
}

struct ReluCheckOptions {
  int networks = 200;
  int sigma_draws = 10000;
  double c = kCalibratedReluConstant;
};

/// Rademacher estimate over sampled ReLU networks of the class (entries of
/// (A_i | b_i) uniform in [-w_i, w_i]) with data uniform in [-1, 1]^{d_0},
/// labels uniform in [-1, 1]^{d_L} and loss min(H, lip ||f(x) - y||),
/// against relu_rademacher_bound.
inline VerifyReport relu_rademacher_check(const NetArchitecture& arch, int n_samples,
                                          const LossSpec& loss, RngSeed seed,
                                          const ReluCheckOptions& opts = {}) {
  const std::string ref = "Rademacher check for ReLU networks";
  require(opts.networks >= 1, "relu_rademacher_check requires networks >= 1", ref);
  VerifyReport report;
  report.bound = relu_rademacher_bound(arch, n_samples, loss, opts.c);
  const int d0 = arch.dims.front();
  const int dL = arch.dims.back();

  SplitMix64 data_rng = stream(seed, 0);
  Eigen::MatrixXd X(d0, n_samples), Y(dL, n_samples);
  for (int i = 0; i < n_samples; ++i) {
    for (int k = 0; k < d0; ++k) X(k, i) = data_rng.uniform(-1.0, 1.0);
    for (int k = 0; k < dL; ++k) Y(k, i) = data_rng.uniform(-1.0, 1.0);
  }
  Eigen::MatrixXd values(opts.networks, n_samples);
  parallel_for(opts.networks, [&](std::size_t h) {
    SplitMix64 rng = stream(seed, h + 1);
    std::vector<Eigen::MatrixXd> layers;
    for (int i = 1; i <= arch.L; ++i) {
      const double w = arch.omegas[i - 1];
      Eigen::MatrixXd W(arch.dims[i], arch.dims[i - 1] + 1);
      for (Eigen::Index c = 0; c < W.cols(); ++c) {
        for (Eigen::Index r = 0; r < W.rows(); ++r) W(r, c) = rng.uniform(-w, w);
      }
      layers.push_back(std::move(W));
    }
    for (int i = 0; i < n_samples; ++i) {
      const Eigen::VectorXd f = relu_forward(layers, X.col(i));
      values(h, i) = std::min(loss.H, loss.lip * (f - Y.col(i)).norm());
    }
  });
  const RademacherEstimate est =
      rademacher_mc(values, opts.sigma_draws, detail::derive_seed(seed, 1u << 30));
  report.empirical = est.value;
  report.trials = opts.sigma_draws;
  report.seed = seed;
  report.warnings.push_back("Monte-Carlo standard error " + std::to_string(est.std_error));
  return report;
}

}  // namespace regcover
