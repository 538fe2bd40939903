#pragma once

// Random sketch operators and sketching-dimension formulas.
//
// Two ensembles are provided: dense sub-Gaussian matrices S = G / sqrt(m)
// and SORS operators S = sqrt(M/m) P H D, where D flips signs, H is the
// orthonormal Walsh-Hadamard transform and P samples m rows with
// replacement. Operators are regenerated from their seed, never stored.

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "regcover/core.hpp"

namespace regcover {

// ---------------------------------------------------------------------------
// Fast Walsh-Hadamard transform
// ---------------------------------------------------------------------------

/// In-place orthonormal Walsh-Hadamard transform; length must be 2^k.
inline void fwht_inplace(std::span<double> x) {
  const std::size_t size = x.size();
  require(size >= 1 && std::has_single_bit(size), "fwht: length must be a power of two");
  for (std::size_t h = 1; h < size; h <<= 1) {
    for (std::size_t block = 0; block < size; block += 2 * h) {
      double* lo = x.data() + block;
      double* hi = lo + h;
      for (std::size_t k = 0; k < h; ++k) {
        const double a = lo[k];
        const double b = hi[k];
        lo[k] = a + b;
        hi[k] = a - b;
      }
    }
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(size));
  for (double& v : x) v *= scale;
}

inline std::vector<double> fwht(std::vector<double> x) {
  fwht_inplace(x);
  return x;
}

// ---------------------------------------------------------------------------
// Operators
// ---------------------------------------------------------------------------

enum class SubGaussianDistribution { gaussian, rademacher };

inline std::string to_string(SubGaussianDistribution d) {
  return d == SubGaussianDistribution::gaussian ? "gaussian" : "rademacher";
}

inline SubGaussianDistribution distribution_from_string(const std::string& s) {
  if (s == "gaussian") return SubGaussianDistribution::gaussian;
  if (s == "rademacher") return SubGaussianDistribution::rademacher;
  throw InputError("unknown distribution '" + s + "' (expected gaussian|rademacher)");
}

/// Dense m x M matrix with i.i.d. unit-variance entries scaled by 1/sqrt(m).
class SubGaussianSketch {
 public:
  SubGaussianSketch(int m, int M, RngSeed seed,
                    SubGaussianDistribution distribution = SubGaussianDistribution::gaussian)
      : seed_(seed), distribution_(distribution) {
    require(m >= 1 && M >= 1, "sub-Gaussian sketch requires m, M >= 1");
    matrix_.resize(m, M);
    SplitMix64 rng = stream(seed, 0);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (int j = 0; j < M; ++j) {
      for (int i = 0; i < m; ++i) {
        const double g = distribution == SubGaussianDistribution::gaussian ? rng.normal()
                                                                            : rng.sign();
        matrix_(i, j) = scale * g;
      }
    }
  }

  /// Explicit realization, e.g. the identity. Not reproducible from a seed.
  static SubGaussianSketch from_matrix(Eigen::MatrixXd matrix) {
    SubGaussianSketch op;
    op.matrix_ = std::move(matrix);
    op.explicit_ = true;
    return op;
  }

  int rows() const noexcept { return static_cast<int>(matrix_.rows()); }
  int cols() const noexcept { return static_cast<int>(matrix_.cols()); }
  RngSeed seed() const noexcept { return seed_; }
  SubGaussianDistribution distribution() const noexcept { return distribution_; }
  bool is_explicit() const noexcept { return explicit_; }
  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
    require(x.size() == cols(), "apply_sketch: input length does not match M");
    return matrix_ * x;
  }
  /// Applies the operator to every column.
  Eigen::MatrixXd apply(const Eigen::MatrixXd& X) const {
    require(X.rows() == cols(), "apply_sketch: input rows do not match M");
    return matrix_ * X;
  }

 private:
  SubGaussianSketch() = default;

  Eigen::MatrixXd matrix_;
  RngSeed seed_{};
  SubGaussianDistribution distribution_ = SubGaussianDistribution::gaussian;
  bool explicit_ = false;
};

/// sqrt(M_pad/m) P H D with H the orthonormal Walsh-Hadamard matrix on the
/// smallest power of two M_pad >= M. Inputs are zero-padded, which keeps
/// their norm.
class SorsSketch {
 public:
  SorsSketch(int m, int M, RngSeed seed) : M_(M), seed_(seed) {
    require(m >= 1 && M >= 1, "SORS sketch requires m, M >= 1");
    M_pad_ = static_cast<int>(std::bit_ceil(static_cast<unsigned>(M)));
    SplitMix64 rng = stream(seed, 0);
    rows_.resize(m);
    for (auto& r : rows_) r = static_cast<int>(rng() % static_cast<std::uint64_t>(M_pad_));
    draw_signs();
  }

  /// Fixed row selection (e.g. every row once); signs still drawn from `seed`.
  static SorsSketch with_rows(int M, std::vector<int> rows, RngSeed seed) {
    SorsSketch op;
    require(M >= 1 && !rows.empty(), "SORS sketch requires M >= 1 and at least one row");
    op.M_ = M;
    op.M_pad_ = static_cast<int>(std::bit_ceil(static_cast<unsigned>(M)));
    for (int r : rows) require(r >= 0 && r < op.M_pad_, "SORS row index out of range");
    op.rows_ = std::move(rows);
    op.seed_ = seed;
    op.explicit_ = true;
    op.draw_signs();
    return op;
  }

  int rows() const noexcept { return static_cast<int>(rows_.size()); }
  int cols() const noexcept { return M_; }
  int padded_cols() const noexcept { return M_pad_; }
  RngSeed seed() const noexcept { return seed_; }
  bool is_explicit() const noexcept { return explicit_; }
  const std::vector<int>& row_indices() const noexcept { return rows_; }
  const std::vector<double>& signs() const noexcept { return signs_; }
  double scale() const noexcept {
    return std::sqrt(static_cast<double>(M_pad_) / static_cast<double>(rows()));
  }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
    require(x.size() == M_, "apply_sketch: input length does not match M");
    std::vector<double> buffer(M_pad_);
    Eigen::VectorXd out(rows());
    apply_into(x.data(), buffer, out.data());
    return out;
  }

  Eigen::MatrixXd apply(const Eigen::MatrixXd& X) const {
    require(X.rows() == M_, "apply_sketch: input rows do not match M");
    std::vector<double> buffer(M_pad_);
    Eigen::MatrixXd out(rows(), X.cols());
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
      apply_into(X.col(j).data(), buffer, out.col(j).data());
    }
    return out;
  }

 private:
  SorsSketch() = default;

  void draw_signs() {
    SplitMix64 rng = stream(seed_, 1);
    signs_.resize(M_pad_);
    for (auto& s : signs_) s = rng.sign();
  }

  void apply_into(const double* x, std::vector<double>& buffer, double* out) const {
    for (int i = 0; i < M_; ++i) buffer[i] = signs_[i] * x[i];
    std::fill(buffer.begin() + M_, buffer.end(), 0.0);
    fwht_inplace(buffer);
    const double s = scale();
    for (std::size_t k = 0; k < rows_.size(); ++k) out[k] = s * buffer[rows_[k]];
  }

  int M_ = 0;
  int M_pad_ = 0;
  std::vector<int> rows_;
  std::vector<double> signs_;
  RngSeed seed_{};
  bool explicit_ = false;
};

using SketchOperator = std::variant<SubGaussianSketch, SorsSketch>;

inline int sketch_rows(const SketchOperator& op) {
  return std::visit([](const auto& s) { return s.rows(); }, op);
}
inline int sketch_cols(const SketchOperator& op) {
  return std::visit([](const auto& s) { return s.cols(); }, op);
}

/// S x with the defining scaling of the operator.
inline Eigen::VectorXd apply_sketch(const SketchOperator& op, const Eigen::VectorXd& x) {
  return std::visit([&](const auto& s) { return s.apply(x); }, op);
}
/// S X, column by column.
inline Eigen::MatrixXd apply_sketch(const SketchOperator& op, const Eigen::MatrixXd& X) {
  return std::visit([&](const auto& s) { return s.apply(X); }, op);
}

// ---------------------------------------------------------------------------
// Sketching dimensions
// ---------------------------------------------------------------------------

namespace detail {

inline void check_eps_delta(double eps, double delta, const std::string& ref) {
  require(eps > 0.0 && eps < 1.0, "eps must lie in (0, 1)", ref);
  require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)", ref);
}

// min(N, n^d), falling back to N when n^d would overflow.
inline double effective_dim(int n, int d, int N) {
  if (d * std::log(static_cast<double>(n)) >= std::log(static_cast<double>(N))) {
    return static_cast<double>(N);
  }
  double power = 1.0;
  for (int k = 0; k < d; ++k) power *= n;
  return std::min<double>(N, power);
}

inline long ceil_rows(double value) {
  require(std::isfinite(value) && value < static_cast<double>(std::numeric_limits<long>::max()),
          "sketching dimension overflows");
  return std::max(1L, static_cast<long>(std::ceil(value)));
}

// c * Delta * log^2(Delta) * log(arg), with log^2 floored at 1 for Delta <= e.
inline long sors_rows(double c, double Delta, double log_arg) {
  const double log_sq = Delta <= std::numbers::e ? 1.0 : std::pow(std::log(Delta), 2);
  return ceil_rows(c * Delta * log_sq * log_arg);
}

}  // namespace detail

/// Rows for a sub-Gaussian sketch of a degree-d polynomial image:
/// ceil(c alpha^2 eps^-2 (n log(n d N') + log(1/delta))), N' = min(N, n^d).
inline long subg_dim_poly(int n, int d, int N, double eps, double delta, double alpha = 1.0,
                          double c = 1.0) {
  const std::string ref = "sub-Gaussian sketching dimension for polynomial images";
  require(n >= 1 && d >= 1 && N >= 1, "n, d, N must be >= 1", ref);
  detail::check_eps_delta(eps, delta, ref);
  require(alpha > 0.0 && c > 0.0, "alpha and c must be positive", ref);
  const double Np = detail::effective_dim(n, d, N);
  const double inner = n * std::log(n * d * Np) + std::log(1.0 / delta);
  return detail::ceil_rows(c * alpha * alpha / (eps * eps) * inner);
}

/// Rows for a SORS sketch of a degree-d polynomial image:
/// ceil(c Delta log^2(Delta) log(N'/delta)),
/// Delta = beta^2 eps^-2 n log(n d N') log(1/delta).
inline long sors_dim_poly(int n, int d, int N, double eps, double delta, double beta = 1.0,
                          double c = 1.0) {
  const std::string ref = "SORS sketching dimension for polynomial images";
  require(n >= 1 && d >= 1 && N >= 1, "n, d, N must be >= 1", ref);
  detail::check_eps_delta(eps, delta, ref);
  require(beta > 0.0 && c > 0.0, "beta and c must be positive", ref);
  const double Np = detail::effective_dim(n, d, N);
  const double Delta =
      beta * beta / (eps * eps) * n * std::log(n * d * Np) * std::log(1.0 / delta);
  return detail::sors_rows(c, Delta, std::log(Np / delta));
}

/// Inputs of the sketching-dimension bounds for f = l o p with l Lipschitz.
struct LipschitzSketchParams {
  int n = 1;           // input dimension of p
  int d = 1;           // coordinate degree of p
  int N = 1;           // output dimension of p
  int M = 1;           // output dimension of l
  double t = 1.0;      // sup |p_i| on the domain
  double lip = 1.0;    // Lipschitz constant of l
  double tau = 0.1;    // small-residual threshold
  double eps = 0.5;
  double delta = 0.1;
  double scale = 1.0;  // alpha (sub-Gaussian) or beta (SORS)
  double c = 1.0;
  double c_lambda = 1.0;
};

namespace detail {

inline double lipschitz_lambda(const LipschitzSketchParams& p, const std::string& ref) {
  require(p.n >= 1 && p.d >= 1 && p.N >= 1 && p.M >= 1, "n, d, N, M must be >= 1", ref);
  check_eps_delta(p.eps, p.delta, ref);
  require(p.tau > 0.0, "tau must be positive", ref);
  require(p.t > 0.0 && p.lip > 0.0 && p.scale > 0.0 && p.c > 0.0 && p.c_lambda > 0.0,
          "scale parameters must be positive", ref);
  return std::max(p.c_lambda, p.d * static_cast<double>(p.N) * p.t * p.lip / p.tau);
}

}  // namespace detail

/// Sub-Gaussian rows for an (eps, delta, tau) sketch of l o p:
/// ceil(c a^2 eps^-2 (n log(lambda a + lambda eps sqrt((M + log(1/delta))/n)) + log(1/delta))),
/// lambda = max(c_lambda, d N t lip / tau).
inline long subg_dim_lipschitz(const LipschitzSketchParams& p) {
  const std::string ref = "sub-Gaussian sketching dimension for Lipschitz compositions";
  const double lambda = detail::lipschitz_lambda(p, ref);
  const double log_inv_delta = std::log(1.0 / p.delta);
  const double arg =
      lambda * p.scale + lambda * p.eps * std::sqrt((p.M + log_inv_delta) / p.n);
  const double inner = p.n * std::log(arg) + log_inv_delta;
  return detail::ceil_rows(p.c * p.scale * p.scale / (p.eps * p.eps) * inner);
}

/// SORS rows for an (eps, delta, tau) sketch of l o p:
/// ceil(c Delta log^2(Delta) log(N/delta)),
/// Delta = beta^2 eps^-2 n log(lambda sqrt(M)) log(1/delta).
inline long sors_dim_lipschitz(const LipschitzSketchParams& p) {
  const std::string ref = "SORS sketching dimension for Lipschitz compositions";
  const double lambda = detail::lipschitz_lambda(p, ref);
  const double Delta = p.scale * p.scale / (p.eps * p.eps) * p.n *
                       std::log(lambda * std::sqrt(static_cast<double>(p.M))) *
                       std::log(1.0 / p.delta);
  return detail::sors_rows(p.c, Delta, std::log(p.N / p.delta));
}

}  // namespace regcover
