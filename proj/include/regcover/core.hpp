#pragma once

// Shared numeric conventions, the polynomial-map data model and the
// deterministic randomness contract used by every other header.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace regcover {

/// Thrown when an operation is called outside its stated preconditions.
/// `ref()` names the result whose hypothesis was violated (may be empty).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& message, std::string ref = {})
      : std::invalid_argument(message), ref_(std::move(ref)) {}

  const std::string& ref() const noexcept { return ref_; }

 private:
  std::string ref_;
};

inline void require(bool condition, const std::string& message,
                    const std::string& ref = {}) {
  if (!condition) throw InputError(message, ref);
}

// ---------------------------------------------------------------------------
// Log-domain reals
// ---------------------------------------------------------------------------

/// A positive quantity stored as its natural logarithm (nats).
/// Covering numbers and tail probabilities routinely leave double range
/// (e^-38567), so nothing in this library exponentiates them.
struct LogReal {
  double nats = 0.0;

  static LogReal from_linear(double x) {
    require(x > 0.0, "LogReal::from_linear: argument must be positive");
    return LogReal{std::log(x)};
  }
  double linear() const { return std::exp(nats); }

  friend LogReal operator*(LogReal a, LogReal b) { return {a.nats + b.nats}; }
  friend LogReal operator/(LogReal a, LogReal b) { return {a.nats - b.nats}; }
  friend bool operator==(LogReal, LogReal) = default;
  friend auto operator<=>(LogReal a, LogReal b) { return a.nats <=> b.nats; }
};

/// log(e^a + e^b) without leaving log space.
inline LogReal log_add(LogReal a, LogReal b) {
  const double hi = std::max(a.nats, b.nats);
  const double lo = std::min(a.nats, b.nats);
  if (hi == -std::numeric_limits<double>::infinity()) return a;
  return LogReal{hi + std::log1p(std::exp(lo - hi))};
}

/// log_+(x) = max(0, log x); zero for x <= 1 (including x <= 0).
inline double log_plus(double x) { return x > 1.0 ? std::log(x) : 0.0; }

/// log_+(log_+(x)).
inline double log_plus_log_plus(double x) { return log_plus(log_plus(x)); }

/// log of the volume of the Euclidean unit ball in R^N.
inline double log_unit_ball_volume(int N) {
  return 0.5 * N * std::log(std::numbers::pi) - std::lgamma(0.5 * N + 1.0);
}

// ---------------------------------------------------------------------------
// Polynomial maps
// ---------------------------------------------------------------------------

/// One monomial `coeff * prod_j x_j^{exponents[j]}`.
struct Term {
  double coeff = 0.0;
  std::vector<int> exponents;
};

/// Dense monomial-basis map p: R^n -> R^N. Each output coordinate is a list
/// of terms; `degree()` is the maximal total degree over all terms.
class PolynomialMap {
 public:
  PolynomialMap(int n, std::vector<std::vector<Term>> coords)
      : n_(n), coords_(std::move(coords)) {
    require(n_ >= 1, "PolynomialMap: input dimension n must be positive");
    require(!coords_.empty(), "PolynomialMap: output dimension N must be positive");
    for (const auto& coord : coords_) {
      for (const auto& term : coord) {
        require(static_cast<int>(term.exponents.size()) == n_,
                "PolynomialMap: every exponent list must have length n");
        int total = 0;
        for (int e : term.exponents) {
          require(e >= 0, "PolynomialMap: exponents must be nonnegative");
          total += e;
        }
        degree_ = std::max(degree_, total);
        max_exponent_ = std::max(max_exponent_,
                                 *std::max_element(term.exponents.begin(),
                                                   term.exponents.end()));
      }
    }
  }

  int n() const noexcept { return n_; }
  int N() const noexcept { return static_cast<int>(coords_.size()); }
  int degree() const noexcept { return degree_; }
  int max_exponent() const noexcept { return max_exponent_; }
  const std::vector<std::vector<Term>>& coords() const noexcept { return coords_; }

 private:
  int n_;
  std::vector<std::vector<Term>> coords_;
  int degree_ = 0;
  int max_exponent_ = 0;
};

namespace detail {

// powers(j, k) = x_j^k for k = 0..max_exponent
inline Eigen::MatrixXd power_table(const PolynomialMap& map,
                                   const Eigen::VectorXd& x) {
  const int kmax = map.max_exponent();
  Eigen::MatrixXd powers(map.n(), kmax + 1);
  for (int j = 0; j < map.n(); ++j) {
    powers(j, 0) = 1.0;
    for (int k = 1; k <= kmax; ++k) powers(j, k) = powers(j, k - 1) * x(j);
  }
  return powers;
}

inline void check_point(const PolynomialMap& map, const Eigen::VectorXd& x) {
  require(x.size() == map.n(), "polynomial map: point has length " +
                                   std::to_string(x.size()) + ", expected n = " +
                                   std::to_string(map.n()));
}

}  // namespace detail

/// p(x), coordinate by coordinate.
inline Eigen::VectorXd eval_poly_map(const PolynomialMap& map,
                                     const Eigen::VectorXd& x) {
  detail::check_point(map, x);
  const Eigen::MatrixXd powers = detail::power_table(map, x);
  Eigen::VectorXd out(map.N());
  for (int i = 0; i < map.N(); ++i) {
    double acc = 0.0;
    for (const auto& term : map.coords()[i]) {
      double mono = term.coeff;
      for (int j = 0; j < map.n(); ++j) mono *= powers(j, term.exponents[j]);
      acc += mono;
    }
    out(i) = acc;
  }
  return out;
}

/// Analytic N x n Jacobian by exponent lowering on the term lists.
inline Eigen::MatrixXd jacobian(const PolynomialMap& map, const Eigen::VectorXd& x) {
  detail::check_point(map, x);
  const Eigen::MatrixXd powers = detail::power_table(map, x);
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(map.N(), map.n());
  for (int i = 0; i < map.N(); ++i) {
    for (const auto& term : map.coords()[i]) {
      for (int j = 0; j < map.n(); ++j) {
        const int e = term.exponents[j];
        if (e == 0) continue;
        double mono = term.coeff * e * powers(j, e - 1);
        for (int l = 0; l < map.n(); ++l) {
          if (l != j) mono *= powers(l, term.exponents[l]);
        }
        J(i, j) += mono;
      }
    }
  }
  return J;
}

// ---------------------------------------------------------------------------
// Randomness
// ---------------------------------------------------------------------------

struct RngSeed {
  std::uint64_t value = 0;
};

/// SplitMix64 as a UniformRandomBitGenerator. Cheap to construct, so every
/// Monte-Carlo work item gets its own stream (see `stream`), which keeps
/// results independent of how the items are scheduled over threads.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// +1 or -1 with equal probability.
  double sign() { return ((*this)() >> 63) ? 1.0 : -1.0; }

  /// Standard normal via the Marsaglia polar method (no cached state).
  double normal() {
    for (;;) {
      const double u = 2.0 * uniform() - 1.0;
      const double v = 2.0 * uniform() - 1.0;
      const double s = u * u + v * v;
      if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }

 private:
  std::uint64_t state_;
};

/// Independent stream number `index` of `seed`.
inline SplitMix64 stream(RngSeed seed, std::uint64_t index) {
  SplitMix64 mix(seed.value ^ 0x6A09E667F3BCC909ULL);
  const std::uint64_t base = mix();
  SplitMix64 keyed(base + index * 0xD1B54A32D192ED03ULL);
  return SplitMix64(keyed());
}

// ---------------------------------------------------------------------------
// Parallelism
// ---------------------------------------------------------------------------

/// Worker count: REGCOVER_THREADS when set to a positive value (at most 256),
/// otherwise the hardware concurrency.
inline unsigned thread_count() {
  if (const char* env = std::getenv("REGCOVER_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) return static_cast<unsigned>(std::min(cap, 256L));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls body(i) for i in [0, count) over a static partition of threads.
/// Callers write per-index results and reduce them in index order, so output
/// does not depend on the thread count.
inline void parallel_for(std::size_t count,
                         const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(thread_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t begin = count * w / workers;
      const std::size_t end = count * (w + 1) / workers;
      for (std::size_t i = begin; i < end; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace regcover
