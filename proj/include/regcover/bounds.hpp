#pragma once

// Covering-number, tubular-volume and Dudley-integral bounds for regular sets.

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "regcover/core.hpp"
#include "regcover/regularity.hpp"

namespace regcover {

/// Default for every unspecified absolute constant.
inline constexpr double kDefaultConstant = 3.0;

/// A computed bound. `value` is in nats unless `log_domain` is false.
struct BoundReport {
  double value = 0.0;
  bool log_domain = true;
  std::map<std::string, double> constants_used;
  std::string label;
  std::vector<std::string> notes;
};

namespace detail {

inline void check_profile(const RegularityProfile& profile, int N, const std::string& ref) {
  require(profile.log_K.nats >= 0.0, "profile log K must be >= 0", ref);
  require(profile.n >= 0, "profile dimension must be >= 0", ref);
  require(N >= 1, "ambient dimension N must be >= 1", ref);
  require(profile.n <= N, "profile dimension n must not exceed N", ref);
}

inline void check_radius(int N, double t, double eps, const std::string& ref) {
  require(t > 0.0, "t must be positive", ref);
  require(eps > 0.0, "eps must be positive", ref);
  require(eps <= 2.0 * t * std::sqrt(static_cast<double>(N)),
          "eps must not exceed the diameter envelope 2 t sqrt(N)", ref);
}

// b sqrt(pi) + b sqrt(log(c/b)) - a sqrt(log(c/a)) with c given as log c.
inline double dudley_term_logc(double a, double b, double log_c) {
  auto boundary = [log_c](double x) {
    if (x <= 0.0) return 0.0;
    return x * std::sqrt(std::max(0.0, log_c - std::log(x)));
  };
  return b * std::sqrt(std::numbers::pi) + boundary(b) - boundary(a);
}

}  // namespace detail

/// log N(V, eps) <= n log(2 t n N^{3/2} / eps) + log 2K for a (K, n)
/// regular V in R^N fitting in a rigid copy of t * [-1, 1]^N.
inline BoundReport covering_bound_log(const RegularityProfile& profile, int N, double t,
                                      double eps) {
  const std::string ref = "covering bound for regular sets";
  detail::check_profile(profile, N, ref);
  detail::check_radius(N, t, eps, ref);
  double value = std::log(2.0) + profile.log_K.nats;
  if (profile.n >= 1) {
    const int n = profile.n;
    value += n * (std::log(2.0 * t * n) + 1.5 * std::log(static_cast<double>(N)) - std::log(eps));
  }
  return {value, true, {}, ref, {}};
}

/// log of the volume bound for the eps-tube around a (K, n) regular set.
/// `c` is the absolute constant of the bound.
inline BoundReport tube_volume_log(const RegularityProfile& profile, int N, double t,
                                   double eps, double c = kDefaultConstant) {
  const std::string ref = "tubular volume of regular sets";
  detail::check_profile(profile, N, ref);
  detail::check_radius(N, t, eps, ref);
  require(c > 0.0, "constant c must be positive", ref);
  const int n = profile.n;
  double value = log_unit_ball_volume(N) + N * std::log(2.0) + (N - n) * std::log(eps) +
                 profile.log_K.nats;
  if (n >= 1) {
    value += n * std::log(c * t * std::pow(static_cast<double>(N), 1.5) * n);
  }
  return {value, true, {{"c", c}}, ref, {}};
}

/// log Pr(dist(x, V) <= eps) for x uniform in a sigma-ball and V the image
/// of a degree-d polynomial map of dimension <= n in R^N.
inline BoundReport tube_hit_probability_log(int N, int n, int d, double eps, double sigma,
                                            double c = kDefaultConstant) {
  const std::string ref = "tube hit probability for polynomial images";
  require(n >= 1 && n <= N, "tube hit probability requires 1 <= n <= N", ref);
  require(d >= 1, "tube hit probability requires d >= 1", ref);
  require(eps > 0.0 && sigma > 0.0, "eps and sigma must be positive", ref);
  require(eps <= sigma, "tube hit probability requires eps <= sigma", ref);
  require(c > 0.0, "constant c must be positive", ref);
  const double value = (N - n) * std::log(eps / sigma) + N * std::log(2.0) +
                       c * (n * std::log(static_cast<double>(d)) +
                            n * std::log(static_cast<double>(N)));
  return {value, true, {{"c", c}}, ref, {}};
}

/// Closed-form upper bound on the integral of sqrt(log(c/e)) over [a, b]:
/// b sqrt(pi) + e sqrt(log(c/e)) evaluated from a to b, with 0 sqrt(log(c/0)) = 0.
inline double dudley_term(double a, double b, double c) {
  require(c > 0.0, "dudley_term requires c > 0");
  require(0.0 <= a && a <= b && b <= c, "dudley_term requires 0 <= a <= b <= c");
  return detail::dudley_term_logc(a, b, std::log(c));
}

/// Gaussian width bound 2 * int_0^D sqrt(log N(V, e)) de using the covering
/// bound and the closed-form Dudley term. Returned in the linear domain.
inline BoundReport width_bound_regular(const RegularityProfile& profile, int N, double t) {
  const std::string ref = "Dudley bound on the Gaussian width of regular sets";
  detail::check_profile(profile, N, ref);
  require(t > 0.0, "t must be positive", ref);
  const double diameter = 2.0 * t * std::sqrt(static_cast<double>(N));
  const double kappa = std::log(2.0) + profile.log_K.nats;
  BoundReport report{0.0, false, {}, ref, {}};
  if (profile.n == 0) {
    report.value = 2.0 * diameter * std::sqrt(kappa);
    return report;
  }
  const int n = profile.n;
  // Bound reads n log(C / e) with log C = log c0 + kappa / n; it hits zero at e = C.
  const double log_c0 = std::log(2.0 * t * n) + 1.5 * std::log(static_cast<double>(N));
  const double log_C = log_c0 + kappa / n;
  double upper = diameter;
  if (std::log(diameter) > log_C) {
    upper = std::exp(log_C);
    report.notes.push_back("integration range truncated where the covering bound reaches zero");
  }
  report.value = 2.0 * std::sqrt(static_cast<double>(n)) *
                 detail::dudley_term_logc(0.0, upper, log_C);
  return report;
}

/// Rows needed so a sub-Gaussian matrix has norm <= alpha u with
/// probability >= 1 - delta: ceil((c1 u^2 - c2)^{-1} (c2 M + log(1/delta))).
inline long subg_norm_dim(int M, double delta, double u, double c1, double c2) {
  const std::string ref = "operator norm of sub-Gaussian matrices";
  require(M >= 1, "M must be >= 1", ref);
  require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)", ref);
  require(c1 > 0.0 && c2 > 0.0, "constants c1, c2 must be positive", ref);
  const double denom = c1 * u * u - c2;
  require(denom > 0.0, "subg_norm_dim requires c1 u^2 > c2", ref);
  return static_cast<long>(std::ceil((c2 * M + std::log(1.0 / delta)) / denom));
}

}  // namespace regcover
