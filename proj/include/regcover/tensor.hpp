#pragma once

// Covering bounds for low CP-rank tensors and the probability that a
// Gaussian tensor lies within a small angle of the low-rank cone.

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "regcover/bounds.hpp"
#include "regcover/core.hpp"

namespace regcover {

/// Dimensions n_1..n_d of a tensor space; every n_i >= 2 and d >= 2.
class TensorShape {
 public:
  explicit TensorShape(std::vector<int> dims) : dims_(std::move(dims)) {
    require(dims_.size() >= 2, "tensor shape must have order >= 2");
    for (int n : dims_) require(n >= 2, "tensor dimensions must all be >= 2");
  }

  const std::vector<int>& dims() const noexcept { return dims_; }
  int order() const noexcept { return static_cast<int>(dims_.size()); }
  int sum() const { return std::accumulate(dims_.begin(), dims_.end(), 0); }
  double mean() const { return static_cast<double>(sum()) / order(); }
  int min_dim() const { return *std::min_element(dims_.begin(), dims_.end()); }

  /// log of N = prod n_i.
  double log_total() const {
    double acc = 0.0;
    for (int n : dims_) acc += std::log(static_cast<double>(n));
    return acc;
  }
  /// N = prod n_i as a double (exact up to 2^53).
  double total() const {
    double acc = 1.0;
    for (int n : dims_) acc *= n;
    return acc;
  }

 private:
  std::vector<int> dims_;
};

/// First CP bound, valid for every rank:
/// r d nbar log(t/eps) + c r d nbar sum log n_i.
/// With `sphere` the set is the sphere projection of the cone (t = 1) and
/// the log(1/eps) coefficient drops by one.
inline BoundReport cp_covering_log_general(const TensorShape& shape, int r, double t,
                                           double eps, double c = kDefaultConstant,
                                           bool sphere = false) {
  const std::string ref = "covering bound for CP rank <= r tensors";
  require(r >= 1, "rank r must be >= 1", ref);
  require(c > 0.0, "constant c must be positive", ref);
  if (sphere) t = 1.0;
  require(t > 0.0, "t must be positive", ref);
  require(eps > 0.0 && eps <= 2.0 * t, "eps must lie in (0, 2t]", ref);
  const double params = static_cast<double>(r) * shape.sum();  // r d nbar
  const double lead = sphere ? params - 1.0 : params;
  BoundReport report{lead * std::log(t / eps) + c * params * shape.log_total(), true,
                     {{"c", c}}, ref, {}};
  if (sphere) report.notes.push_back("sphere variant: t = 1, log coefficient r d nbar - 1");
  return report;
}

/// Second CP bound for r <= min n_i:
/// r d nbar log(c1 d t/eps) + c2 d^2 r^2 log r - d r^2 log c1.
/// With `sphere` only the coefficient of the log(./eps) term drops by one.
inline BoundReport cp_covering_log_lowrank(const TensorShape& shape, int r, double t,
                                           double eps, double c1 = kDefaultConstant,
                                           double c2 = kDefaultConstant,
                                           bool sphere = false) {
  const std::string ref = "low-rank covering bound for CP rank <= r tensors";
  require(r >= 1, "rank r must be >= 1", ref);
  require(r <= shape.min_dim(), "low-rank bound requires r <= min_i n_i", ref);
  require(c1 >= 1.0 && c2 >= 1.0, "constants c1, c2 must be >= 1", ref);
  if (sphere) t = 1.0;
  require(t > 0.0, "t must be positive", ref);
  require(eps > 0.0 && eps <= 2.0 * t, "eps must lie in (0, 2t]", ref);
  const double d = shape.order();
  const double params = static_cast<double>(r) * shape.sum();
  const double lead = sphere ? params - 1.0 : params;
  const double rr = static_cast<double>(r) * r;
  const double value = lead * std::log(c1 * d * t / eps) + c2 * d * d * rr * std::log(r) -
                       d * rr * std::log(c1);
  BoundReport report{value, true, {{"c1", c1}, {"c2", c2}}, ref, {}};
  if (sphere) {
    report.notes.push_back(
        "sphere variant: only the coefficient of log(c1 d t/eps) is reduced by one; "
        "other occurrences of r d nbar are kept");
  }
  return report;
}

/// log-probability bound that an i.i.d. Gaussian tensor lies within angle
/// eps of some tensor of CP rank <= r. Requires eps <= pi/6 and N >= 8.
inline BoundReport cp_angle_probability_log(const TensorShape& shape, int r, double eps,
                                            double c1 = kDefaultConstant,
                                            double c2 = kDefaultConstant) {
  const std::string ref = "angle to the low CP-rank cone";
  require(r >= 1 && r <= shape.min_dim(), "angle bound requires 1 <= r <= min_i n_i", ref);
  require(c1 >= 1.0 && c2 >= 1.0, "constants c1, c2 must be >= 1", ref);
  require(eps > 0.0 && eps <= std::numbers::pi / 6.0, "angle bound requires 0 < eps <= pi/6",
          ref);
  require(shape.total() >= 8.0, "angle bound requires N = prod n_i >= 8", ref);
  const double d = shape.order();
  const double params = static_cast<double>(r) * shape.sum();
  const double rr = static_cast<double>(r) * r;
  const double log_N = shape.log_total();
  const double N_minus_1 = shape.total() - 1.0;
  const double value = N_minus_1 * std::log(std::sin(2.0 * eps)) -
                       (params - 1.0) * std::log(eps) + params * std::log(c1 * d) +
                       c2 * d * d * rr * std::log(static_cast<double>(r)) - 0.5 * log_N -
                       d * rr * std::log(c1);
  return {value, true, {{"c1", c1}, {"c2", c2}}, ref, {}};
}

}  // namespace regcover
