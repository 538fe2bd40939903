#pragma once

// Gauss-Newton for min ||p(x)|| over a polynomial map, unsketched and with a
// fixed sketch S reused at every iteration (min ||S p(x)||).

#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "regcover/core.hpp"
#include "regcover/sketch.hpp"

namespace regcover {

struct LineSearch {
  bool enabled = true;
  double factor = 0.5;
  int max_steps = 20;
};

struct GNOptions {
  int max_iters = 200;
  double grad_tol = 1e-8;
  double step_tol = 1e-12;
  double damping = 1e-10;  // Levenberg term added to the normal system
  LineSearch line_search{};
};

struct GNResult {
  Eigen::VectorXd x_final;
  double objective = 0.0;       // objective of the minimized problem at x_final
  double residual_norm = 0.0;   // ||p(x_final)||, always unsketched
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;    // objective before the first and after each step
};

/// argmin_z ||A z + b||^2 + damping ||z||^2. With damping = 0 and
/// rank-deficient A the minimum-norm minimizer is returned. Solved through
/// an orthogonal factorization of the stacked system [A; sqrt(damping) I].
inline Eigen::VectorXd ls_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                double damping) {
  require(A.rows() == b.size(), "ls_solve: A and b have inconsistent row counts");
  require(damping >= 0.0, "ls_solve: damping must be >= 0");
  const Eigen::Index k = A.cols();
  if (damping == 0.0) {
    return Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(A).solve(-b);
  }
  Eigen::MatrixXd stacked(A.rows() + k, k);
  stacked << A, std::sqrt(damping) * Eigen::MatrixXd::Identity(k, k);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(A.rows() + k);
  rhs.head(A.rows()) = -b;
  return Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(stacked).solve(rhs);
}

namespace detail {

// Residual and Jacobian of the minimized problem at x.
using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using JacobianFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

inline GNResult gauss_newton_loop(const ResidualFn& residual, const JacobianFn& jac,
                                  Eigen::VectorXd x, const GNOptions& opts) {
  require(opts.max_iters >= 0, "GNOptions: max_iters must be >= 0");
  require(opts.grad_tol > 0.0 && opts.step_tol > 0.0, "GNOptions: tolerances must be positive");
  require(opts.damping >= 0.0, "GNOptions: damping must be >= 0");
  if (opts.line_search.enabled) {
    require(opts.line_search.factor > 0.0 && opts.line_search.factor < 1.0 &&
                opts.line_search.max_steps >= 1,
            "GNOptions: backtracking needs factor in (0, 1) and max_steps >= 1");
  }

  GNResult result;
  Eigen::VectorXd r = residual(x);
  double objective = r.norm();
  result.trace.push_back(objective);

  for (int it = 0; it < opts.max_iters; ++it) {
    const Eigen::MatrixXd J = jac(x);
    if ((J.transpose() * r).norm() <= opts.grad_tol) {
      result.converged = true;
      break;
    }
    const Eigen::VectorXd step = ls_solve(J, r, opts.damping);
    if (step.norm() <= opts.step_tol) {
      result.converged = true;
      break;
    }

    Eigen::VectorXd x_next = x + step;
    Eigen::VectorXd r_next = residual(x_next);
    if (opts.line_search.enabled) {
      double scale = 1.0;
      int tries = 1;
      while (!(r_next.norm() <= objective) && tries < opts.line_search.max_steps) {
        scale *= opts.line_search.factor;
        x_next = x + scale * step;
        r_next = residual(x_next);
        ++tries;
      }
      if (!(r_next.norm() <= objective)) break;  // no descent along the GN direction
    }
    x = std::move(x_next);
    r = std::move(r_next);
    objective = r.norm();
    result.trace.push_back(objective);
    ++result.iterations;
  }

  result.x_final = std::move(x);
  result.objective = objective;
  return result;
}

}  // namespace detail

/// Gauss-Newton on min ||p(x)||: each step solves min ||J dx + p(x)||.
inline GNResult gauss_newton(const PolynomialMap& map, const Eigen::VectorXd& x0,
                             const GNOptions& opts = {}) {
  detail::check_point(map, x0);
  GNResult result = detail::gauss_newton_loop(
      [&](const Eigen::VectorXd& x) { return eval_poly_map(map, x); },
      [&](const Eigen::VectorXd& x) { return jacobian(map, x); }, x0, opts);
  result.residual_norm = result.objective;
  return result;
}

/// Gauss-Newton on min ||S p(x)|| with one operator S for the whole run:
/// each step solves min ||S J dx + S p(x)||.
inline GNResult sketched_gauss_newton(const PolynomialMap& map, const SketchOperator& op,
                                      const Eigen::VectorXd& x0, const GNOptions& opts = {}) {
  detail::check_point(map, x0);
  require(sketch_cols(op) == map.N(), "sketched_gauss_newton: sketch width must equal N");
  GNResult result = detail::gauss_newton_loop(
      [&](const Eigen::VectorXd& x) { return apply_sketch(op, eval_poly_map(map, x)); },
      [&](const Eigen::VectorXd& x) {
        return apply_sketch(op, Eigen::MatrixXd(jacobian(map, x)));
      },
      x0, opts);
  result.residual_norm = eval_poly_map(map, result.x_final).norm();
  return result;
}

}  // namespace regcover
