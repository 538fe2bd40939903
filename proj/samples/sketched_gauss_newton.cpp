// Gauss-Newton on an overdetermined quadratic system, plain and sketched.
#include <cstdio>

#include "regcover/regcover.hpp"

using namespace regcover;

int main() {
  const int n = 6, N = 1500;
  const PolynomialMap map = random_polynomial_map(n, N, 2, RngSeed{10});
  const Eigen::VectorXd x0 = Eigen::VectorXd::Constant(n, 0.25);

  const long m = subg_dim_poly(n, 2, N, 0.5, 0.1, 1.0, kCalibratedSubgConstant);
  const SketchOperator gauss = SubGaussianSketch(static_cast<int>(m), N, RngSeed{1});
  const SketchOperator sors = SorsSketch(static_cast<int>(m), N, RngSeed{1});

  const GNResult plain = gauss_newton(map, x0);
  std::printf("plain        iters %3d  ||p(x)|| = %.6f\n", plain.iterations, plain.objective);
  for (const auto& [name, op] : {std::pair{"sub-gaussian", gauss}, std::pair{"sors", sors}}) {
    const GNResult r = sketched_gauss_newton(map, op, x0);
    std::printf("%-12s iters %3d  ||p(x)|| = %.6f  (m = %ld of %d rows)\n", name, r.iterations,
                r.residual_norm, m, N);
  }
}
