// Greedy nets of the moment curve (t, t^2, t^3) against the covering bound.
#include <cmath>
#include <cstdio>

#include "regcover/regcover.hpp"

using namespace regcover;

int main() {
  const PolynomialMap curve(1, {{{1.0, {1}}}, {{1.0, {2}}}, {{1.0, {3}}}});
  const SampleCloud cloud = sample_poly_image(curve, 1.0, 50000, RngSeed{1});
  const RegularityProfile profile = profile_poly_image(1, 3, ImageVariant::ball);

  std::printf("%8s %10s %12s %12s\n", "eps", "net size", "log(net)", "log bound");
  for (double eps : {0.5, 0.25, 0.1, 0.05, 0.025}) {
    const auto net = greedy_net(cloud, eps);
    const double bound = covering_bound_log(profile, 3, std::sqrt(3.0), eps).value;
    std::printf("%8.3f %10zu %12.3f %12.3f\n", eps, net.size(),
                std::log(static_cast<double>(net.size())), bound);
  }
}
