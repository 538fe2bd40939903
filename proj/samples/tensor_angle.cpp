// How unlikely is a random tensor to lie within angle eps of low CP rank?
#include <cstdio>
#include <numbers>

#include "regcover/regcover.hpp"

using namespace regcover;

int main() {
  const TensorShape shape({100, 100, 100});
  std::printf("shape 100x100x100, rank 30\n");
  for (int k : {6, 7, 8, 10}) {
    const double eps = std::numbers::pi / k;
    const BoundReport r = cp_angle_probability_log(shape, 30, eps, 3, 3);
    std::printf("  eps = pi/%-2d  log Pr <= %.1f\n", k, r.value);
  }
  std::printf("covering bounds at t = 1, eps = 0.1\n");
  for (int r : {1, 5, 30}) {
    std::printf("  r = %-2d  general %.4g  low-rank %.4g\n", r,
                cp_covering_log_general(shape, r, 1.0, 0.1).value,
                cp_covering_log_lowrank(shape, r, 1.0, 0.1).value);
  }
}
