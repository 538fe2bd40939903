#pragma once

// (K, n) regularity profiles for polynomially defined sets.
//
// A set V in R^N is (K, n) regular when generic affine sections of
// codimension <= n have at most K path components and generic sections of
// higher codimension are empty. Every function here returns log K, never K,
// since (2d)^N overflows long before N reaches the thousands.

#include <optional>
#include <span>
#include <string>

#include "regcover/core.hpp"

namespace regcover {

struct RegularityProfile {
  LogReal log_K;  // nats, >= 0
  int n = 0;      // regularity dimension

  friend bool operator==(const RegularityProfile&, const RegularityProfile&) = default;
};

/// Which set derived from a polynomial image or variety is profiled.
enum class ImageVariant {
  full,         // the set itself
  ball,         // intersected with a centered ball
  sphere,       // radially projected onto the unit sphere
  sphere_cone,  // sphere projection of a cone: one dimension lower
};

inline std::string to_string(ImageVariant v) {
  switch (v) {
    case ImageVariant::full: return "full";
    case ImageVariant::ball: return "ball";
    case ImageVariant::sphere: return "sphere";
    case ImageVariant::sphere_cone: return "sphere_cone";
  }
  return "?";
}

inline ImageVariant image_variant_from_string(const std::string& s) {
  if (s == "full") return ImageVariant::full;
  if (s == "ball") return ImageVariant::ball;
  if (s == "sphere") return ImageVariant::sphere;
  if (s == "sphere_cone" || s == "sphere-cone") return ImageVariant::sphere_cone;
  throw InputError("unknown variant '" + s + "' (expected full|ball|sphere|sphere_cone)");
}

/// log of d(2d-1)^{N-1}, the component bound for a real zero set of
/// degree-d polynomials in N variables.
inline LogReal pomt_components_log(int d, int N) {
  require(d >= 1 && N >= 1, "component bound requires d >= 1 and N >= 1",
          "component bound for real algebraic sets");
  return LogReal{std::log(static_cast<double>(d)) +
                 (N - 1) * std::log(2.0 * d - 1.0)};
}

/// Profile of the image of p: R^n -> R^N with coordinate degree <= d.
inline RegularityProfile profile_poly_image(int n, int d, ImageVariant variant) {
  const std::string ref = "regularity of polynomial images";
  require(n >= 1 && d >= 1, "polynomial image profile requires n >= 1 and d >= 1", ref);
  switch (variant) {
    case ImageVariant::full:
      return {LogReal{n * std::log(2.0 * d)}, n};
    case ImageVariant::ball:
      return {LogReal{(n + 1) * std::log(4.0 * d)}, n};
    case ImageVariant::sphere:
      return {LogReal{(n + 1) * std::log(4.0 * d + 1.0)}, n};
    case ImageVariant::sphere_cone:
      return {LogReal{(n + 1) * std::log(4.0 * d + 1.0)}, n - 1};
  }
  throw InputError("unknown image variant", ref);
}

/// Profile of a real variety in R^N of dimension <= n cut out by
/// polynomials of degree <= d.
inline RegularityProfile profile_variety(int N, int n, int d, ImageVariant variant) {
  const std::string ref = "regularity of varieties";
  require(d >= 2, "variety profile requires degree d >= 2 (hypothesis of the variety bound)", ref);
  require(N >= 1 && n >= 0 && n <= N, "variety profile requires 0 <= n <= N", ref);
  switch (variant) {
    case ImageVariant::full:
      return {LogReal{N * std::log(2.0 * d)}, n};
    case ImageVariant::ball:
      return {LogReal{(N + 1) * std::log(2.0 * d)}, n};
    case ImageVariant::sphere:
      return {LogReal{(N + 1) * std::log(2.0 * d + 1.0)}, n};
    case ImageVariant::sphere_cone:
      require(n >= 1, "sphere_cone variant requires n >= 1", ref);
      return {LogReal{(N + 1) * std::log(2.0 * d + 1.0)}, n - 1};
  }
  throw InputError("unknown image variant", ref);
}

/// Profile of the image of a rational map R^n -> R^N whose coordinates are
/// ratios of degree <= d polynomials.
inline RegularityProfile profile_rational_image(int n, int N, int d) {
  require(n >= 1 && N >= 1 && d >= 1,
          "rational image profile requires n, N, d >= 1", "regularity of rational images");
  return {LogReal{(n + 1) * std::log(2.0 * N * d + 1.0)}, n};
}

/// Profile of a basic semialgebraic set in R^N of dimension <= n with b
/// inequality constraints of degree <= d. The (c b^2)^N branch has no
/// published constant, so it only participates when `third_term_constant`
/// is supplied.
inline RegularityProfile profile_semialgebraic(
    int N, int n, int d, int b, std::optional<double> third_term_constant = std::nullopt) {
  const std::string ref = "regularity of semialgebraic sets";
  require(b >= 0, "semialgebraic profile requires b >= 0", ref);
  require(d >= 1 && N >= 1 && n >= 0 && n <= N,
          "semialgebraic profile requires d >= 1 and 0 <= n <= N", ref);
  double extra = b * std::log(2.0 * d);
  if (b >= 1) {
    extra = std::min(extra, b * std::log(7.0) + std::log(static_cast<double>(N)));
    if (third_term_constant) {
      require(*third_term_constant > 0.0, "third-term constant must be positive", ref);
      extra = std::min(extra, N * std::log(*third_term_constant * b * b));
    }
  }
  return {LogReal{N * std::log(2.0 * d) + extra}, n};
}

/// Union of a (K1, n1) and a (K2, n2) regular set: (K1 + K2, max(n1, n2)).
inline RegularityProfile profile_union(const RegularityProfile& a,
                                       const RegularityProfile& b) {
  return {log_add(a.log_K, b.log_K), std::max(a.n, b.n)};
}

/// Profile of tensors of CP rank <= r in R^{n_1 x ... x n_d}, viewed as the
/// image of a degree-d polynomial in r * sum(n_i) variables. The sphere
/// variant uses the cone reduction.
inline RegularityProfile profile_cp_tensor(std::span<const int> shape, int r,
                                           ImageVariant variant) {
  const std::string ref = "regularity of low-rank CP tensors";
  require(shape.size() >= 2, "CP tensor profile requires order >= 2", ref);
  require(r >= 1, "CP tensor profile requires r >= 1", ref);
  int total = 0;
  for (int ni : shape) {
    require(ni >= 2, "CP tensor profile requires every dimension >= 2", ref);
    total += ni;
  }
  require(variant == ImageVariant::ball || variant == ImageVariant::sphere,
          "CP tensor profile supports the ball and sphere variants", ref);
  const ImageVariant image =
      variant == ImageVariant::sphere ? ImageVariant::sphere_cone : ImageVariant::ball;
  return profile_poly_image(r * total, static_cast<int>(shape.size()), image);
}

}  // namespace regcover
