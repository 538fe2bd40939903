#pragma once

// JSON encodings for the public data types (nlohmann/json).
//
//   PolynomialMap  {"n", "N", "coords": [[{"c": coeff, "e": [exponents]}]]}
//   sketch         {"kind": "subgaussian"|"sors", "m", "M", "seed", "distribution"}
//   NetArchitecture{"kind", "L", "dims", "channels", "k", "s", "trainable", "omegas", "t"}
//   BoundReport    {"value", "log_domain", "constants_used", "label", "notes"}
//   GNResult       {"x_final", "objective", "residual_norm", "iterations", "converged", "trace"}
//   VerifyReport   {"empirical", "bound", "constants_used", "pass", "trials", "seed", "warnings"}
//
// Non-finite numbers are written as null.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "regcover/bounds.hpp"
#include "regcover/core.hpp"
#include "regcover/nnbound.hpp"
#include "regcover/polyopt.hpp"
#include "regcover/sketch.hpp"
#include "regcover/verify.hpp"

namespace regcover {

using json = nlohmann::json;

/// x rounded to 10 significant digits; non-finite values become null.
inline json number10(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return std::strtod(buf, nullptr);
}

inline json vector10(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number10(v(i)));
  return out;
}

namespace detail {

template <class T>
T json_get(const json& j, const char* key, const std::string& what) {
  require(j.is_object(), what + ": expected a JSON object");
  const auto it = j.find(key);
  require(it != j.end(), what + ": missing key '" + key + "'");
  try {
    return it->template get<T>();
  } catch (const json::exception&) {
    throw InputError(what + ": key '" + key + "' has the wrong type");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// PolynomialMap
// ---------------------------------------------------------------------------

inline json to_json(const PolynomialMap& map) {
  json coords = json::array();
  for (const auto& coord : map.coords()) {
    json terms = json::array();
    for (const auto& t : coord) terms.push_back({{"c", t.coeff}, {"e", t.exponents}});
    coords.push_back(std::move(terms));
  }
  return {{"n", map.n()}, {"N", map.N()}, {"coords", std::move(coords)}};
}

inline PolynomialMap poly_map_from_json(const json& j) {
  const std::string what = "polynomial map";
  const int n = detail::json_get<int>(j, "n", what);
  const json coords = detail::json_get<json>(j, "coords", what);
  require(coords.is_array(), what + ": 'coords' must be an array");
  std::vector<std::vector<Term>> out;
  for (const auto& coord : coords) {
    require(coord.is_array(), what + ": each coordinate must be an array of terms");
    std::vector<Term> terms;
    for (const auto& t : coord) {
      terms.push_back({detail::json_get<double>(t, "c", what),
                       detail::json_get<std::vector<int>>(t, "e", what)});
    }
    out.push_back(std::move(terms));
  }
  if (j.contains("N")) {
    require(detail::json_get<int>(j, "N", what) == static_cast<int>(out.size()),
            what + ": 'N' does not match the number of coordinates");
  }
  return PolynomialMap(n, std::move(out));
}

// ---------------------------------------------------------------------------
// Sketch operators
// ---------------------------------------------------------------------------

inline json to_json(const SketchOperator& op) {
  return std::visit(
      [](const auto& s) -> json {
        require(!s.is_explicit(), "explicitly constructed sketches have no seed encoding");
        using T = std::decay_t<decltype(s)>;
        json j = {{"m", s.rows()}, {"M", s.cols()}, {"seed", s.seed().value}};
        if constexpr (std::is_same_v<T, SubGaussianSketch>) {
          j["kind"] = "subgaussian";
          j["distribution"] = to_string(s.distribution());
        } else {
          j["kind"] = "sors";
        }
        return j;
      },
      op);
}

inline SketchOperator sketch_from_json(const json& j) {
  const std::string what = "sketch";
  const auto kind = detail::json_get<std::string>(j, "kind", what);
  const int m = detail::json_get<int>(j, "m", what);
  const int M = detail::json_get<int>(j, "M", what);
  const RngSeed seed{detail::json_get<std::uint64_t>(j, "seed", what)};
  if (kind == "subgaussian") {
    const auto dist = j.contains("distribution")
                          ? distribution_from_string(
                                detail::json_get<std::string>(j, "distribution", what))
                          : SubGaussianDistribution::gaussian;
    return SubGaussianSketch(m, M, seed, dist);
  }
  if (kind == "sors") return SorsSketch(m, M, seed);
  throw InputError("sketch: unknown kind '" + kind + "' (expected subgaussian|sors)");
}

// ---------------------------------------------------------------------------
// Network architectures
// ---------------------------------------------------------------------------

inline json to_json(const NetArchitecture& a) {
  json j = {{"kind", to_string(a.kind)}, {"L", a.L}, {"dims", a.dims}, {"t", a.t}};
  if (a.kind == ArchKind::relu) {
    j["omegas"] = a.omegas;
  } else {
    j["s"] = a.s;
    j["trainable"] = a.trainable;
  }
  if (a.kind == ArchKind::ratcnn) {
    j["channels"] = a.channels;
    j["k"] = a.k;
  }
  return j;
}

inline NetArchitecture architecture_from_json(const json& j) {
  const std::string what = "architecture";
  NetArchitecture a;
  a.kind = arch_kind_from_string(detail::json_get<std::string>(j, "kind", what));
  a.dims = detail::json_get<std::vector<int>>(j, "dims", what);
  a.L = j.contains("L") ? detail::json_get<int>(j, "L", what)
                        : static_cast<int>(a.dims.size()) - 1;
  if (j.contains("channels")) a.channels = detail::json_get<std::vector<int>>(j, "channels", what);
  if (j.contains("k")) a.k = detail::json_get<int>(j, "k", what);
  if (j.contains("s")) a.s = detail::json_get<int>(j, "s", what);
  if (j.contains("trainable")) a.trainable = detail::json_get<bool>(j, "trainable", what);
  if (j.contains("omegas")) a.omegas = detail::json_get<std::vector<double>>(j, "omegas", what);
  if (j.contains("t")) a.t = detail::json_get<double>(j, "t", what);
  a.validate();
  return a;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline json constants_json(const std::map<std::string, double>& constants) {
  json j = json::object();
  for (const auto& [k, v] : constants) j[k] = number10(v);
  return j;
}

inline json to_json(const BoundReport& r) {
  return {{"value", number10(r.value)},
          {"log_domain", r.log_domain},
          {"constants_used", constants_json(r.constants_used)},
          {"label", r.label},
          {"notes", r.notes}};
}

inline json to_json(const GNResult& r) {
  json trace = json::array();
  for (double v : r.trace) trace.push_back(number10(v));
  return {{"x_final", vector10(r.x_final)}, {"objective", number10(r.objective)},
          {"residual_norm", number10(r.residual_norm)}, {"iterations", r.iterations},
          {"converged", r.converged}, {"trace", std::move(trace)}};
}

inline json to_json(const VerifyReport& r) {
  return {{"empirical", number10(r.empirical)},
          {"bound", to_json(r.bound)},
          {"constants_used", constants_json(r.bound.constants_used)},
          {"comparison", r.comparison == Comparison::at_most ? "at_most" : "at_least"},
          {"pass", r.pass()},
          {"trials", r.trials},
          {"seed", r.seed.value},
          {"warnings", r.warnings}};
}

}  // namespace regcover
