#pragma once

// Command-line front end. `dispatch` is kept separate from main so the
// test suite can drive commands in-process.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "regcover/regcover.hpp"

namespace regcover::cli {

struct CommandResult {
  int exit_code = 0;
  json payload;      // written to stdout when `text` is empty
  std::string text;  // help output
};

namespace detail {

inline json read_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(what + ": malformed JSON (" + e.what() + ")");
  }
}

// Inline JSON when the argument starts with '{' or '[', otherwise a file path.
inline json read_json_arg(const std::string& arg, const std::string& what) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
    return read_json_text(arg, what);
  }
  std::ifstream in(arg);
  require(in.good(), what + ": cannot open '" + arg + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return read_json_text(buffer.str(), what);
}

// "a,b,c" or a JSON array.
inline std::vector<double> parse_list(const std::string& arg, const std::string& what) {
  std::string text = arg;
  const auto first = text.find_first_not_of(" \t");
  if (first == std::string::npos || text[first] != '[') text = "[" + text + "]";
  const json j = read_json_text(text, what);
  require(j.is_array(), what + ": expected a list of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    require(v.is_number(), what + ": expected a list of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

inline std::vector<int> parse_int_list(const std::string& arg, const std::string& what) {
  std::vector<int> out;
  for (double v : parse_list(arg, what)) {
    require(v == std::floor(v) && std::abs(v) < 1e9, what + ": expected integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

inline Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

/// A decimal number, `pi`, or the token pi/k.
inline double parse_angle(const std::string& arg) {
  if (arg.rfind("pi/", 0) == 0) {
    const std::string rest = arg.substr(3);
    char* end = nullptr;
    const double k = std::strtod(rest.c_str(), &end);
    require(end != rest.c_str() && *end == '\0' && k > 0.0, "malformed angle '" + arg + "'");
    return std::numbers::pi / k;
  }
  if (arg == "pi") return std::numbers::pi;
  char* end = nullptr;
  const double v = std::strtod(arg.c_str(), &end);
  require(end != arg.c_str() && *end == '\0', "malformed angle '" + arg + "'");
  return v;
}

inline std::uint64_t parse_seed(const std::string& arg) {
  require(!arg.empty() && arg.find_first_not_of("0123456789") == std::string::npos,
          "seed must be a nonnegative integer");
  try {
    return std::stoull(arg);
  } catch (const std::exception&) {
    throw InputError("seed out of range");
  }
}

// Config keys become "--key value" tokens placed before the user's flags,
// so flags given on the command line take precedence.
inline std::vector<std::string> config_tokens(const json& config) {
  require(config.is_object(), "config file must hold a JSON object");
  std::vector<std::string> tokens;
  for (const auto& [key, value] : config.items()) {
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      tokens.push_back(flag + "=" + (value.get<bool>() ? "true" : "false"));
    } else if (value.is_string()) {
      tokens.push_back(flag);
      tokens.push_back(value.get<std::string>());
    } else if (value.is_null()) {
      continue;
    } else {
      tokens.push_back(flag);
      tokens.push_back(value.dump());
    }
  }
  return tokens;
}

inline json bound_payload(const char* key, const BoundReport& r) {
  return {{key, number10(r.value)}, {"report", to_json(r)}};
}

using Runner = std::function<json()>;

// Option holders; every command owns one so defaults never leak between commands.
struct Options {
  int n = 1, N = 1, d = 1, b = 0, r = 1, M = 0, m = 0;
  int count = 10000, trials = 50, mc_samples = 100000, grid_density = 2000;
  int networks = 200, draws = 10000, n_samples = 100, max_iters = 200;
  double logK = 0.0, t = 1.0, eps = 0.1, sigma = 1.0, c = kDefaultConstant, c1 = kDefaultConstant,
         c2 = kDefaultConstant, delta = 0.1, alpha = 1.0, beta = 1.0, lip = 1.0, tau = 0.1,
         scale = 1.0, c_lambda = 1.0, H = 1.0, box = 1.0, rademacher = 0.0,
         grad_tol = 1e-8, step_tol = 1e-12, damping = 1e-10;
  std::optional<double> c3, eps_final;
  std::string variant = "full", shape, angle, input, map, arch, x0, center, kind = "subgaussian",
              distribution = "gaussian", ensemble = "gaussian", seed;
  bool sphere = false, no_line_search = false, cross_entropy = false;
  std::optional<int> m_override;
};

struct Leaf {
  CLI::App* app = nullptr;
  Runner run;
  bool verify = false;
  Options o;
};

}  // namespace detail

/// Runs one command. args excludes the program name.
inline CommandResult dispatch(const std::vector<std::string>& args) {
  using detail::Options;
  CLI::App app{"regcover: covering, sketching and generalization bounds", "regcover"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  std::string config_path;

  std::map<std::string, detail::Leaf> leaves;
  auto group = [&](const std::string& name, const std::string& help) {
    CLI::App* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    return g;
  };
  auto leaf = [&](CLI::App* g, const std::string& name, const std::string& help,
                  bool verify = false) -> detail::Leaf& {
    CLI::App* sub = g->add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON file with default flag values");
    auto& entry = leaves[g->get_name() + " " + name];
    entry.app = sub;
    entry.verify = verify;
    return entry;
  };

  // flag helpers
  auto opt = [](CLI::App* a, const std::string& flag, auto& target, const std::string& help) {
    return a->add_option(flag, target, help);
  };
  auto req = [](CLI::App* a, const std::string& flag, auto& target, const std::string& help) {
    return a->add_option(flag, target, help)->required();
  };
  auto seed_opt = [&](Options& o, CLI::App* a) { req(a, "--seed", o.seed, "random seed (mandatory)"); };
  auto map_opt = [&](Options& o, CLI::App* a) {
    req(a, "--map", o.map, "polynomial map as inline JSON or a file path");
  };
  auto arch_opt = [&](Options& o, CLI::App* a) {
    req(a, "--arch", o.arch, "network architecture as inline JSON or a file path");
  };
  auto loss_opts = [&](Options& o, CLI::App* a) {
    opt(a, "--lip", o.lip, "Lipschitz constant of the loss");
    opt(a, "--H", o.H, "range bound of the loss");
    a->add_flag("--cross-entropy", o.cross_entropy,
                "use the cross-entropy loss (H = 2t + log d_L, lip = sqrt(d_L))");
  };
  auto loss_of = [](const Options& o, const NetArchitecture& a) {
    return o.cross_entropy ? cross_entropy_loss(a.t, a.dims.back()) : LossSpec{o.lip, o.H};
  };
  auto seed_of = [](const Options& o) { return RngSeed{detail::parse_seed(o.seed)}; };

  // ---- bound ---------------------------------------------------------------
  CLI::App* bound = group("bound", "covering, tube and width bounds");
  {
    auto& e = leaf(bound, "regular", "covering bound for a (K, n) regular set");
    Options& o = e.o;
    req(e.app, "--logK", o.logK, "log K in nats");
    req(e.app, "--n", o.n, "regularity dimension");
    req(e.app, "--N", o.N, "ambient dimension");
    req(e.app, "--t", o.t, "box half-width");
    req(e.app, "--eps", o.eps, "radius");
    e.run = [&, &o = o] {
      return detail::bound_payload(
          "log_bound", covering_bound_log({LogReal{o.logK}, o.n}, o.N, o.t, o.eps));
    };
  }
  {
    auto& e = leaf(bound, "poly-image", "covering bound for a polynomial image");
    Options& o = e.o;
    req(e.app, "--n", o.n, "input dimension");
    req(e.app, "--d", o.d, "degree");
    opt(e.app, "--variant", o.variant, "full|ball|sphere|sphere_cone");
    req(e.app, "--N", o.N, "ambient dimension");
    req(e.app, "--t", o.t, "box half-width");
    req(e.app, "--eps", o.eps, "radius");
    e.run = [&, &o = o] {
      const auto p = profile_poly_image(o.n, o.d, image_variant_from_string(o.variant));
      json out = detail::bound_payload("log_bound", covering_bound_log(p, o.N, o.t, o.eps));
      out["profile"] = {{"log_K", number10(p.log_K.nats)}, {"n", p.n}};
      return out;
    };
  }
  {
    auto& e = leaf(bound, "variety", "covering bound for a real variety");
    Options& o = e.o;
    req(e.app, "--N", o.N, "ambient dimension");
    req(e.app, "--n", o.n, "dimension of the variety");
    req(e.app, "--d", o.d, "degree (>= 2)");
    opt(e.app, "--variant", o.variant, "full|ball|sphere");
    req(e.app, "--t", o.t, "box half-width");
    req(e.app, "--eps", o.eps, "radius");
    e.run = [&, &o = o] {
      const auto p = profile_variety(o.N, o.n, o.d, image_variant_from_string(o.variant));
      json out = detail::bound_payload("log_bound", covering_bound_log(p, o.N, o.t, o.eps));
      out["profile"] = {{"log_K", number10(p.log_K.nats)}, {"n", p.n}};
      return out;
    };
  }
  {
    auto& e = leaf(bound, "semialgebraic", "covering bound for a semialgebraic set");
    Options& o = e.o;
    req(e.app, "--N", o.N, "ambient dimension");
    req(e.app, "--n", o.n, "dimension of the set");
    req(e.app, "--d", o.d, "degree");
    req(e.app, "--b", o.b, "number of inequalities");
    opt(e.app, "--c3", o.c3, "constant of the (c b^2)^N branch");
    req(e.app, "--t", o.t, "box half-width");
    req(e.app, "--eps", o.eps, "radius");
    e.run = [&, &o = o] {
      const auto p = profile_semialgebraic(o.N, o.n, o.d, o.b, o.c3);
      json out = detail::bound_payload("log_bound", covering_bound_log(p, o.N, o.t, o.eps));
      out["profile"] = {{"log_K", number10(p.log_K.nats)}, {"n", p.n}};
      return out;
    };
  }
  {
    auto& e = leaf(bound, "rational", "covering bound for the image of a rational map");
    Options& o = e.o;
    req(e.app, "--n", o.n, "input dimension");
    req(e.app, "--N", o.N, "ambient dimension");
    req(e.app, "--d", o.d, "degree");
    req(e.app, "--t", o.t, "box half-width");
    req(e.app, "--eps", o.eps, "radius");
    e.run = [&, &o = o] {
      const auto p = profile_rational_image(o.n, o.N, o.d);
      json out = detail::bound_payload("log_bound", covering_bound_log(p, o.N, o.t, o.eps));
      out["profile"] = {{"log_K", number10(p.log_K.nats)}, {"n", p.n}};
      return out;
    };
  }
  {
    auto& e = leaf(bound, "tube", "volume bound for the eps-tube of a (K, n) regular set");
    Options& o = e.o;
    req(e.app, "--logK", o.logK, "log K in nats");
    req(e.app, "--n", o.n, "regularity dimension");
    req(e.app, "--N", o.N, "ambient dimension");
    req(e.app, "--t", o.t, "box half-width");
    req(e.app, "--eps", o.eps, "tube radius");
    opt(e.app, "--c", o.c, "absolute constant");
    e.run = [&, &o = o] {
      return detail::bound_payload(
          "log_volume_bound", tube_volume_log({LogReal{o.logK}, o.n}, o.N, o.t, o.eps, o.c));
    };
  }
  {
    auto& e = leaf(bound, "tube-prob", "probability bound for hitting the tube of an image");
    Options& o = e.o;
    req(e.app, "--N", o.N, "ambient dimension");
    req(e.app, "--n", o.n, "input dimension");
    req(e.app, "--d", o.d, "degree");
    req(e.app, "--eps", o.eps, "tube radius");
    req(e.app, "--sigma", o.sigma, "ball radius");
    opt(e.app, "--c", o.c, "absolute constant");
    e.run = [&, &o = o] {
      return detail::bound_payload(
          "log_prob_bound", tube_hit_probability_log(o.N, o.n, o.d, o.eps, o.sigma, o.c));
    };
  }
  {
    auto& e = leaf(bound, "width", "Gaussian width bound for a (K, n) regular set");
    Options& o = e.o;
    req(e.app, "--logK", o.logK, "log K in nats");
    req(e.app, "--n", o.n, "regularity dimension");
    req(e.app, "--N", o.N, "ambient dimension");
    req(e.app, "--t", o.t, "box half-width");
    e.run = [&, &o = o] {
      return detail::bound_payload("width_bound",
                                   width_bound_regular({LogReal{o.logK}, o.n}, o.N, o.t));
    };
  }

  // ---- tensor --------------------------------------------------------------
  CLI::App* tensor = group("tensor", "bounds for low CP-rank tensors");
  {
    auto& e = leaf(tensor, "cover", "covering bound valid for every rank");
    Options& o = e.o;
    req(e.app, "--shape", o.shape, "dimensions, e.g. 100,100,100");
    req(e.app, "--r", o.r, "CP rank");
    opt(e.app, "--t", o.t, "norm bound");
    req(e.app, "--eps", o.eps, "radius");
    opt(e.app, "--c", o.c, "absolute constant");
    e.app->add_flag("--sphere", o.sphere, "sphere projection of the cone (t = 1)");
    e.run = [&, &o = o] {
      const TensorShape s(detail::parse_int_list(o.shape, "--shape"));
      return detail::bound_payload("log_bound",
                                   cp_covering_log_general(s, o.r, o.t, o.eps, o.c, o.sphere));
    };
  }
  {
    auto& e = leaf(tensor, "cover-lowrank", "covering bound for r <= min n_i");
    Options& o = e.o;
    req(e.app, "--shape", o.shape, "dimensions, e.g. 100,100,100");
    req(e.app, "--r", o.r, "CP rank");
    opt(e.app, "--t", o.t, "norm bound");
    req(e.app, "--eps", o.eps, "radius");
    opt(e.app, "--c1", o.c1, "absolute constant c1");
    opt(e.app, "--c2", o.c2, "absolute constant c2");
    e.app->add_flag("--sphere", o.sphere, "sphere projection of the cone (t = 1)");
    e.run = [&, &o = o] {
      const TensorShape s(detail::parse_int_list(o.shape, "--shape"));
      return detail::bound_payload(
          "log_bound", cp_covering_log_lowrank(s, o.r, o.t, o.eps, o.c1, o.c2, o.sphere));
    };
  }
  {
    auto& e = leaf(tensor, "angle-prob", "probability of a small angle to the rank-r cone");
    Options& o = e.o;
    req(e.app, "--shape", o.shape, "dimensions, e.g. 100,100,100");
    req(e.app, "--r", o.r, "CP rank");
    req(e.app, "--eps", o.angle, "angle in radians or pi/k");
    opt(e.app, "--c1", o.c1, "absolute constant c1");
    opt(e.app, "--c2", o.c2, "absolute constant c2");
    e.run = [&, &o = o] {
      const TensorShape s(detail::parse_int_list(o.shape, "--shape"));
      return detail::bound_payload(
          "log_prob_bound",
          cp_angle_probability_log(s, o.r, detail::parse_angle(o.angle), o.c1, o.c2));
    };
  }

  // ---- sketch --------------------------------------------------------------
  CLI::App* sketch = group("sketch", "sketching dimensions and operators");
  {
    auto& e = leaf(sketch, "dim-subg", "sub-Gaussian rows for a polynomial image");
    Options& o = e.o;
    req(e.app, "--n", o.n, "input dimension");
    req(e.app, "--d", o.d, "degree");
    req(e.app, "--N", o.N, "output dimension");
    req(e.app, "--eps", o.eps, "distortion");
    req(e.app, "--delta", o.delta, "failure probability");
    opt(e.app, "--alpha", o.alpha, "sub-Gaussian norm");
    opt(e.app, "--c", o.c, "absolute constant")->default_val(1.0);
    e.run = [&, &o = o] {
      return json{{"m", subg_dim_poly(o.n, o.d, o.N, o.eps, o.delta, o.alpha, o.c)},
                  {"constants_used", {{"c", number10(o.c)}}}};
    };
  }
  {
    auto& e = leaf(sketch, "dim-sors", "SORS rows for a polynomial image");
    Options& o = e.o;
    req(e.app, "--n", o.n, "input dimension");
    req(e.app, "--d", o.d, "degree");
    req(e.app, "--N", o.N, "output dimension");
    req(e.app, "--eps", o.eps, "distortion");
    req(e.app, "--delta", o.delta, "failure probability");
    opt(e.app, "--beta", o.beta, "coherence parameter");
    opt(e.app, "--c", o.c, "absolute constant")->default_val(1.0);
    e.run = [&, &o = o] {
      return json{{"m", sors_dim_poly(o.n, o.d, o.N, o.eps, o.delta, o.beta, o.c)},
                  {"constants_used", {{"c", number10(o.c)}}}};
    };
  }
  auto lip_opts = [&](Options& o, CLI::App* a) {
    req(a, "--n", o.n, "input dimension of p");
    req(a, "--d", o.d, "degree of p");
    req(a, "--N", o.N, "output dimension of p");
    req(a, "--M", o.M, "output dimension of the Lipschitz map");
    req(a, "--t", o.t, "sup |p_i| on the domain");
    req(a, "--lip", o.lip, "Lipschitz constant");
    req(a, "--tau", o.tau, "small-residual threshold");
    req(a, "--eps", o.eps, "distortion");
    req(a, "--delta", o.delta, "failure probability");
    opt(a, "--scale", o.scale, "alpha (sub-Gaussian) or beta (SORS)");
    opt(a, "--c", o.c, "absolute constant")->default_val(1.0);
    opt(a, "--c-lambda", o.c_lambda, "floor constant of lambda");
  };
  auto lip_params = [](const Options& o) {
    return LipschitzSketchParams{o.n,   o.d,     o.N,     o.M, o.t, o.lip,
                                 o.tau, o.eps, o.delta, o.scale, o.c, o.c_lambda};
  };
  {
    auto& e = leaf(sketch, "dim-subg-lip", "sub-Gaussian rows for a Lipschitz composition");
    Options& o = e.o;
    lip_opts(o, e.app);
    e.run = [&, &o = o] { return json{{"m", subg_dim_lipschitz(lip_params(o))}}; };
  }
  {
    auto& e = leaf(sketch, "dim-sors-lip", "SORS rows for a Lipschitz composition");
    Options& o = e.o;
    lip_opts(o, e.app);
    e.run = [&, &o = o] { return json{{"m", sors_dim_lipschitz(lip_params(o))}}; };
  }
  auto sketch_opts = [&](Options& o, CLI::App* a) {
    opt(a, "--kind", o.kind, "subgaussian|sors");
    req(a, "--m", o.m, "rows");
    opt(a, "--distribution", o.distribution, "gaussian|rademacher");
    seed_opt(o, a);
  };
  auto make_op = [&](const Options& o, int M) -> SketchOperator {
    json desc = {{"kind", o.kind}, {"m", o.m}, {"M", M}, {"seed", seed_of(o).value}};
    if (o.kind == "subgaussian") desc["distribution"] = o.distribution;
    return sketch_from_json(desc);
  };
  {
    auto& e = leaf(sketch, "apply", "apply a seeded sketch to a vector");
    Options& o = e.o;
    sketch_opts(o, e.app);
    req(e.app, "--input", o.input, "vector as a JSON array or comma list");
    e.run = [&, &o = o] {
      const auto x = detail::parse_list(o.input, "--input");
      require(!x.empty(), "--input must not be empty");
      const SketchOperator op = make_op(o, static_cast<int>(x.size()));
      return json{{"sketch", to_json(op)},
                  {"output", vector10(apply_sketch(op, detail::to_vector(x)))}};
    };
  }
  {
    auto& e = leaf(sketch, "fwht", "orthonormal Walsh-Hadamard transform");
    Options& o = e.o;
    req(e.app, "--input", o.input, "vector of length 2^k");
    e.run = [&, &o = o] {
      json out = json::array();
      for (double v : fwht(detail::parse_list(o.input, "--input"))) out.push_back(number10(v));
      return out;
    };
  }

  // ---- opt -----------------------------------------------------------------
  CLI::App* optg = group("opt", "Gauss-Newton on polynomial least squares");
  auto gn_opts = [&](Options& o, CLI::App* a) {
    map_opt(o, a);
    req(a, "--x0", o.x0, "starting point as a JSON array or comma list");
    opt(a, "--max-iters", o.max_iters, "iteration cap");
    opt(a, "--grad-tol", o.grad_tol, "gradient tolerance");
    opt(a, "--step-tol", o.step_tol, "step tolerance");
    opt(a, "--damping", o.damping, "Levenberg damping");
    a->add_flag("--no-line-search", o.no_line_search, "take full Gauss-Newton steps");
  };
  auto gn_options = [](const Options& o) {
    GNOptions g;
    g.max_iters = o.max_iters;
    g.grad_tol = o.grad_tol;
    g.step_tol = o.step_tol;
    g.damping = o.damping;
    g.line_search.enabled = !o.no_line_search;
    return g;
  };
  {
    auto& e = leaf(optg, "gn", "minimize ||p(x)||");
    Options& o = e.o;
    gn_opts(o, e.app);
    e.run = [&, &o = o] {
      const PolynomialMap map = poly_map_from_json(detail::read_json_arg(o.map, "--map"));
      return to_json(
          gauss_newton(map, detail::to_vector(detail::parse_list(o.x0, "--x0")), gn_options(o)));
    };
  }
  {
    auto& e = leaf(optg, "gn-sketched", "minimize ||S p(x)|| with one seeded sketch");
    Options& o = e.o;
    gn_opts(o, e.app);
    sketch_opts(o, e.app);
    e.run = [&, &o = o] {
      const PolynomialMap map = poly_map_from_json(detail::read_json_arg(o.map, "--map"));
      const SketchOperator op = make_op(o, map.N());
      json out = to_json(sketched_gauss_newton(
          map, op, detail::to_vector(detail::parse_list(o.x0, "--x0")), gn_options(o)));
      out["sketch"] = to_json(op);
      return out;
    };
  }

  // ---- nn ------------------------------------------------------------------
  CLI::App* nn = group("nn", "generalization bounds for networks");
  {
    auto& e = leaf(nn, "rat-cover", "covering bound for rational networks");
    Options& o = e.o;
    arch_opt(o, e.app);
    req(e.app, "--n-samples", o.n_samples, "number of samples");
    req(e.app, "--eps", o.eps, "radius");
    opt(e.app, "--c", o.c, "absolute constant")->default_val(1.0);
    e.run = [&, &o = o] {
      const auto a = architecture_from_json(detail::read_json_arg(o.arch, "--arch"));
      json out = detail::bound_payload("log_bound", ratnn_covering_log(a, o.n_samples, o.eps, o.c));
      out["parameters"] = a.parameter_count();
      return out;
    };
  }
  {
    auto& e = leaf(nn, "rat-rademacher", "Rademacher bound for rational networks");
    Options& o = e.o;
    arch_opt(o, e.app);
    req(e.app, "--n-samples", o.n_samples, "number of samples");
    loss_opts(o, e.app);
    opt(e.app, "--c", o.c, "absolute constant")->default_val(1.0);
    e.run = [&, &o = o] {
      const auto a = architecture_from_json(detail::read_json_arg(o.arch, "--arch"));
      return detail::bound_payload("rademacher_bound",
                                   ratnn_rademacher_bound(a, o.n_samples, loss_of(o, a), o.c));
    };
  }
  {
    auto& e = leaf(nn, "relu-rademacher", "Rademacher bound for ReLU networks");
    Options& o = e.o;
    arch_opt(o, e.app);
    req(e.app, "--n-samples", o.n_samples, "number of samples");
    loss_opts(o, e.app);
    opt(e.app, "--c", o.c, "absolute constant")->default_val(1.0);
    e.run = [&, &o = o] {
      const auto a = architecture_from_json(detail::read_json_arg(o.arch, "--arch"));
      return detail::bound_payload("rademacher_bound",
                                   relu_rademacher_bound(a, o.n_samples, loss_of(o, a), o.c));
    };
  }
  {
    auto& e = leaf(nn, "gen-bound", "generalization gap from a Rademacher bound");
    Options& o = e.o;
    req(e.app, "--rademacher", o.rademacher, "Rademacher complexity");
    req(e.app, "--delta", o.delta, "failure probability");
    req(e.app, "--n-samples", o.n_samples, "number of samples");
    e.run = [&, &o = o] {
      return json{{"gen_bound", number10(generalization_bound(o.rademacher, o.delta,
                                                              o.n_samples))}};
    };
  }
  {
    auto& e = leaf(nn, "degree", "degree of a rational network or approximant");
    Options& o = e.o;
    opt(e.app, "--arch", o.arch, "architecture as inline JSON or a file path");
    opt(e.app, "--eps-final", o.eps_final, "final-layer error (ReLU architectures)");
    opt(e.app, "--n-samples", o.n_samples, "samples, used when --eps-final is absent");
    loss_opts(o, e.app);
    opt(e.app, "--t", o.t, "interval half-width (no --arch)");
    opt(e.app, "--eps", o.eps, "approximation error (no --arch)");
    e.run = [&, &o = o]() -> json {
      if (o.arch.empty()) return json{{"degree", number10(rat_approx_degree(o.t, o.eps))}};
      const auto a = architecture_from_json(detail::read_json_arg(o.arch, "--arch"));
      const std::vector<int> hidden(a.dims.begin() + 1, a.dims.end() - 1);
      switch (a.kind) {
        case ArchKind::ratnn:
          return json{{"log_degree", number10(ratnn_degree(hidden, a.s, a.L, a.trainable).nats)}};
        case ArchKind::ratcnn: {
          const std::vector<int> ch(a.channels.begin() + 1, a.channels.end() - 1);
          return json{
              {"log_degree", number10(ratcnn_degree(ch, a.k, a.s, a.L, a.trainable).nats)}};
        }
        case ArchKind::relu: {
          const double target =
              o.eps_final ? *o.eps_final : relu_target_error(a, o.n_samples, loss_of(o, a));
          return json{{"log_degree", number10(relu_approx_degree(a, target).nats)},
                      {"eps_final", number10(target)}};
        }
      }
      return json{};
    };
  }

  // ---- verify --------------------------------------------------------------
  CLI::App* verify = group("verify", "Monte-Carlo checks of the bounds");
  {
    auto& e = leaf(verify, "cover", "greedy net of a sampled image vs the covering bound", true);
    Options& o = e.o;
    map_opt(o, e.app);
    opt(e.app, "--box", o.box, "parameter box half-width");
    req(e.app, "--t", o.t, "box half-width of the image");
    req(e.app, "--eps", o.eps, "radius");
    opt(e.app, "--count", o.count, "samples");
    seed_opt(o, e.app);
    e.run = [&, &o = o] {
      const PolynomialMap map = poly_map_from_json(detail::read_json_arg(o.map, "--map"));
      return to_json(covering_check(map, o.box, o.t, o.eps, o.count, seed_of(o)));
    };
  }
  {
    auto& e = leaf(verify, "distortion", "success rate of sketches on a sampled image", true);
    Options& o = e.o;
    map_opt(o, e.app);
    opt(e.app, "--box", o.box, "parameter box half-width");
    opt(e.app, "--ensemble", o.ensemble, "gaussian|rademacher|sors");
    req(e.app, "--eps", o.eps, "distortion");
    req(e.app, "--delta", o.delta, "failure probability");
    opt(e.app, "--trials", o.trials, "independent sketches");
    opt(e.app, "--count", o.count, "samples");
    opt(e.app, "--c", o.c, "constant of the dimension formula")
        ->default_val(kCalibratedSubgConstant);
    opt(e.app, "--m", o.m_override, "rows (overrides the formula)");
    seed_opt(o, e.app);
    e.run = [&, &o = o] {
      const PolynomialMap map = poly_map_from_json(detail::read_json_arg(o.map, "--map"));
      SuccessRateOptions so;
      so.trials = o.trials;
      so.count = o.count;
      so.c = o.c;
      if (o.m_override) so.m = *o.m_override;
      return to_json(sketch_success_rate(map, o.box, sketch_ensemble_from_string(o.ensemble),
                                         o.eps, o.delta, seed_of(o), so));
    };
  }
  {
    auto& e = leaf(verify, "tube", "tube hit frequency vs the probability bound", true);
    Options& o = e.o;
    map_opt(o, e.app);
    opt(e.app, "--box", o.box, "parameter box half-width");
    opt(e.app, "--center", o.center, "ball center (default 0)");
    req(e.app, "--sigma", o.sigma, "ball radius");
    req(e.app, "--eps", o.eps, "tube radius");
    opt(e.app, "--mc-samples", o.mc_samples, "Monte-Carlo samples");
    opt(e.app, "--grid-density", o.grid_density, "grid points per parameter axis");
    opt(e.app, "--c", o.c, "absolute constant");
    seed_opt(o, e.app);
    e.run = [&, &o = o] {
      const PolynomialMap map = poly_map_from_json(detail::read_json_arg(o.map, "--map"));
      Eigen::VectorXd center = Eigen::VectorXd::Zero(map.N());
      if (!o.center.empty()) center = detail::to_vector(detail::parse_list(o.center, "--center"));
      TubeProbeOptions to;
      to.mc_samples = o.mc_samples;
      to.grid_density = o.grid_density;
      to.c = o.c;
      return to_json(tube_probe(map, o.box, center, o.sigma, o.eps, seed_of(o), to));
    };
  }
  {
    auto& e = leaf(verify, "rademacher", "Rademacher estimate over sampled ReLU networks", true);
    Options& o = e.o;
    arch_opt(o, e.app);
    req(e.app, "--n-samples", o.n_samples, "number of samples");
    loss_opts(o, e.app);
    opt(e.app, "--networks", o.networks, "sampled networks");
    opt(e.app, "--draws", o.draws, "sign vectors");
    opt(e.app, "--c", o.c, "absolute constant")->default_val(kCalibratedReluConstant);
    seed_opt(o, e.app);
    e.run = [&, &o = o] {
      const auto a = architecture_from_json(detail::read_json_arg(o.arch, "--arch"));
      ReluCheckOptions ro;
      ro.networks = o.networks;
      ro.sigma_draws = o.draws;
      ro.c = o.c;
      return to_json(relu_rademacher_check(a, o.n_samples, loss_of(o, a), seed_of(o), ro));
    };
  }

  auto error = [](const std::string& code, const std::string& message, const std::string& ref) {
    return CommandResult{1, json{{"error", {{"code", code}, {"message", message}, {"ref", ref}}}},
                         {}};
  };

  try {
    // Splice config values in front of the user's flags.
    std::vector<std::string> tokens = args;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      std::string path;
      std::size_t erase = 0;
      if (tokens[i] == "--config" && i + 1 < tokens.size()) {
        path = tokens[i + 1];
        erase = 2;
      } else if (tokens[i].rfind("--config=", 0) == 0) {
        path = tokens[i].substr(9);
        erase = 1;
      }
      if (erase == 0) continue;
      require(i >= 2, "--config must follow the command name");
      const auto extra = detail::config_tokens(detail::read_json_arg(path, "--config"));
      tokens.erase(tokens.begin() + static_cast<long>(i), tokens.begin() + static_cast<long>(i + erase));
      tokens.insert(tokens.begin() + 2, extra.begin(), extra.end());
      break;
    }
    std::vector<std::string> reversed(tokens.rbegin(), tokens.rend());
    app.parse(reversed);

    for (auto& [name, entry] : leaves) {
      if (!entry.app->parsed()) continue;
      const json payload = entry.run();
      int code = 0;
      if (entry.verify && payload.is_object() && payload.contains("pass") &&
          !payload["pass"].get<bool>()) {
        code = 2;
      }
      return {code, payload, {}};
    }
    return error("usage", "no command selected", "");
  } catch (const CLI::CallForHelp&) {
    return {0, json{}, app.help()};
  } catch (const CLI::CallForAllHelp&) {
    return {0, json{}, app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    return error("usage", e.what(), "");
  } catch (const InputError& e) {
    return error("input_error", e.what(), e.ref());
  } catch (const json::exception& e) {
    return error("json_error", e.what(), "");
  }
}

}  // namespace regcover::cli
