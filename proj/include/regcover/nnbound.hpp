#pragma once

// Covering and Rademacher-complexity bounds for rational (dense and
// convolutional) networks and for ReLU networks approximated by rational
// ones. Degrees are returned in log space.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "regcover/bounds.hpp"
#include "regcover/core.hpp"

namespace regcover {

enum class ArchKind { ratnn, ratcnn, relu };

inline std::string to_string(ArchKind k) {
  switch (k) {
    case ArchKind::ratnn: return "ratnn";
    case ArchKind::ratcnn: return "ratcnn";
    case ArchKind::relu: return "relu";
  }
  return "?";
}

inline ArchKind arch_kind_from_string(const std::string& s) {
  if (s == "ratnn") return ArchKind::ratnn;
  if (s == "ratcnn") return ArchKind::ratcnn;
  if (s == "relu") return ArchKind::relu;
  throw InputError("unknown architecture kind '" + s + "' (expected ratnn|ratcnn|relu)");
}

/// Network shape and the caps the bounds depend on.
/// dims = d_0..d_L; channels = c_0..c_L and kernel k for ratcnn;
/// s = activation degree and `trainable` for rational kinds;
/// omegas = per-layer caps on |entries of (A_i | b_i)| for relu;
/// t bounds the range of the last activation.
struct NetArchitecture {
  ArchKind kind = ArchKind::ratnn;
  int L = 1;
  std::vector<int> dims;
  std::vector<int> channels;
  int k = 0;
  int s = 1;
  bool trainable = false;
  std::vector<double> omegas;
  double t = 1.0;

  void validate() const {
    require(L >= 1, "architecture depth L must be >= 1");
    require(static_cast<int>(dims.size()) == L + 1, "architecture needs dims d_0..d_L");
    for (int d : dims) require(d >= 1, "architecture widths must be >= 1");
    require(t > 0.0, "output range bound t must be positive");
    switch (kind) {
      case ArchKind::ratnn:
        require(s >= 1, "activation degree s must be >= 1");
        break;
      case ArchKind::ratcnn:
        require(s >= 1, "activation degree s must be >= 1");
        require(static_cast<int>(channels.size()) == L + 1,
                "convolutional architecture needs channels c_0..c_L");
        for (int c : channels) require(c >= 1, "channel counts must be >= 1");
        require(k >= 1, "kernel size must be >= 1");
        break;
      case ArchKind::relu:
        require(static_cast<int>(omegas.size()) == L, "ReLU architecture needs omegas w_1..w_L");
        for (int d : dims) require(d >= 2, "ReLU bound requires every d_i >= 2");
        for (double w : omegas) require(w >= 2.0, "ReLU bound requires every omega_i >= 2");
        break;
    }
  }

  /// Number of trainable parameters.
  long parameter_count() const {
    long N = 0;
    for (int i = 1; i <= L; ++i) {
      if (kind == ArchKind::ratcnn) {
        N += static_cast<long>(channels[i]) * channels[i - 1] * k * k + dims[i];
      } else {
        N += static_cast<long>(dims[i]) * (dims[i - 1] + 1);
      }
    }
    if (kind != ArchKind::relu && trainable) N += 2L * (s + 1) * L;
    return N;
  }
};

/// Lipschitz constant and range [0, H] of the loss.
struct LossSpec {
  double lip = 1.0;
  double H = 1.0;
};

/// Softmax cross-entropy on outputs in [-t, t]^{d_L}:
/// range [0, 2t + log d_L], Lipschitz constant sqrt(d_L).
inline LossSpec cross_entropy_loss(double t, int d_L) {
  require(t > 0.0 && d_L >= 1, "cross-entropy loss needs t > 0 and d_L >= 1");
  return {std::sqrt(static_cast<double>(d_L)), 2.0 * t + std::log(static_cast<double>(d_L))};
}

/// Degree of a rational function within eps of ReLU on [-t, t]:
/// (6/pi^2) log_+^2(4t/eps).
inline double rat_approx_degree(double t, double eps) {
  require(t > 0.0 && eps > 0.0, "rat_approx_degree requires t, eps > 0");
  const double l = log_plus(4.0 * t / eps);
  return 6.0 / (std::numbers::pi * std::numbers::pi) * l * l;
}

/// log of 2 d_1...d_{L-1} s^L (times 1 + 1/s when trainable): the degree of
/// a rational dense network as a function of its parameters.
inline LogReal ratnn_degree(std::span<const int> hidden, int s, int L, bool trainable) {
  const std::string ref = "degree of rational networks";
  require(s >= 1 && L >= 1, "ratnn_degree requires s >= 1 and L >= 1", ref);
  require(static_cast<int>(hidden.size()) == L - 1, "ratnn_degree needs L - 1 hidden widths", ref);
  double acc = std::log(2.0) + L * std::log(static_cast<double>(s));
  for (int d : hidden) {
    require(d >= 2, "ratnn_degree requires every hidden width >= 2", ref);
    acc += std::log(static_cast<double>(d));
  }
  if (trainable) acc += std::log1p(1.0 / s);
  return LogReal{acc};
}

/// log of 2 c_1...c_{L-1} s^L k^{2(L-1)} (times 1 + 1/s when trainable).
inline LogReal ratcnn_degree(std::span<const int> hidden_channels, int k, int s, int L,
                             bool trainable) {
  const std::string ref = "degree of rational convolutional networks";
  require(k >= 2, "ratcnn_degree requires kernel size k >= 2", ref);
  require(s >= 1 && L >= 1, "ratcnn_degree requires s >= 1 and L >= 1", ref);
  require(static_cast<int>(hidden_channels.size()) == L - 1,
          "ratcnn_degree needs L - 1 hidden channel counts", ref);
  double acc = std::log(2.0) + L * std::log(static_cast<double>(s)) +
               2.0 * (L - 1) * std::log(static_cast<double>(k));
  for (int c : hidden_channels) {
    require(c >= 1, "channel counts must be >= 1", ref);
    acc += std::log(static_cast<double>(c));
  }
  if (trainable) acc += std::log1p(1.0 / s);
  return LogReal{acc};
}

namespace detail {

inline void require_rational(const NetArchitecture& arch, const std::string& ref) {
  arch.validate();
  require(arch.kind != ArchKind::relu, "bound applies to rational architectures only", ref);
}

// log W, the argument of the second logarithm in the rational covering bound.
inline double rational_log_W(const NetArchitecture& arch, int n_samples, double c) {
  const double N = static_cast<double>(arch.parameter_count());
  double acc = std::log(c) + std::log(N) +
               2.5 * std::log(static_cast<double>(n_samples) * arch.dims[arch.L]) +
               arch.L * std::log(static_cast<double>(arch.s));
  if (arch.kind == ArchKind::ratcnn) {
    acc += 2.0 * (arch.L - 1) * std::log(static_cast<double>(arch.k));
    for (int j = 1; j < arch.L; ++j) acc += std::log(static_cast<double>(arch.channels[j]));
  } else {
    for (int j = 1; j < arch.L; ++j) acc += std::log(static_cast<double>(arch.dims[j]));
  }
  return acc;
}

}  // namespace detail

/// Bound on log N(F(X), eps) for rational networks evaluated on n samples:
/// N log(t/eps) + (N + 1) log W.
inline BoundReport ratnn_covering_log(const NetArchitecture& arch, int n_samples, double eps,
                                      double c = 1.0) {
  const std::string ref = "covering bound for rational networks";
  detail::require_rational(arch, ref);
  require(n_samples >= 1, "n_samples must be >= 1", ref);
  require(c > 0.0, "constant c must be positive", ref);
  const double diameter =
      2.0 * arch.t * std::sqrt(static_cast<double>(n_samples) * arch.dims[arch.L]);
  require(eps > 0.0 && eps <= diameter, "eps must lie in (0, 2 t sqrt(n d_L)]", ref);
  const double N = static_cast<double>(arch.parameter_count());
  const double value =
      N * std::log(arch.t / eps) + (N + 1.0) * detail::rational_log_W(arch, n_samples, c);
  return {value, true, {{"c", c}}, ref, {}};
}

/// Rademacher complexity bound for rational networks (linear domain):
/// c a sqrt(N/n) (sqrt(pi) + sqrt(log(t W lip / (a sqrt(n))))),
/// a = min(H, t lip sqrt(d_L)).
inline BoundReport ratnn_rademacher_bound(const NetArchitecture& arch, int n_samples,
                                          const LossSpec& loss, double c = 1.0) {
  const std::string ref = "Rademacher bound for rational networks";
  detail::require_rational(arch, ref);
  require(n_samples >= 1, "n_samples must be >= 1", ref);
  require(loss.lip > 0.0 && loss.H >= 0.0, "loss needs lip > 0 and H >= 0", ref);
  require(c > 0.0, "constant c must be positive", ref);
  const double d_L = arch.dims[arch.L];
  const double alpha = std::min(loss.H, arch.t * loss.lip * std::sqrt(d_L));
  BoundReport report{0.0, false, {{"c", c}}, ref, {}};
  if (alpha <= 0.0) return report;
  const double N = static_cast<double>(arch.parameter_count());
  const double log_arg = std::log(arch.t) + detail::rational_log_W(arch, n_samples, c) +
                         std::log(loss.lip) - std::log(alpha) -
                         0.5 * std::log(static_cast<double>(n_samples));
  report.value = c * alpha * std::sqrt(N / n_samples) *
                 (std::sqrt(std::numbers::pi) + std::sqrt(std::max(0.0, log_arg)));
  return report;
}

/// Rademacher complexity bound for ReLU networks with ||x||_inf <= 1:
/// c a sqrt(N/n) (log b + log n + sum log d_i + L log_+ log_+(b sqrt(n/d_L)))^{1/2}.
inline BoundReport relu_rademacher_bound(const NetArchitecture& arch, int n_samples,
                                         const LossSpec& loss, double c = 1.0) {
  const std::string ref = "Rademacher bound for ReLU networks";
  arch.validate();
  require(arch.kind == ArchKind::relu, "bound applies to ReLU architectures only", ref);
  require(n_samples >= 1, "n_samples must be >= 1", ref);
  require(loss.lip > 0.0 && loss.H > 0.0, "loss needs lip > 0 and H > 0", ref);
  require(c > 0.0, "constant c must be positive", ref);
  const double d_L = arch.dims[arch.L];
  double omega_prod = 1.0;
  for (double w : arch.omegas) omega_prod *= w;
  const double scale = loss.lip * std::sqrt(d_L) * omega_prod;
  const double alpha = std::min(loss.H, scale);
  const double beta = scale / alpha;
  const double n = n_samples;
  double inner = std::log(beta) + std::log(n);
  for (int i = 1; i <= arch.L; ++i) inner += std::log(static_cast<double>(arch.dims[i]));
  inner += arch.L * log_plus_log_plus(beta * std::sqrt(n / d_L));
  const double N = static_cast<double>(arch.parameter_count());
  return {c * alpha * std::sqrt(N / n) * std::sqrt(inner), false, {{"c", c}}, ref, {}};
}

/// 2 R + 3 sqrt(log(2/delta) / (2n)).
inline double generalization_bound(double rademacher, double delta, int n_samples) {
  require(delta > 0.0 && delta < 1.0, "generalization_bound requires delta in (0, 1)");
  require(n_samples >= 1, "generalization_bound requires n >= 1");
  return 2.0 * rademacher + 3.0 * std::sqrt(std::log(2.0 / delta) / (2.0 * n_samples));
}

/// Final-layer error target a / (lip sqrt(n)) used by the ReLU bound.
inline double relu_target_error(const NetArchitecture& arch, int n_samples,
                                const LossSpec& loss) {
  arch.validate();
  double omega_prod = 1.0;
  for (double w : arch.omegas) omega_prod *= w;
  const double alpha =
      std::min(loss.H, loss.lip * std::sqrt(static_cast<double>(arch.dims[arch.L])) * omega_prod);
  return alpha / (loss.lip * std::sqrt(static_cast<double>(n_samples)));
}

/// log theta_L, the degree of the rational network that tracks a ReLU
/// network to within eps_final on ||x||_inf <= 1.
///
/// The first layer is approximated to eps = eps_final / prod_{i>=2}(1 + w_i);
/// layer i >= 2 uses tolerance eps_i = delta_{i-1}, and the error grows as
/// delta_i = (1 + w_i) delta_{i-1}. Layer inputs are bounded by
/// lambda_i = prod_{j<=i} w_j, and each layer needs degree
/// Delta_i = (6/pi^2) log_+^2(4 w_i lambda_{i-1} / delta_{i-1}).
inline LogReal relu_approx_degree(const NetArchitecture& arch, double eps_final) {
  const std::string ref = "rational approximation of ReLU networks";
  arch.validate();
  require(arch.kind == ArchKind::relu, "relu_approx_degree needs a ReLU architecture", ref);
  require(eps_final > 0.0, "eps_final must be positive", ref);
  double growth = 1.0;
  for (int i = 2; i <= arch.L; ++i) growth *= 1.0 + arch.omegas[i - 1];
  double delta = eps_final / growth;  // delta_0 := eps for the first layer
  double lambda = 1.0;                // lambda_0
  double log_theta = 0.0;
  for (int i = 1; i <= arch.L; ++i) {
    const double w = arch.omegas[i - 1];
    const double Delta = rat_approx_degree(w * lambda, delta);
    log_theta += std::log1p(Delta);
    if (i >= 2) delta *= 1.0 + w;
    lambda *= w;
  }
  for (int j = 1; j < arch.L; ++j) log_theta += std::log1p(static_cast<double>(arch.dims[j]));
  return LogReal{log_theta};
}

}  // namespace regcover
