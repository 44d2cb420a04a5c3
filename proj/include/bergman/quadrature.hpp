#pragma once

// Integration over the unit ball against the normalized volume measure dv and
// the weighted probability measure dv_sigma = c_sigma (1-|w|^2)^sigma dv.
//
// Product rule (d = 1, 2). With u = |w|^2 the measure factors as
//   dv_sigma = c_sigma d u^{d-1} (1-u)^sigma du  x  (normalized sphere measure),
// so the radial direction uses Gauss-Jacobi nodes for the weight
// (1-u)^sigma u^{d-1}. The circle (d=1) uses the trapezoid rule. The 3-sphere
// (d=2) is parametrized as (sqrt(s) e^{i a}, sqrt(1-s) e^{i b}); s is uniform, so
// Gauss-Legendre in s and trapezoid in a and b. `sphere_nodes` is the node count
// per angular coordinate. The error estimate is |Q_N - Q_{N/2}| (all node
// counts halved) plus a rounding floor.
//
// Monte Carlo (any d). u ~ Beta(d, sigma+1), direction from normalized complex
// Gaussians. Sample i draws from a generator keyed by (seed, i) only, so the
// result does not depend on the worker count. The error estimate is the
// standard error of the mean.
//
// The CLI reads rule overrides from flags or from a JSON block (see
// rule_from_json in bergman/cli.hpp):
//   {"scheme": "product" | "monte-carlo", "radial_nodes": int, "sphere_nodes": int,
//    "samples": int, "seed": int}
// Zero node counts select the per-dimension defaults: 128 radial x 256 angular
// for d = 1, 64 radial x 32^3 for d = 2, 2e6 Monte Carlo samples.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bergman/ball_point.hpp"
#include "bergman/special.hpp"

namespace bergman {

enum class Scheme { product, monte_carlo };

struct QuadratureRule {
  Scheme scheme = Scheme::product;
  int radial_nodes = 0;  ///< product rule; 0 selects the default for d
  int sphere_nodes = 0;  ///< product rule, per angular coordinate; 0 selects the default
  std::uint64_t samples = 2'000'000;
  std::uint64_t seed = 0x5EED;

  static QuadratureRule product(int radial, int sphere) {
    return {Scheme::product, radial, sphere, 0, 0};
  }
  static QuadratureRule monte_carlo(std::uint64_t samples, std::uint64_t seed) {
    return {Scheme::monte_carlo, 0, 0, samples, seed};
  }
  /// Product rule with default budgets for d <= 2, Monte Carlo otherwise.
  static QuadratureRule defaults(int d);

  /// Fills zero node counts with the defaults for d and validates the (scheme, d) pair.
  QuadratureRule resolved(int d) const;

  /// Total number of integrand evaluations (fine rule only).
  std::uint64_t evaluation_count(int d) const;
};

std::string to_string(Scheme scheme);
Scheme parse_scheme(const std::string& name);

struct IntegralResult {
  cplx value = 0.0;
  double error_estimate = 0.0;
  std::string warning;  ///< empty unless the evaluation is outside the rule's resolution contract
};

using ScalarIntegrand = std::function<cplx(const BallPoint&)>;
/// Writes `components` values for the point into the output span.
using VectorIntegrand = std::function<void(const BallPoint&, std::span<cplx>)>;

/// int_B f dv (v(B) = 1).
IntegralResult integrate_ball(const ScalarIntegrand& f, int d, const QuadratureRule& rule);

/// int_B f dv_sigma with dv_sigma(B) = 1.
IntegralResult integrate_weighted(const ScalarIntegrand& f, const KernelParams& params, const QuadratureRule& rule);

/// Componentwise int_B F dv_sigma for a vector-valued integrand sharing one node set.
///
/// `focus` (product rule only) names the point where the integrand peaks,
/// typically the z of a kernel 1/|1-<z,w>|^k. With beta = min(0.995, 1 - 4(1-|focus|))
/// positive (|focus| > 3/4) the node set is rotated by a unitary map sending e_1 to
/// focus/|focus|, and the first angle is sampled through t -> t - beta sin t,
/// which keeps the trapezoid rule spectrally accurate while clustering nodes at
/// the peak. For |focus| <= 3/4 the plain node set is used, so results stay
/// smooth in the focus. Monte Carlo ignores it.
std::vector<IntegralResult> integrate_weighted_vector(const VectorIntegrand& f, std::size_t components, int d,
                                                      double sigma, const QuadratureRule& rule,
                                                      const std::optional<BallPoint>& focus = std::nullopt);

/// J_{c,t}(z) = int_B (1-|w|^2)^t |1-<z,w>|^{-(d+1+t+c)} dv(w).
/// Sets a warning when |z| > 0.999.
IntegralResult j_numeric(double c, double t, const BallPoint& z, const QuadratureRule& rule);

/// Both sides of the integral transform identity
///   (1-|z|^2)^n int Phi(w) |1-<z,w>|^{-(lambda+n)} dv_sigma(w)
///     = int Phi(phi_z(w)) |1-<z,w>|^{-(lambda-n)} dv_sigma(w).
std::pair<IntegralResult, IntegralResult> transform_identity_sides(const ScalarIntegrand& phi_fn,
                                                                   const KernelParams& params, const BallPoint& z,
                                                                   const QuadratureRule& rule);

/// Nodes and normalized weights (sum 1) of Gauss-Jacobi quadrature on [0, 1] for
/// the weight (1-u)^a u^b.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_jacobi_unit(int count, double a, double b);

/// Worker count: BERGMAN_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, count) across worker_count() threads. Each index is
/// processed exactly once; callers write results by index to stay deterministic.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace bergman
