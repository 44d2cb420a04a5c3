#pragma once

// Gamma-function closed forms: the weight normalization c_sigma, the supremum of
// the Forelli-Rudin type integral J_{c,t}, the sharp L^inf -> Bloch constant and
// a handful of published reference norms. Everything is evaluated in log space.

#include <cstdint>
#include <string>

namespace bergman {

/// (d, sigma, n) together with the derived lambda = d+1+sigma, c_sigma and d~.
struct KernelParams {
  int d = 1;
  double sigma = 0.0;
  int n = 1;
  double lambda = 2.0;
  double c_sigma = 1.0;
  std::uint64_t d_tilde = 1;

  /// Validates d >= 1, n >= 1, sigma > -1 (std::domain_error) and fills the derived fields.
  static KernelParams make(int d, double sigma, int n);
};

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// Gamma(d+sigma+1) / (Gamma(sigma+1) Gamma(d+1)); requires sigma > -1.
double c_sigma(int d, double sigma);

/// sup_B J_{c,t} = J_{c,t}(e_1) = Gamma(d+1)Gamma(t+1)Gamma(-c) / Gamma^2((d+1+t-c)/2).
/// Requires c < 0 and t > -1.
double j_closed_form(double c, double t, int d);

/// C * Gamma(lambda+n) Gamma(n) / Gamma^2((lambda+n)/2).
double theoretical_norm(const KernelParams& params, double C);

/// Gamma(lambda+n)/Gamma(lambda), the factor produced by n-fold differentiation of the kernel.
double derivative_factor(const KernelParams& params);

/// One-dimensional ordinary projection (d=1, sigma=0, C=1): 4(n+1)Gamma^2(n) / (n Gamma^2(n/2)).
double disc_closed_form(int n);

/// Gradient semi-norm constant Gamma(lambda+1)/Gamma^2((lambda+1)/2).
double gradient_constant(double lambda);

enum class ReferenceKind {
  l1,        ///< ||T_sigma||_{L^1 -> L^1_a}, sigma > 0
  l2,        ///< ||T_sigma||_{L^2 -> L^2_a}, sigma > -1/2
  liu,       ///< two-sided bound for ||T_0||_{L^p -> L^p_a}, 1 < p < inf
  disc,      ///< ordinary projection on the disc, L^inf -> Bloch, n-th derivative
  perala,    ///< 8/pi
  gradient,  ///< gradient semi-norm constant for lambda = d+1+sigma
};

ReferenceKind parse_reference_kind(const std::string& name);
std::string to_string(ReferenceKind kind);

/// A constant that is either known exactly (lower == upper) or only bracketed.
struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  bool is_exact() const { return lower == upper; }
  bool contains(double x, double slack = 0.0) const { return x >= lower - slack && x <= upper + slack; }
};

struct ReferenceInputs {
  int d = 1;
  double sigma = 0.0;
  int n = 1;
  double p = 2.0;
};

/// Throws std::domain_error quoting the admissible range when inputs are outside it.
Interval reference_constants(ReferenceKind kind, const ReferenceInputs& in);

}  // namespace bergman
