#pragma once

// The weighted Bergman projection T_sigma, its kernel and kernel derivatives,
// norms on the derivative tuple, and sampled Bloch semi-norm estimates.

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bergman/ball_point.hpp"
#include "bergman/multiindex.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/special.hpp"

namespace bergman {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// apply_T and derivative_tuple refuse |z| at or above this.
inline constexpr double kPeakedKernelMaxModulus = 0.999;

/// A conjugation-invariant norm on C^{d~}.
///
/// p-norms (1 <= p <= inf) know their dual exponent and produce Hoelder
/// equality witnesses. Custom norms carry an evaluator and optionally a
/// witness builder; without one the lower-bound machinery is unavailable.
class NormSpec {
 public:
  using Evaluator = std::function<double(std::span<const cplx>)>;
  /// Given Z, returns W with dual norm 1 and |<Z, W>| = |Z|.
  using WitnessBuilder = std::function<MonomialVector(const MonomialVector&)>;

  static NormSpec p_norm(double p);
  static NormSpec custom(std::string name, Evaluator evaluator, WitnessBuilder witness = {});

  bool is_p_norm() const { return !custom_; }
  double p() const { return p_; }
  /// q = p/(p-1); inf for p = 1, 1 for p = inf.
  double dual_exponent() const;
  bool dual_available() const { return !custom_ || static_cast<bool>(witness_); }
  const std::string& name() const { return name_; }

  double operator()(std::span<const cplx> z) const;
  double operator()(const MonomialVector& z) const { return (*this)(z.components()); }

  /// The dual norm; p-norms only.
  double dual(std::span<const cplx> z) const;

  /// Hoelder equality-case witness for z; throws std::logic_error when no dual is known.
  MonomialVector witness(const MonomialVector& z) const;

 private:
  NormSpec() = default;
  std::string name_;
  double p_ = 2.0;
  bool custom_ = false;
  Evaluator eval_;
  WitnessBuilder witness_;
};

/// (sum |z_k|^p)^{1/p}, or max |z_k| for p = inf. Throws std::domain_error for p < 1.
double p_norm_value(std::span<const cplx> z, double p);

double vector_norm(const MonomialVector& z, const NormSpec& norm);

/// A function on the ball with essential supremum at most 1.
class BoundedFunction {
 public:
  enum class Family { constant, phase_field, clipped_polynomial, extremal };

  BoundedFunction(Family family, std::string description, std::function<cplx(const BallPoint&)> eval)
      : family_(family), description_(std::move(description)), eval_(std::move(eval)) {}

  /// G(w) = c, |c| <= 1.
  static BoundedFunction constant(cplx c);
  /// G(w) = exp(i Re q(w)) for a random polynomial q in w and conj(w).
  static BoundedFunction phase_field(int d, std::uint64_t seed);
  /// A random polynomial in w, conj(w) scaled by 1.01 x its sup over 1e4 random
  /// points of the ball, then radially clipped to the closed unit disc.
  static BoundedFunction clipped_polynomial(int d, std::uint64_t seed);
  /// Random draw from the first three families.
  static BoundedFunction random(int d, std::uint64_t seed);

  cplx operator()(const BallPoint& w) const { return eval_(w); }
  Family family() const { return family_; }
  const std::string& description() const { return description_; }

 private:
  Family family_;
  std::string description_;
  std::function<cplx(const BallPoint&)> eval_;
};

std::string to_string(BoundedFunction::Family family);

/// K_sigma(z,w) = (1-|w|^2)^sigma / (1-<z,w>)^{lambda}, principal branch.
cplx kernel(const KernelParams& params, const BallPoint& z, const BallPoint& w);

/// partial_z^alpha K_sigma(z,w) = Gamma(lambda+n)/Gamma(lambda) (1-|w|^2)^sigma (1-<z,w>)^{-(lambda+n)} conj(w)^alpha.
cplx kernel_derivative(const MultiIndex& alpha, const KernelParams& params, const BallPoint& z, const BallPoint& w);

/// T_sigma G(z) = c_sigma int K_sigma(z,w) G(w) dv(w).
IntegralResult apply_T(const BoundedFunction& G, const KernelParams& params, const BallPoint& z,
                       const QuadratureRule& rule);

struct TupleResult {
  MonomialVector value;        ///< D_z(T_sigma G)(z) in canonical order
  std::vector<double> errors;  ///< per-component error estimates
};

/// All order-n partial derivatives of T_sigma G at z, by differentiation under the integral.
TupleResult derivative_tuple(const BoundedFunction& G, const KernelParams& params, const BallPoint& z,
                             const QuadratureRule& rule);

struct BlochEstimate {
  double value = 0.0;           ///< max over probes of (1-|z|^2)^n |D_z(T_sigma G)(z)|
  double error_estimate = 0.0;  ///< norm of the componentwise error vector at the maximizing probe
  BallPoint argmax;
  /// (value, error) at each probe, in probe order.
  std::vector<std::pair<double, double>> per_probe;
};

/// A lower bound for ||T_sigma G||_Bloch from the given probes.
BlochEstimate bloch_seminorm_estimate(const BoundedFunction& G, const KernelParams& params, const NormSpec& norm,
                                      const std::vector<BallPoint>& probes, const QuadratureRule& rule);

/// `directions` seeded random unit directions times the radii (default {0, 0.1, ..., 0.9, 0.95}).
std::vector<BallPoint> default_probes(int d, std::uint64_t seed, int directions = 8,
                                      std::vector<double> radii = {});

}  // namespace bergman
