#pragma once

// Lower-bound side of the sharp L^inf -> Bloch estimate: the boundary maximizer
// zeta0 of |Z|, its dual witness, the unimodular test functions G_m, and the
// values (1-|z_m|^2)^n |<D_z(T_sigma G_m)(z_m), conj(W)>| along z_m = eps_m zeta0.

#include <optional>
#include <vector>

#include "bergman/ball_point.hpp"
#include "bergman/multiindex.hpp"
#include "bergman/projection.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/special.hpp"

namespace bergman {

/// Largest eps accepted by each route. The direct integrand peaks like
/// |1-<z,w>|^{-(lambda+n)}; the transformed one only like |1-<z,w>|^{-(lambda-n)}.
inline constexpr double kDirectRouteMaxEps = 0.95;
inline constexpr double kTransformedRouteMaxEps = 0.999;

enum class Route { direct, transformed };
std::string to_string(Route route);

struct ExtremalConfig {
  KernelParams params;
  NormSpec norm = NormSpec::p_norm(2.0);
  BallPoint zeta0;
  MonomialVector dual_witness;
  std::vector<double> epsilons;
  /// |<Z(zeta0), dual_witness>| = |Z(zeta0)|; equals C whenever zeta0 is a maximizer.
  double pairing_value = 0.0;

  /// Chooses zeta0 (select_zeta0 unless given), builds the witness and checks every invariant.
  /// Throws std::invalid_argument for norms without a dual witness or a bad eps schedule.
  static ExtremalConfig make(const KernelParams& params, const NormSpec& norm, std::vector<double> epsilons,
                             std::optional<BallPoint> zeta0 = std::nullopt);
};

/// {0.5, 0.8, 0.9, 0.95, 0.99}
std::vector<double> default_epsilons();

/// p >= 2: e_1. 1 <= p < 2: (d^{-1/2}, ..., d^{-1/2}). Custom norms: the c_optimize maximizer.
BallPoint select_zeta0(const NormSpec& norm, int d, int n);

/// Hoelder equality witness for Z(zeta0) in the dual norm.
MonomialVector dual_witness(const BallPoint& zeta0, const NormSpec& norm, int n);

/// G_m(w) = phase(<Z(w), W>) |1-<z_m,w>|^{lambda+n} / (1-conj<z_m,w>)^{lambda+n};
/// the phase is taken as 1 where <Z(w), W> = 0.
cplx extremal_G(const ExtremalConfig& config, std::size_t m_index, const BallPoint& w);

/// G_m wrapped as a bounded function (family extremal-Gm).
BoundedFunction extremal_function(const ExtremalConfig& config, std::size_t m_index);

/// The lower-bound value at z = eps zeta0 for any eps in [0, 1) within the route's bound.
IntegralResult lower_bound_at(const ExtremalConfig& config, double eps, const QuadratureRule& rule, Route route);

IntegralResult lower_bound_value(const ExtremalConfig& config, std::size_t m_index, const QuadratureRule& rule,
                                 Route route);

struct ConvergenceRow {
  double epsilon = 0.0;
  double value = 0.0;
  double error = 0.0;
  double ratio = 0.0;  ///< value / theoretical_norm(params, pairing_value)
};

std::vector<ConvergenceRow> convergence_table(const ExtremalConfig& config, const QuadratureRule& rule,
                                              Route route = Route::transformed);

}  // namespace bergman
