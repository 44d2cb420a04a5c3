#include "bergman/extremal.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "bergman/constants.hpp"
#include "bergman/geometry.hpp"

namespace bergman {

std::string to_string(Route route) { return route == Route::direct ? "direct" : "transformed"; }

std::vector<double> default_epsilons() { return {0.5, 0.8, 0.9, 0.95, 0.99}; }

BallPoint select_zeta0(const NormSpec& norm, int d, int n) {
  if (d < 1) throw std::domain_error("select_zeta0: d >= 1 required");
  if (norm.is_p_norm()) {
    if (norm.p() >= 2.0 || d == 1) return BallPoint::unit(static_cast<std::size_t>(d), 0);
    return BallPoint::balanced(static_cast<std::size_t>(d));
  }
  return c_optimize(norm, d, n).maximizer;
}

MonomialVector dual_witness(const BallPoint& zeta0, const NormSpec& norm, int n) {
  if (!norm.dual_available()) throw std::invalid_argument("norm '" + norm.name() + "' has no dual witness");
  return norm.witness(monomial_vector(zeta0, n));
}

ExtremalConfig ExtremalConfig::make(const KernelParams& params, const NormSpec& norm, std::vector<double> epsilons,
                                    std::optional<BallPoint> zeta0) {
  if (!norm.dual_available()) {
    throw std::invalid_argument("norm '" + norm.name() + "' has no dual witness; the extremal construction needs one");
  }
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0 && epsilons[i] < 1.0)) throw std::domain_error("ε < 1 required; the limit is analytic (each ε must lie in (0,1))");
    if (i > 0 && !(epsilons[i] > epsilons[i - 1])) throw std::invalid_argument("ε schedule must be strictly increasing");
  }
  ExtremalConfig c;
  c.params = params;
  c.norm = norm;
  c.epsilons = std::move(epsilons);
  c.zeta0 = zeta0 ? *zeta0 : select_zeta0(norm, params.d, params.n);
  if (c.zeta0.dim() != static_cast<std::size_t>(params.d)) throw std::invalid_argument("zeta0 dimension must equal d");
  const double mod = c.zeta0.modulus();
  if (std::abs(mod - 1.0) > 1e-10) throw std::domain_error("zeta0 must lie on the unit sphere");
  c.zeta0 *= 1.0 / mod;

  const MonomialVector z = monomial_vector(c.zeta0, params.n);
  c.dual_witness = norm.witness(z);
  c.pairing_value = norm(z);
  if (norm.is_p_norm()) {
    const double dn = norm.dual(c.dual_witness.components());
    if (std::abs(dn - 1.0) > 1e-12) throw std::logic_error("dual witness does not have unit dual norm");
  }
  if (std::abs(std::abs(pairing(z, c.dual_witness)) - c.pairing_value) > 1e-10 * std::max(1.0, c.pairing_value)) {
    throw std::logic_error("dual witness does not attain |<Z(zeta0), W>| = |Z(zeta0)|");
  }
  return c;
}

namespace {

double epsilon_at(const ExtremalConfig& config, std::size_t m) {
  if (m >= config.epsilons.size()) throw std::out_of_range("extremal: m index outside the ε schedule");
  return config.epsilons[m];
}

cplx extremal_value(const MonomialBasis& basis, const ExtremalConfig& config, const BallPoint& zm,
                    const BallPoint& w) {
  const cplx pair = basis.pair(w, config.dual_witness.components());
  const double a = std::abs(pair);
  const cplx phase = a > 0.0 ? pair / a : cplx(1.0);
  // |b|^k / conj(b)^k = exp(i k arg b) for b = 1 - <z_m, w>, Re b > 0
  const double k = config.params.lambda + config.params.n;
  return phase * std::polar(1.0, k * std::arg(1.0 - inner(zm, w)));
}

}  // namespace

cplx extremal_G(const ExtremalConfig& config, std::size_t m_index, const BallPoint& w) {
  require_interior(w, "extremal_G");
  const BallPoint zm = epsilon_at(config, m_index) * config.zeta0;
  const MonomialBasis basis(config.params.d, config.params.n);
  return extremal_value(basis, config, zm, w);
}

BoundedFunction extremal_function(const ExtremalConfig& config, std::size_t m_index) {
  const double eps = epsilon_at(config, m_index);
  const BallPoint zm = eps * config.zeta0;
  auto basis = std::make_shared<MonomialBasis>(config.params.d, config.params.n);
  return {BoundedFunction::Family::extremal, "G_m eps=" + std::to_string(eps),
          [config, zm, basis](const BallPoint& w) { return extremal_value(*basis, config, zm, w); }};
}

IntegralResult lower_bound_at(const ExtremalConfig& config, double eps, const QuadratureRule& rule, Route route) {
  const double bound = route == Route::direct ? kDirectRouteMaxEps : kTransformedRouteMaxEps;
  if (!(eps >= 0.0 && eps <= bound)) {
    throw std::domain_error("ε = " + std::to_string(eps) + " outside the " + to_string(route) +
                            " route's safety bound [0, " + std::to_string(bound) + "]");
  }
  const KernelParams& p = config.params;
  const BallPoint zm = eps * config.zeta0;
  const MonomialBasis basis(p.d, p.n);
  const auto witness = config.dual_witness.components();
  VectorIntegrand f;
  if (route == Route::direct) {
    const double lead = std::pow(1.0 - eps * eps, p.n);
    f = [&, lead](const BallPoint& w, std::span<cplx> out) {
      out[0] = lead * std::abs(basis.pair(w, witness)) * std::pow(std::abs(1.0 - inner(zm, w)), -(p.lambda + p.n));
    };
  } else {
    f = [&](const BallPoint& w, std::span<cplx> out) {
      out[0] = std::abs(basis.pair(mobius(zm, w), witness)) * std::pow(std::abs(1.0 - inner(zm, w)), -(p.lambda - p.n));
    };
  }
  IntegralResult r = integrate_weighted_vector(f, 1, p.d, p.sigma, rule, zm).front();
  const double factor = derivative_factor(p);
  r.value *= factor;
  r.error_estimate *= factor;
  return r;
}

IntegralResult lower_bound_value(const ExtremalConfig& config, std::size_t m_index, const QuadratureRule& rule,
                                 Route route) {
  return lower_bound_at(config, epsilon_at(config, m_index), rule, route);
}

std::vector<ConvergenceRow> convergence_table(const ExtremalConfig& config, const QuadratureRule& rule, Route route) {
  const double target = theoretical_norm(config.params, config.pairing_value);
  std::vector<ConvergenceRow> rows;
  rows.reserve(config.epsilons.size());
  for (std::size_t m = 0; m < config.epsilons.size(); ++m) {
    const IntegralResult r = lower_bound_value(config, m, rule, route);
    rows.push_back({config.epsilons[m], r.value.real(), r.error_estimate, r.value.real() / target});
  }
  return rows;
}

}  // namespace bergman
