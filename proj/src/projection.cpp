#include "bergman/projection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "bergman/geometry.hpp"

namespace bergman {

// ---------------------------------------------------------------------------
// Norms

double p_norm_value(std::span<const cplx> z, double p) {
  if (!(p >= 1.0)) throw std::domain_error("p-norm requires p >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const cplx& c : z) m = std::max(m, std::abs(c));
    return m;
  }
  if (p == 1.0) {
    double s = 0.0;
    for (const cplx& c : z) s += std::abs(c);
    return s;
  }
  // scale by the max modulus so |z_k|^p cannot overflow or underflow
  double m = 0.0;
  for (const cplx& c : z) m = std::max(m, std::abs(c));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (const cplx& c : z) s += std::pow(std::abs(c) / m, p);
  return m * std::pow(s, 1.0 / p);
}

NormSpec NormSpec::p_norm(double p) {
  if (!(p >= 1.0)) throw std::domain_error("p-norm requires p >= 1 (got p = " + std::to_string(p) + ")");
  NormSpec n;
  n.p_ = p;
  n.name_ = std::isinf(p) ? std::string("p=inf") : "p=" + [&] {
    std::ostringstream os;
    os << p;
    return os.str();
  }();
  return n;
}

NormSpec NormSpec::custom(std::string name, Evaluator evaluator, WitnessBuilder witness) {
  if (!evaluator) throw std::invalid_argument("custom norm needs an evaluator");
  NormSpec n;
  n.custom_ = true;
  n.p_ = 0.0;
  n.name_ = std::move(name);
  n.eval_ = std::move(evaluator);
  n.witness_ = std::move(witness);
  return n;
}

double NormSpec::dual_exponent() const {
  if (custom_) throw std::logic_error("dual exponent is defined for p-norms only");
  if (p_ == 1.0) return kInfinity;
  if (std::isinf(p_)) return 1.0;
  return p_ / (p_ - 1.0);
}

double NormSpec::operator()(std::span<const cplx> z) const {
  return custom_ ? eval_(z) : p_norm_value(z, p_);
}

double NormSpec::dual(std::span<const cplx> z) const { return p_norm_value(z, dual_exponent()); }

MonomialVector NormSpec::witness(const MonomialVector& z) const {
  if (custom_) {
    if (!witness_) throw std::logic_error("norm '" + name_ + "' has no dual witness; the lower-bound path is unavailable");
    return witness_(z);
  }
  const auto unit_phase = [](cplx c) { return std::abs(c) > 0.0 ? c / std::abs(c) : cplx(1.0); };
  const std::size_t m = z.size();
  std::vector<cplx> w(m, 0.0);
  const double zn = p_norm_value(z.components(), p_);
  if (zn == 0.0) {
    // every unit dual vector is an equality witness for Z = 0
    w[0] = 1.0;
    return MonomialVector(std::move(w));
  }
  if (std::isinf(p_)) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < m; ++i) {
      if (std::abs(z[i]) > std::abs(z[k])) k = i;
    }
    w[k] = unit_phase(z[k]);
  } else if (p_ == 1.0) {
    for (std::size_t i = 0; i < m; ++i) w[i] = unit_phase(z[i]);
  } else {
    for (std::size_t i = 0; i < m; ++i) w[i] = unit_phase(z[i]) * std::pow(std::abs(z[i]) / zn, p_ - 1.0);
  }
  return MonomialVector(std::move(w));
}

double vector_norm(const MonomialVector& z, const NormSpec& norm) { return norm(z); }

// ---------------------------------------------------------------------------
// Bounded test functions

namespace {

struct Term {
  cplx coeff;
  std::vector<int> holo;   // exponents of w
  std::vector<int> anti;   // exponents of conj(w)
};

cplx eval_term(const Term& t, const BallPoint& w) {
  cplx v = t.coeff;
  for (std::size_t j = 0; j < w.dim(); ++j) {
    for (int k = 0; k < t.holo[j]; ++k) v *= w[j];
    for (int k = 0; k < t.anti[j]; ++k) v *= std::conj(w[j]);
  }
  return v;
}

cplx eval_poly(const std::vector<Term>& terms, const BallPoint& w) {
  cplx s = 0.0;
  for (const auto& t : terms) s += eval_term(t, w);
  return s;
}

// Up to `count` random terms w^a conj(w)^b with |a| + |b| <= 2.
std::vector<Term> random_terms(int d, std::mt19937_64& rng, int count) {
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> coord(0, d - 1);
  std::uniform_int_distribution<int> degree(0, 2);
  std::bernoulli_distribution coin;
  std::vector<Term> terms;
  for (int k = 0; k < count; ++k) {
    Term t{cplx(normal(rng), normal(rng)), std::vector<int>(static_cast<std::size_t>(d), 0),
           std::vector<int>(static_cast<std::size_t>(d), 0)};
    const int deg = degree(rng);
    for (int e = 0; e < deg; ++e) {
      auto& target = coin(rng) ? t.holo : t.anti;
      ++target[static_cast<std::size_t>(coord(rng))];
    }
    terms.push_back(std::move(t));
  }
  return terms;
}

BallPoint uniform_in_ball(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  BallPoint w(static_cast<std::size_t>(d));
  double nn = 0.0;
  while (nn == 0.0) {
    for (int j = 0; j < d; ++j) w[static_cast<std::size_t>(j)] = cplx(normal(rng), normal(rng));
    nn = w.norm_squared();
  }
  const double r = std::pow(uni(rng), 1.0 / (2.0 * d));
  w *= r / std::sqrt(nn);
  return w;
}

}  // namespace

std::string to_string(BoundedFunction::Family family) {
  switch (family) {
    case BoundedFunction::Family::constant: return "constant";
    case BoundedFunction::Family::phase_field: return "phase-field";
    case BoundedFunction::Family::clipped_polynomial: return "clipped-polynomial";
    case BoundedFunction::Family::extremal: return "extremal-Gm";
  }
  return "unknown";
}

BoundedFunction BoundedFunction::constant(cplx c) {
  if (std::abs(c) > 1.0) throw std::domain_error("constant bounded function needs |c| <= 1");
  std::ostringstream os;
  os << "constant " << c;
  return {Family::constant, os.str(), [c](const BallPoint&) { return c; }};
}

BoundedFunction BoundedFunction::phase_field(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto terms = random_terms(d, rng, 4);
  return {Family::phase_field, "phase-field seed=" + std::to_string(seed),
          [terms = std::move(terms)](const BallPoint& w) { return std::polar(1.0, eval_poly(terms, w).real()); }};
}

BoundedFunction BoundedFunction::clipped_polynomial(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto terms = random_terms(d, rng, 5);
  double sup = 0.0;
  for (int k = 0; k < 10000; ++k) sup = std::max(sup, std::abs(eval_poly(terms, uniform_in_ball(d, rng))));
  const double scale = sup > 0.0 ? 1.0 / (1.01 * sup) : 1.0;
  return {Family::clipped_polynomial, "clipped-polynomial seed=" + std::to_string(seed),
          [terms = std::move(terms), scale](const BallPoint& w) {
            const cplx v = scale * eval_poly(terms, w);
            const double a = std::abs(v);
            return a > 1.0 ? v / a : v;
          }};
}

BoundedFunction BoundedFunction::random(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0xB0B0B0B0ULL);
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0: {
      std::uniform_real_distribution<double> uni(0.0, 1.0);
      return constant(std::polar(uni(rng), 2.0 * std::numbers::pi * uni(rng)));
    }
    case 1: return phase_field(d, rng());
    default: return clipped_polynomial(d, rng());
  }
}

// ---------------------------------------------------------------------------
// Kernel and projection

namespace {

cplx principal_power(cplx base, double exponent) {
  // for interior z, w: Re(1 - <z,w>) >= 1 - |z||w| > 0
  if (!(base.real() > 0.0)) throw std::logic_error("kernel base left the right half-plane");
  return std::exp(exponent * std::log(base));
}

void require_dims(const KernelParams& params, const BallPoint& z, const BallPoint& w) {
  if (z.dim() != static_cast<std::size_t>(params.d) || w.dim() != static_cast<std::size_t>(params.d)) {
    throw std::invalid_argument("point dimension does not match d");
  }
}

}  // namespace

cplx kernel(const KernelParams& params, const BallPoint& z, const BallPoint& w) {
  require_dims(params, z, w);
  require_interior(z, "kernel");
  require_interior(w, "kernel");
  return std::pow(1.0 - w.norm_squared(), params.sigma) * principal_power(1.0 - inner(z, w), -params.lambda);
}

cplx kernel_derivative(const MultiIndex& alpha, const KernelParams& params, const BallPoint& z, const BallPoint& w) {
  require_dims(params, z, w);
  require_interior(z, "kernel_derivative");
  require_interior(w, "kernel_derivative");
  if (alpha.dim() != w.dim() || alpha.order() != params.n) throw std::invalid_argument("kernel_derivative: alpha must have d entries and order n");
  cplx mono = 1.0;
  for (std::size_t j = 0; j < w.dim(); ++j) {
    for (int k = 0; k < alpha[j]; ++k) mono *= std::conj(w[j]);
  }
  return derivative_factor(params) * std::pow(1.0 - w.norm_squared(), params.sigma) *
         principal_power(1.0 - inner(z, w), -(params.lambda + params.n)) * mono;
}

namespace {

void require_resolvable(const BallPoint& z, const char* what) {
  require_interior(z, what);
  if (z.modulus() >= kPeakedKernelMaxModulus) {
    throw std::domain_error(std::string(what) + ": |z| >= 0.999 is beyond the quadrature's resolution");
  }
}

}  // namespace

IntegralResult apply_T(const BoundedFunction& G, const KernelParams& params, const BallPoint& z,
                       const QuadratureRule& rule) {
  require_resolvable(z, "apply_T");
  if (z.dim() != static_cast<std::size_t>(params.d)) throw std::invalid_argument("apply_T: dimension mismatch");
  // c_sigma (1-|w|^2)^sigma dv is folded into dv_sigma
  const VectorIntegrand f = [&](const BallPoint& w, std::span<cplx> out) {
    out[0] = principal_power(1.0 - inner(z, w), -params.lambda) * G(w);
  };
  return integrate_weighted_vector(f, 1, params.d, params.sigma, rule, z).front();
}

TupleResult derivative_tuple(const BoundedFunction& G, const KernelParams& params, const BallPoint& z,
                             const QuadratureRule& rule) {
  require_resolvable(z, "derivative_tuple");
  if (z.dim() != static_cast<std::size_t>(params.d)) throw std::invalid_argument("derivative_tuple: dimension mismatch");
  const MonomialBasis basis(params.d, params.n);
  const double factor = derivative_factor(params);
  const double exponent = -(params.lambda + params.n);
  const VectorIntegrand f = [&](const BallPoint& w, std::span<cplx> out) {
    basis.evaluate(w.conj(), out);
    const cplx common = factor * principal_power(1.0 - inner(z, w), exponent) * G(w);
    for (cplx& o : out) o *= common;
  };
  const auto parts = integrate_weighted_vector(f, basis.size(), params.d, params.sigma, rule, z);
  TupleResult r;
  std::vector<cplx> v(parts.size());
  r.errors.resize(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    v[i] = parts[i].value;
    r.errors[i] = parts[i].error_estimate;
  }
  r.value = MonomialVector(std::move(v));
  return r;
}

BlochEstimate bloch_seminorm_estimate(const BoundedFunction& G, const KernelParams& params, const NormSpec& norm,
                                      const std::vector<BallPoint>& probes, const QuadratureRule& rule) {
  if (probes.empty()) throw std::invalid_argument("bloch_seminorm_estimate: no probe points");
  BlochEstimate est;
  est.value = -1.0;
  for (const BallPoint& z : probes) {
    require_interior(z, "bloch_seminorm_estimate");
    const TupleResult t = derivative_tuple(G, params, z, rule);
    const double scale = std::pow(1.0 - z.norm_squared(), params.n);
    std::vector<cplx> err(t.errors.begin(), t.errors.end());
    const double value = scale * norm(t.value);
    const double error = scale * norm(std::span<const cplx>(err));
    est.per_probe.emplace_back(value, error);
    if (value > est.value) {
      est.value = value;
      est.error_estimate = error;
      est.argmax = z;
    }
  }
  return est;
}

std::vector<BallPoint> default_probes(int d, std::uint64_t seed, int directions, std::vector<double> radii) {
  if (radii.empty()) radii = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<BallPoint> probes;
  bool origin_added = false;
  for (int k = 0; k < directions; ++k) {
    BallPoint u(static_cast<std::size_t>(d));
    double nn = 0.0;
    while (nn == 0.0) {
      for (int j = 0; j < d; ++j) u[static_cast<std::size_t>(j)] = cplx(normal(rng), normal(rng));
      nn = u.norm_squared();
    }
    u *= 1.0 / std::sqrt(nn);
    for (double r : radii) {
      if (r == 0.0) {
        if (!origin_added) probes.emplace_back(static_cast<std::size_t>(d));
        origin_added = true;
        continue;
      }
      probes.push_back(r * u);
    }
  }
  return probes;
}

}  // namespace bergman
