#include "bergman/quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "bergman/geometry.hpp"

namespace bergman {

namespace {

constexpr int kDefaultRadial1 = 128;
constexpr int kDefaultSphere1 = 256;
constexpr int kDefaultRadial2 = 64;
constexpr int kDefaultSphere2 = 32;
constexpr std::uint64_t kBlockSize = 4096;
constexpr double kRoundingFactor = 32.0 * DBL_EPSILON;
constexpr double kFocusSharpness = 4.0;
constexpr double kMaxClustering = 0.995;

std::string describe(const BallPoint& w) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t j = 0; j < w.dim(); ++j) os << (j ? ", " : "") << w[j].real() << (w[j].imag() < 0 ? "" : "+") << w[j].imag() << 'i';
  os << ')';
  return os.str();
}

void check_finite(std::span<const cplx> vals, const BallPoint& w) {
  for (const cplx& v : vals) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw std::runtime_error("non-finite integrand value at node " + describe(w));
    }
  }
}

// Weighted sums for one radial shell or one Monte Carlo block.
struct Partial {
  std::vector<cplx> sum;
  std::vector<double> abs_sum;  // sum of weight*|f|, for the rounding floor
  std::vector<double> sq_sum;   // Monte Carlo: sum of |f|^2
};

// splitmix64 keyed by (seed, sample index); satisfies UniformRandomBitGenerator.
class CounterEngine {
 public:
  using result_type = std::uint64_t;
  CounterEngine(std::uint64_t seed, std::uint64_t index) : state_(mix(seed ^ mix(index + 0x632BE59BD9B4E019ULL))) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  std::uint64_t state_;
};

// Unitary matrix (row-major, d x d) whose first column is the unit vector f.
std::vector<cplx> frame_for(const BallPoint& f) {
  const std::size_t d = f.dim();
  std::vector<BallPoint> basis;
  basis.push_back((1.0 / f.modulus()) * f);
  for (std::size_t k = 0; k < d && basis.size() < d; ++k) {
    BallPoint v = BallPoint::unit(d, k);
    for (const auto& b : basis) v -= inner(v, b) * b;
    const double nv = v.modulus();
    if (nv > 1e-8) basis.push_back((1.0 / nv) * v);
  }
  std::vector<cplx> u(d * d);
  for (std::size_t c = 0; c < d; ++c) {
    for (std::size_t r = 0; r < d; ++r) u[r * d + c] = basis[c][r];
  }
  return u;
}

// Circle nodes e^{i g(t_k)} with trapezoid weights g'(t_k)/count, g(t) = t - beta sin t.
struct CircleRule {
  std::vector<cplx> points;
  std::vector<double> weights;
};

CircleRule circle_rule(int count, double beta) {
  CircleRule c;
  for (int k = 0; k < count; ++k) {
    const double t = 2.0 * std::numbers::pi * k / count;
    c.points.push_back(std::polar(1.0, t - beta * std::sin(t)));
    c.weights.push_back((1.0 - beta * std::cos(t)) / count);
  }
  return c;
}

std::vector<Partial> product_pass(const VectorIntegrand& f, std::size_t m, int d, double sigma, int radial, int sphere,
                                  const std::optional<BallPoint>& focus) {
  const GaussRule rad = gauss_jacobi_unit(radial, sigma, d - 1);
  // Without a focus, or with |focus| <= 3/4, the node set is the plain one. Otherwise
  // nodes are rotated so that e_1 maps to focus/|focus| and the first angle clusters around 0.
  double beta = 0.0;
  std::vector<cplx> frame;
  if (focus) beta = std::clamp(1.0 - kFocusSharpness * (1.0 - focus->modulus()), 0.0, kMaxClustering);
  if (beta > 0.0) frame = frame_for(*focus);
  const CircleRule first = circle_rule(sphere, beta);
  const CircleRule second = circle_rule(sphere, 0.0);
  GaussRule leg;
  if (d == 2) leg = gauss_jacobi_unit(sphere, 0.0, 0.0);

  std::vector<Partial> partials(static_cast<std::size_t>(radial));
  parallel_for(partials.size(), [&](std::size_t i) {
    Partial& p = partials[i];
    p.sum.assign(m, 0.0);
    p.abs_sum.assign(m, 0.0);
    std::vector<cplx> vals(m);
    const double r = std::sqrt(rad.nodes[i]);
    const std::size_t dim = static_cast<std::size_t>(d);
    BallPoint local(dim);
    BallPoint w(dim);
    auto accumulate = [&](double weight) {
      if (frame.empty()) {
        w = local;
      } else {
        for (std::size_t row = 0; row < dim; ++row) {
          cplx s = 0.0;
          for (std::size_t col = 0; col < dim; ++col) s += frame[row * dim + col] * local[col];
          w[row] = s;
        }
      }
      f(w, vals);
      check_finite(vals, w);
      for (std::size_t c = 0; c < m; ++c) {
        p.sum[c] += weight * vals[c];
        p.abs_sum[c] += weight * std::abs(vals[c]);
      }
    };
    if (d == 1) {
      for (std::size_t k = 0; k < first.points.size(); ++k) {
        local[0] = r * first.points[k];
        accumulate(rad.weights[i] * first.weights[k]);
      }
    } else {
      for (std::size_t j = 0; j < leg.nodes.size(); ++j) {
        const double a = r * std::sqrt(leg.nodes[j]);
        const double b = r * std::sqrt(1.0 - leg.nodes[j]);
        const double wij = rad.weights[i] * leg.weights[j];
        for (std::size_t k = 0; k < first.points.size(); ++k) {
          local[0] = a * first.points[k];
          const double wijk = wij * first.weights[k];
          for (std::size_t l = 0; l < second.points.size(); ++l) {
            local[1] = b * second.points[l];
            accumulate(wijk * second.weights[l]);
          }
        }
      }
    }
  });
  return partials;
}

std::vector<IntegralResult> product_rule(const VectorIntegrand& f, std::size_t m, int d, double sigma,
                                         const QuadratureRule& rule, const std::optional<BallPoint>& focus) {
  const auto fine = product_pass(f, m, d, sigma, rule.radial_nodes, rule.sphere_nodes, focus);
  const auto coarse = product_pass(f, m, d, sigma, std::max(1, rule.radial_nodes / 2),
                                   std::max(1, rule.sphere_nodes / 2), focus);
  std::vector<IntegralResult> out(m);
  for (std::size_t c = 0; c < m; ++c) {
    cplx qf = 0.0, qc = 0.0;
    double abs_f = 0.0;
    for (const auto& p : fine) {
      qf += p.sum[c];
      abs_f += p.abs_sum[c];
    }
    for (const auto& p : coarse) qc += p.sum[c];
    out[c].value = qf;
    out[c].error_estimate = std::abs(qf - qc) + kRoundingFactor * abs_f;
  }
  return out;
}

BallPoint sample_weighted(int d, double sigma, std::uint64_t seed, std::uint64_t index) {
  CounterEngine eng(seed, index);
  std::gamma_distribution<double> ga(static_cast<double>(d), 1.0);
  std::gamma_distribution<double> gb(sigma + 1.0, 1.0);
  const double x = ga(eng);
  const double y = gb(eng);
  const double u = x / (x + y);
  std::normal_distribution<double> normal;
  BallPoint w(static_cast<std::size_t>(d));
  double nn = 0.0;
  do {
    nn = 0.0;
    for (int j = 0; j < d; ++j) {
      w[static_cast<std::size_t>(j)] = cplx(normal(eng), normal(eng));
      nn += std::norm(w[static_cast<std::size_t>(j)]);
    }
  } while (nn == 0.0);
  w *= std::sqrt(u / nn);
  return w;
}

std::vector<IntegralResult> monte_carlo(const VectorIntegrand& f, std::size_t m, int d, double sigma,
                                        const QuadratureRule& rule) {
  const std::uint64_t n = rule.samples;
  if (n < 2) throw std::invalid_argument("monte-carlo rule needs at least 2 samples");
  const std::uint64_t blocks = (n + kBlockSize - 1) / kBlockSize;
  std::vector<Partial> partials(static_cast<std::size_t>(blocks));
  parallel_for(partials.size(), [&](std::size_t b) {
    Partial& p = partials[b];
    p.sum.assign(m, 0.0);
    p.sq_sum.assign(m, 0.0);
    std::vector<cplx> vals(m);
    const std::uint64_t begin = b * kBlockSize;
    const std::uint64_t end = std::min(n, begin + kBlockSize);
    for (std::uint64_t i = begin; i < end; ++i) {
      const BallPoint w = sample_weighted(d, sigma, rule.seed, i);
      f(w, vals);
      check_finite(vals, w);
      for (std::size_t c = 0; c < m; ++c) {
        p.sum[c] += vals[c];
        p.sq_sum[c] += std::norm(vals[c]);
      }
    }
  });
  std::vector<IntegralResult> out(m);
  const double nd = static_cast<double>(n);
  for (std::size_t c = 0; c < m; ++c) {
    cplx s = 0.0;
    double sq = 0.0;
    for (const auto& p : partials) {
      s += p.sum[c];
      sq += p.sq_sum[c];
    }
    const cplx mean = s / nd;
    const double var = std::max(0.0, (sq - nd * std::norm(mean)) / (nd - 1.0));
    out[c].value = mean;
    out[c].error_estimate = std::sqrt(var / nd) + kRoundingFactor * std::abs(mean);
  }
  return out;
}

}  // namespace

QuadratureRule QuadratureRule::defaults(int d) {
  if (d <= 2) return product(0, 0).resolved(d);
  return monte_carlo(2'000'000, 0x5EED);
}

QuadratureRule QuadratureRule::resolved(int d) const {
  if (d < 1) throw std::domain_error("quadrature: d >= 1 required");
  QuadratureRule r = *this;
  if (r.scheme == Scheme::product) {
    if (d > 2) throw std::invalid_argument("product rule supports d in {1, 2}; use monte-carlo for d = " + std::to_string(d));
    if (r.radial_nodes == 0) r.radial_nodes = d == 1 ? kDefaultRadial1 : kDefaultRadial2;
    if (r.sphere_nodes == 0) r.sphere_nodes = d == 1 ? kDefaultSphere1 : kDefaultSphere2;
    if (r.radial_nodes < 2 || r.sphere_nodes < 2) throw std::invalid_argument("product rule needs at least 2 nodes per axis");
  } else if (r.samples < 2) {
    throw std::invalid_argument("monte-carlo rule needs at least 2 samples");
  }
  return r;
}

std::uint64_t QuadratureRule::evaluation_count(int d) const {
  const QuadratureRule r = resolved(d);
  if (r.scheme == Scheme::monte_carlo) return r.samples;
  std::uint64_t c = static_cast<std::uint64_t>(r.radial_nodes);
  for (int k = 0; k < (d == 1 ? 1 : 3); ++k) c *= static_cast<std::uint64_t>(r.sphere_nodes);
  return c;
}

std::string to_string(Scheme scheme) { return scheme == Scheme::product ? "product" : "monte-carlo"; }

Scheme parse_scheme(const std::string& name) {
  if (name == "product") return Scheme::product;
  if (name == "monte-carlo" || name == "mc") return Scheme::monte_carlo;
  throw std::invalid_argument("unknown quadrature scheme '" + name + "' (product, monte-carlo)");
}

GaussRule gauss_jacobi_unit(int count, double a, double b) {
  if (count < 1) throw std::invalid_argument("gauss_jacobi_unit: count >= 1 required");
  if (!(a > -1.0) || !(b > -1.0)) throw std::domain_error("gauss_jacobi_unit: exponents must exceed -1");
  // Golub-Welsch on the monic Jacobi recurrence for (1-x)^a (1+x)^b on [-1, 1].
  const auto n = static_cast<Eigen::Index>(count);
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max<Eigen::Index>(n - 1, 1));
  const double ab = a + b;
  diag(0) = (b - a) / (ab + 2.0);
  for (Eigen::Index k = 1; k < n; ++k) {
    const double t = 2.0 * k + ab;
    diag(k) = (b * b - a * a) / (t * (t + 2.0));
  }
  for (Eigen::Index k = 1; k < n; ++k) {
    const double t = 2.0 * k + ab;
    double beta = 0.0;
    if (k == 1) {
      beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      beta = 4.0 * k * (k + a) * (k + b) * (k + ab) / (t * t * (t + 1.0) * (t - 1.0));
    }
    sub(k - 1) = std::sqrt(beta);
  }
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(count));
  rule.weights.resize(static_cast<std::size_t>(count));
  if (n == 1) {
    rule.nodes[0] = 0.5 * (1.0 + diag(0));
    rule.weights[0] = 1.0;
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw std::runtime_error("gauss_jacobi_unit: eigen solver failed");
  double total = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double v0 = solver.eigenvectors()(0, k);
    rule.nodes[static_cast<std::size_t>(k)] = 0.5 * (1.0 + solver.eigenvalues()(k));
    rule.weights[static_cast<std::size_t>(k)] = v0 * v0;
    total += v0 * v0;
  }
  for (double& w : rule.weights) w /= total;
  return rule;
}

unsigned worker_count() {
  if (const char* env = std::getenv("BERGMAN_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    threads.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += workers) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<IntegralResult> integrate_weighted_vector(const VectorIntegrand& f, std::size_t components, int d,
                                                      double sigma, const QuadratureRule& rule,
                                                      const std::optional<BallPoint>& focus) {
  if (!(sigma > -1.0)) throw std::domain_error("integrate_weighted: sigma > -1 required");
  if (focus && focus->dim() != static_cast<std::size_t>(d)) throw std::invalid_argument("focus dimension must equal d");
  const QuadratureRule r = rule.resolved(d);
  if (r.scheme == Scheme::product) return product_rule(f, components, d, sigma, r, focus);
  return monte_carlo(f, components, d, sigma, r);
}

IntegralResult integrate_weighted(const ScalarIntegrand& f, const KernelParams& params, const QuadratureRule& rule) {
  const VectorIntegrand g = [&f](const BallPoint& w, std::span<cplx> out) { out[0] = f(w); };
  return integrate_weighted_vector(g, 1, params.d, params.sigma, rule).front();
}

IntegralResult integrate_ball(const ScalarIntegrand& f, int d, const QuadratureRule& rule) {
  const VectorIntegrand g = [&f](const BallPoint& w, std::span<cplx> out) { out[0] = f(w); };
  return integrate_weighted_vector(g, 1, d, 0.0, rule).front();
}

IntegralResult j_numeric(double c, double t, const BallPoint& z, const QuadratureRule& rule) {
  require_interior(z, "j_numeric");
  if (!(t > -1.0)) throw std::domain_error("j_numeric: t > -1 required");
  const int d = static_cast<int>(z.dim());
  const double exponent = d + 1 + t + c;
  const VectorIntegrand g = [&](const BallPoint& w, std::span<cplx> out) {
    out[0] = std::pow(std::abs(1.0 - inner(z, w)), -exponent);
  };
  IntegralResult r = integrate_weighted_vector(g, 1, d, t, rule, z).front();
  // int (1-|w|^2)^t F dv = (1/c_t) int F dv_t
  const double ct = c_sigma(d, t);
  r.value /= ct;
  r.error_estimate /= ct;
  if (z.modulus() > 0.999) {
    r.warning = "|z| > 0.999: the kernel peak is narrower than the rule resolves; value unreliable";
  }
  return r;
}

std::pair<IntegralResult, IntegralResult> transform_identity_sides(const ScalarIntegrand& phi_fn,
                                                                   const KernelParams& params, const BallPoint& z,
                                                                   const QuadratureRule& rule) {
  require_interior(z, "transform_identity_sides");
  if (z.dim() != static_cast<std::size_t>(params.d)) throw std::invalid_argument("transform_identity_sides: dimension mismatch");
  const double lead = std::pow(1.0 - z.norm_squared(), params.n);
  const double up = params.lambda + params.n;
  const double down = params.lambda - params.n;
  const VectorIntegrand g = [&](const BallPoint& w, std::span<cplx> out) {
    const double base = std::abs(1.0 - inner(z, w));
    out[0] = lead * phi_fn(w) * std::pow(base, -up);
    out[1] = phi_fn(mobius(z, w)) * std::pow(base, -down);
  };
  auto r = integrate_weighted_vector(g, 2, params.d, params.sigma, rule, z);
  return {r[0], r[1]};
}

}  // namespace bergman
