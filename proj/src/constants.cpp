#include "bergman/constants.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "bergman/multiindex.hpp"

namespace bergman {

Interval c_exact(const NormSpec& norm, int d, int n) {
  if (!norm.is_p_norm()) throw std::invalid_argument("c_exact: closed forms exist only for p-norms; use c_optimize");
  const double p = norm.p();
  const double dt = static_cast<double>(d_tilde(d, n));
  if (p >= 2.0) return {1.0, 1.0};
  if (n == 1) {
    const double v = std::pow(static_cast<double>(d), 1.0 / p - 0.5);
    return {v, v};
  }
  return {std::pow(dt, 1.0 / p) * std::pow(static_cast<double>(d), -0.5 * n), std::pow(dt, 1.0 / p - 0.5)};
}

BallPoint phase_gauge(const BallPoint& zeta) {
  for (std::size_t j = 0; j < zeta.dim(); ++j) {
    const double a = std::abs(zeta[j]);
    if (a > 1e-12) {
      BallPoint r = std::conj(zeta[j]) / a * zeta;
      r[j] = a;
      return r;
    }
  }
  return zeta;
}

namespace {

constexpr int kMaxIterations = 20000;
constexpr double kStopImprovement = 1e-12;
constexpr double kGradientStep = 1e-6;

class SphereObjective {
 public:
  SphereObjective(const NormSpec& norm, int d, int n)
      : norm_(norm), basis_(d, n), d_(static_cast<std::size_t>(d)), buf_(basis_.size()) {}

  std::size_t real_dim() const { return 2 * d_; }

  BallPoint point(const std::vector<double>& x) const {
    BallPoint z(d_);
    for (std::size_t j = 0; j < d_; ++j) z[j] = cplx(x[2 * j], x[2 * j + 1]);
    return z;
  }

  double operator()(const std::vector<double>& x) {
    basis_.evaluate(point(x), buf_);
    return norm_(std::span<const cplx>(buf_));
  }

 private:
  const NormSpec& norm_;
  MonomialBasis basis_;
  std::size_t d_;
  std::vector<cplx> buf_;
};

void normalize(std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  s = std::sqrt(s);
  for (double& v : x) v /= s;
}

struct Ascent {
  std::vector<double> x;
  double value = 0.0;
  bool converged = false;
};

Ascent ascend(SphereObjective& f, std::vector<double> x) {
  normalize(x);
  double fx = f(x);
  double step = 0.1;
  const std::size_t m = x.size();
  std::vector<double> grad(m), trial(m);
  for (int it = 0; it < kMaxIterations; ++it) {
    // central differences, then drop the radial component
    for (std::size_t k = 0; k < m; ++k) {
      const double saved = x[k];
      x[k] = saved + kGradientStep;
      const double up = f(x);
      x[k] = saved - kGradientStep;
      const double down = f(x);
      x[k] = saved;
      grad[k] = (up - down) / (2.0 * kGradientStep);
    }
    double radial = 0.0;
    for (std::size_t k = 0; k < m; ++k) radial += grad[k] * x[k];
    double gnorm = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      grad[k] -= radial * x[k];
      gnorm += grad[k] * grad[k];
    }
    if (gnorm < 1e-28) return {x, fx, true};

    bool accepted = false;
    while (step > 1e-16) {
      for (std::size_t k = 0; k < m; ++k) trial[k] = x[k] + step * grad[k];
      normalize(trial);
      const double ft = f(trial);
      if (ft > fx) {
        const double gain = ft - fx;
        x = trial;
        fx = ft;
        step = std::min(step * 2.0, 10.0);
        accepted = true;
        if (gain < kStopImprovement) return {x, fx, true};
        break;
      }
      step *= 0.5;
    }
    if (!accepted) return {x, fx, true};  // no ascent direction resolvable in double precision
  }
  return {x, fx, false};
}

}  // namespace

SphereOptResult c_optimize(const NormSpec& norm, int d, int n, int restarts, std::uint64_t seed) {
  if (restarts < 1) throw std::invalid_argument("c_optimize: restarts >= 1 required");
  SphereObjective f(norm, d, n);
  SphereOptResult best;
  best.value = -1.0;
  best.restarts = restarts;
  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(r + 1));
    std::normal_distribution<double> normal;
    std::vector<double> x0(f.real_dim());
    for (double& v : x0) v = normal(rng);
    const Ascent a = ascend(f, std::move(x0));
    if (a.value > best.value) {
      best.value = a.value;
      best.maximizer = f.point(a.x);
      best.converged = a.converged;
    }
  }
  best.maximizer = phase_gauge(best.maximizer);
  best.value = norm(monomial_vector(best.maximizer, n));
  return best;
}

double remark_bound_check(const NormSpec& norm, int d, int n, double C, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("remark_bound_check: samples >= 1 required");
  const MonomialBasis basis(d, n);
  std::vector<cplx> buf(basis.size());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double worst = -kInfinity;
  for (int k = 0; k < samples; ++k) {
    BallPoint w(static_cast<std::size_t>(d));
    double nn = 0.0;
    while (nn == 0.0) {
      for (int j = 0; j < d; ++j) w[static_cast<std::size_t>(j)] = cplx(normal(rng), normal(rng));
      nn = w.norm_squared();
    }
    // radius uniform in [0, 1): the bound is tightest near the sphere
    w *= uni(rng) / std::sqrt(nn);
    basis.evaluate(w, buf);
    worst = std::max(worst, norm(std::span<const cplx>(buf)) - C);
  }
  return worst;
}

}  // namespace bergman
