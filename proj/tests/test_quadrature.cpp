#include <doctest.h>

#include <cstdlib>
#include <random>
#include <string>

#include "bergman/geometry.hpp"
#include "bergman/quadrature.hpp"
#include "support.hpp"

using namespace bergman;

namespace {

// int_0^1 u^k (1-u)^a u^b du / B(a+1, b+1)
double beta_moment(int k, double a, double b) {
  double m = 1.0;
  for (int j = 0; j < k; ++j) m *= (b + 1 + j) / (a + b + 2 + j);
  return m;
}

bool agree(const IntegralResult& a, cplx expect, double slack = 0.0) {
  return std::abs(a.value - expect) <= 3.0 * a.error_estimate + slack;
}

bool agree(const IntegralResult& a, const IntegralResult& b) {
  return std::abs(a.value - b.value) <= 3.0 * (a.error_estimate + b.error_estimate);
}

}  // namespace

TEST_SUITE("quadrature") {
  TEST_CASE("Gauss-Jacobi integrates Beta moments exactly") {
    for (double a : {-0.5, 0.0, 1.0, 2.5}) {
      for (double b : {0.0, 1.0, 2.0}) {
        for (int count : {1, 4, 16, 64}) {
          const GaussRule g = gauss_jacobi_unit(count, a, b);
          REQUIRE(g.nodes.size() == static_cast<std::size_t>(count));
          for (int k = 0; k <= 2 * count - 1 && k <= 40; ++k) {
            double q = 0.0;
            for (std::size_t i = 0; i < g.nodes.size(); ++i) q += g.weights[i] * std::pow(g.nodes[i], k);
            CHECK(oracle::rel_diff(q, beta_moment(k, a, b)) < 1e-12);
          }
          for (double x : g.nodes) CHECK((x > 0.0 && x < 1.0));
        }
      }
    }
    CHECK_THROWS_AS(gauss_jacobi_unit(4, -1.0, 0.0), std::domain_error);
  }

  TEST_CASE("integrate_ball examples") {
    for (int d = 1; d <= 2; ++d) {
      const QuadratureRule rule = QuadratureRule::defaults(d);
      const IntegralResult one = integrate_ball([](const BallPoint&) { return cplx(1.0); }, d, rule);
      CHECK(std::abs(one.value - 1.0) < 1e-13);
      // |w|^2 = u with u ~ Beta(d, 1): mean d/(d+1)
      const IntegralResult sq = integrate_ball([](const BallPoint& w) { return cplx(w.norm_squared()); }, d, rule);
      CHECK(std::abs(sq.value - d / (d + 1.0)) < 1e-13);
      const IntegralResult odd = integrate_ball([](const BallPoint& w) { return w[0]; }, d, rule);
      CHECK(std::abs(odd.value) < 1e-13);
    }
    // polar coordinates by hand: 2 int_0^1 r^3 dr
    const IntegralResult disc = integrate_ball([](const BallPoint& w) { return cplx(w.norm_squared()); }, 1,
                                               QuadratureRule::product(8, 8));
    CHECK(disc.value.real() == doctest::Approx(0.5).epsilon(1e-14));
  }

  TEST_CASE("integrate_weighted normalization and moments") {
    for (int d = 1; d <= 2; ++d) {
      for (double sigma : {-0.5, 0.0, 1.0, 2.5}) {
        const KernelParams p = KernelParams::make(d, sigma, 1);
        const IntegralResult r = integrate_weighted([](const BallPoint&) { return cplx(1.0); }, p,
                                                    QuadratureRule::defaults(d));
        CHECK(r.error_estimate >= 0.0);
        CHECK(agree(r, 1.0));
      }
    }
    const IntegralResult half = integrate_weighted([](const BallPoint& w) { return cplx(1.0 - w.norm_squared()); },
                                                   KernelParams::make(1, 0.0, 1), QuadratureRule::defaults(1));
    CHECK(half.value.real() == doctest::Approx(0.5).epsilon(1e-13));
    const IntegralResult mc = integrate_weighted([](const BallPoint&) { return cplx(1.0); },
                                                 KernelParams::make(3, -0.5, 1), QuadratureRule::monte_carlo(50000, 1));
    CHECK(agree(mc, 1.0));
  }

  TEST_CASE("Monte Carlo is seed-deterministic and matches the product rule") {
    const KernelParams p = KernelParams::make(2, 0.5, 1);
    auto f = [](const BallPoint& w) { return std::exp(w[0]) + std::norm(w[1]); };
    const QuadratureRule mc = QuadratureRule::monte_carlo(100000, 42);
    const IntegralResult a = integrate_weighted(f, p, mc);
    const IntegralResult b = integrate_weighted(f, p, mc);
    CHECK(a.value == b.value);
    CHECK(a.error_estimate == b.error_estimate);
    CHECK(integrate_weighted(f, p, QuadratureRule::monte_carlo(100000, 43)).value != a.value);
    CHECK(agree(a, integrate_weighted(f, p, QuadratureRule::defaults(2))));
  }

  TEST_CASE("results do not depend on the worker count") {
    const KernelParams p = KernelParams::make(2, 0.0, 1);
    auto f = [](const BallPoint& w) { return std::exp(w[0] * std::conj(w[1])); };
    const char* saved = std::getenv("BERGMAN_THREADS");
    const std::string restore = saved ? saved : "";
    setenv("BERGMAN_THREADS", "1", 1);
    CHECK(worker_count() == 1);
    const IntegralResult p1 = integrate_weighted(f, p, QuadratureRule::product(16, 8));
    const IntegralResult m1 = integrate_weighted(f, p, QuadratureRule::monte_carlo(20000, 9));
    setenv("BERGMAN_THREADS", "3", 1);
    CHECK(worker_count() == 3);
    const IntegralResult p3 = integrate_weighted(f, p, QuadratureRule::product(16, 8));
    const IntegralResult m3 = integrate_weighted(f, p, QuadratureRule::monte_carlo(20000, 9));
    if (saved) {
      setenv("BERGMAN_THREADS", restore.c_str(), 1);
    } else {
      unsetenv("BERGMAN_THREADS");
    }
    CHECK(p1.value == p3.value);
    CHECK(m1.value == m3.value);
    CHECK(m1.error_estimate == m3.error_estimate);
  }

  TEST_CASE("rule validation and diagnostics") {
    CHECK_THROWS_AS(QuadratureRule::product(8, 8).resolved(3), std::invalid_argument);
    CHECK(QuadratureRule::defaults(3).scheme == Scheme::monte_carlo);
    CHECK(QuadratureRule::defaults(2).evaluation_count(2) == 64u * 32u * 32u * 32u);
    CHECK(QuadratureRule::defaults(1).evaluation_count(1) == 128u * 256u);
    CHECK(parse_scheme("monte-carlo") == Scheme::monte_carlo);
    CHECK_THROWS_AS(parse_scheme("adaptive"), std::invalid_argument);
    try {
      integrate_ball([](const BallPoint& w) { return w[0].real() > 0.5 ? cplx(NAN) : cplx(1.0); }, 1,
                     QuadratureRule::product(8, 8));
      FAIL("non-finite integrand accepted");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find("node") != std::string::npos);
    }
  }

  TEST_CASE("focus rotation leaves smooth integrals unchanged") {
    std::mt19937_64 rng(2);
    for (int d = 1; d <= 2; ++d) {
      const BallPoint focus = oracle::random_point(rng, d, 0.99);
      const VectorIntegrand f = [](const BallPoint& w, std::span<cplx> out) {
        out[0] = std::exp(w[0]) * (1.0 + std::norm(w[w.dim() - 1]));
      };
      const auto plain = integrate_weighted_vector(f, 1, d, 0.3, QuadratureRule::defaults(d)).front();
      const auto focused = integrate_weighted_vector(f, 1, d, 0.3, QuadratureRule::defaults(d), focus).front();
      CHECK(std::abs(plain.value - focused.value) < 1e-12);
    }
  }

  TEST_CASE("j_numeric") {
    for (int d = 1; d <= 2; ++d) {
      for (double t : {0.0, 0.5, 2.0}) {
        const IntegralResult r = j_numeric(-1.0, t, BallPoint(static_cast<std::size_t>(d)), QuadratureRule::defaults(d));
        const double expect = std::tgamma(d + 1.0) * std::tgamma(t + 1) / std::tgamma(d + t + 1);
        CHECK(agree(r, expect, 1e-14));
      }
    }
    const IntegralResult near = j_numeric(-1.0, 0.0, BallPoint{0.99}, QuadratureRule::defaults(1));
    const double sup = j_closed_form(-1.0, 0.0, 1);
    CHECK(near.value.real() <= sup + 3.0 * near.error_estimate);
    CHECK(near.value.real() >= 0.95 * sup);
    CHECK(near.warning.empty());
    CHECK_FALSE(j_numeric(-1.0, 0.0, BallPoint{0.9995}, QuadratureRule::defaults(1)).warning.empty());
  }

  TEST_CASE("J is monotone in |z|, bounded by its sup, and rotation invariant") {
    struct Case { double c, t; int d; };
    for (const Case k : {Case{-1, 0, 1}, Case{-1, 1, 1}, Case{-2, 0.5, 2}}) {
      const QuadratureRule rule = QuadratureRule::defaults(k.d);
      const double sup = j_closed_form(k.c, k.t, k.d);
      IntegralResult prev{};
      bool first = true;
      for (double r : {0.0, 0.2, 0.4, 0.6, 0.8, 0.9}) {
        BallPoint z(static_cast<std::size_t>(k.d));
        z[0] = r;
        const IntegralResult cur = j_numeric(k.c, k.t, z, rule);
        CHECK(cur.value.real() <= sup + 3.0 * cur.error_estimate);
        if (!first) CHECK(cur.value.real() >= prev.value.real() - 3.0 * (cur.error_estimate + prev.error_estimate));
        prev = cur;
        first = false;
        BallPoint rotated(static_cast<std::size_t>(k.d));
        rotated[k.d - 1] = std::polar(r, 0.7);
        CHECK(agree(cur, j_numeric(k.c, k.t, rotated, rule)));
      }
    }
  }

  TEST_CASE("transform identity sides agree") {
    std::mt19937_64 rng(19);
    const std::vector<ScalarIntegrand> phis = {
        [](const BallPoint&) { return cplx(1.0); },
        [](const BallPoint& w) { return cplx(w.norm_squared()); },
        [](const BallPoint& w) { return cplx(w[0].real()); },
    };
    for (auto [d, sigma, n] : {std::tuple{1, 0.0, 1}, std::tuple{2, 0.0, 1}, std::tuple{1, 1.0, 2}}) {
      const KernelParams p = KernelParams::make(d, sigma, n);
      const BallPoint z = oracle::random_point(rng, d, 0.9);
      for (const auto& phi : phis) {
        const auto [lhs, rhs] = transform_identity_sides(phi, p, z, QuadratureRule::defaults(d));
        CHECK(agree(lhs, rhs));
      }
    }
  }
}
