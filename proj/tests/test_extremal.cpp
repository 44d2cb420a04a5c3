#include <doctest.h>

#include <random>
#include <string>

#include "bergman/constants.hpp"
#include "bergman/extremal.hpp"
#include "bergman/geometry.hpp"
#include "support.hpp"

using namespace bergman;

namespace {

ExtremalConfig disc_config(std::vector<double> eps) {
  return ExtremalConfig::make(KernelParams::make(1, 0.0, 1), NormSpec::p_norm(kInfinity), std::move(eps));
}

}  // namespace

TEST_SUITE("extremal") {
  TEST_CASE("select_zeta0") {
    for (int d = 1; d <= 4; ++d) {
      for (int n = 1; n <= 3; ++n) {
        CHECK((select_zeta0(NormSpec::p_norm(2.0), d, n) - BallPoint::unit(d, 0)).modulus() == 0.0);
        CHECK((select_zeta0(NormSpec::p_norm(kInfinity), d, n) - BallPoint::unit(d, 0)).modulus() == 0.0);
      }
    }
    const BallPoint b = select_zeta0(NormSpec::p_norm(1.0), 2, 1);
    CHECK(std::abs(b[0] - std::sqrt(0.5)) < 1e-15);
    CHECK(std::abs(b[1] - std::sqrt(0.5)) < 1e-15);
    CHECK(NormSpec::p_norm(1.0)(monomial_vector(b, 1)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(select_zeta0(NormSpec::p_norm(1.5), 1, 2)[0] == cplx(1.0));
  }

  TEST_CASE("dual witness") {
    const BallPoint e1 = BallPoint::unit(3, 0);
    const MonomialVector w2 = dual_witness(e1, NormSpec::p_norm(2.0), 2);
    const MonomialVector z2 = monomial_vector(e1, 2);
    for (std::size_t k = 0; k < z2.size(); ++k) CHECK(std::abs(w2[k] - z2[k]) < 1e-15);
    const MonomialVector winf = dual_witness(e1, NormSpec::p_norm(kInfinity), 2);
    CHECK(winf[0] == cplx(1.0));
    for (std::size_t k = 1; k < winf.size(); ++k) CHECK(winf[k] == cplx(0.0));
    const BallPoint b = BallPoint::balanced(2);
    const MonomialVector w1 = dual_witness(b, NormSpec::p_norm(1.0), 1);
    CHECK(std::abs(w1[0] - 1.0) < 1e-15);
    CHECK(std::abs(w1[1] - 1.0) < 1e-15);
    CHECK(std::abs(pairing(monomial_vector(b, 1), w1)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    const NormSpec nodual = NormSpec::custom("sum", [](std::span<const cplx> z) { return p_norm_value(z, 1.0); });
    CHECK_THROWS_AS(dual_witness(b, nodual, 1), std::invalid_argument);
  }

  TEST_CASE("config invariants and validation") {
    for (int d = 1; d <= 3; ++d) {
      for (int n = 1; n <= 3; ++n) {
        for (double p : {1.0, 1.5, 2.0, 3.0, kInfinity}) {
          const NormSpec norm = NormSpec::p_norm(p);
          const ExtremalConfig c = ExtremalConfig::make(KernelParams::make(d, 0.5, n), norm, default_epsilons());
          CHECK(std::abs(c.zeta0.modulus() - 1.0) < 1e-14);
          CHECK(std::abs(norm.dual(c.dual_witness.components()) - 1.0) < 1e-12);
          CHECK(std::abs(std::abs(pairing(monomial_vector(c.zeta0, n), c.dual_witness)) - c.pairing_value) < 1e-10);
          if (p >= 2.0 || n == 1) CHECK(c.pairing_value == doctest::Approx(c_exact(norm, d, n).lower).epsilon(1e-12));
        }
      }
    }
    const KernelParams p = KernelParams::make(1, 0.0, 1);
    try {
      ExtremalConfig::make(p, NormSpec::p_norm(2.0), {0.5, 1.0});
      FAIL("eps = 1 accepted");
    } catch (const std::domain_error& e) {
      CHECK(std::string(e.what()).find("ε < 1 required; the limit is analytic") != std::string::npos);
    }
    CHECK_THROWS_AS(ExtremalConfig::make(p, NormSpec::p_norm(2.0), {0.8, 0.5}), std::invalid_argument);
    const NormSpec nodual = NormSpec::custom("sum", [](std::span<const cplx> z) { return p_norm_value(z, 1.0); });
    CHECK_THROWS_AS(ExtremalConfig::make(p, nodual, {0.5}), std::invalid_argument);
    CHECK(default_epsilons() == std::vector<double>{0.5, 0.8, 0.9, 0.95, 0.99});
  }

  TEST_CASE("G_m is unimodular") {
    std::mt19937_64 rng(33);
    int count = 0;
    for (int d = 1; d <= 3; ++d) {
      for (int n = 1; n <= 3; ++n) {
        const ExtremalConfig c = ExtremalConfig::make(KernelParams::make(d, 0.0, n), NormSpec::p_norm(2.0), {0.5, 0.99});
        const BoundedFunction g = extremal_function(c, 1);
        CHECK(g.family() == BoundedFunction::Family::extremal);
        for (int k = 0; k < 11112; ++k, ++count) {
          const BallPoint w = oracle::random_point(rng, d, 1.0);
          CHECK(std::abs(std::abs(g(w)) - 1.0) < 1e-14);
        }
        CHECK(std::abs(extremal_G(c, 0, BallPoint(static_cast<std::size_t>(d))) - 1.0) < 1e-15);
      }
    }
    CHECK(count >= 100000);
  }

  TEST_CASE("G_m in one variable") {
    const ExtremalConfig c = disc_config({0.7});
    std::mt19937_64 rng(35);
    for (int k = 0; k < 100; ++k) {
      const cplx w = oracle::random_point(rng, 1, 1.0)[0];
      const cplx b = 1.0 - 0.7 * std::conj(w);  // 1 - <z_m, w>
      const cplx expect = (w / std::abs(w)) * std::pow(std::abs(b), 3) / std::pow(std::conj(b), 3);
      CHECK(std::abs(extremal_G(c, 0, BallPoint{w}) - expect) < 1e-13);
    }
  }

  TEST_CASE("eps = 0 fixtures") {
    // d=1, n=1, p=inf: 2 int |w| dv = 2 * 2/3
    const IntegralResult a = lower_bound_at(disc_config({0.5}), 0.0, QuadratureRule::defaults(1), Route::transformed);
    CHECK(std::abs(a.value.real() - 4.0 / 3.0) <= 3.0 * a.error_estimate + 1e-12);
    CHECK(std::abs(a.value.real() - 4.0 / 3.0) < 1e-6);
    // d=2, n=1, p=2: 3 E|w_1| = 3 E[r] E[|xi_1|] = 3 (4/5)(2/3)
    const ExtremalConfig c2 = ExtremalConfig::make(KernelParams::make(2, 0.0, 1), NormSpec::p_norm(2.0), {0.5});
    const IntegralResult b = lower_bound_at(c2, 0.0, QuadratureRule::defaults(2), Route::transformed);
    CHECK(std::abs(b.value.real() - 1.6) <= 3.0 * b.error_estimate + 1e-6);
    const IntegralResult bd = lower_bound_at(c2, 0.0, QuadratureRule::defaults(2), Route::direct);
    CHECK(std::abs(bd.value.real() - 1.6) <= 3.0 * bd.error_estimate + 1e-6);
  }

  TEST_CASE("route agreement and safety bounds") {
    const ExtremalConfig c = disc_config({0.5, 0.8, 0.9});
    for (std::size_t m = 0; m < 3; ++m) {
      const IntegralResult d = lower_bound_value(c, m, QuadratureRule::defaults(1), Route::direct);
      const IntegralResult t = lower_bound_value(c, m, QuadratureRule::defaults(1), Route::transformed);
      CHECK(std::abs(d.value - t.value) <= 3.0 * (d.error_estimate + t.error_estimate));
    }
    CHECK_THROWS_AS(lower_bound_at(c, 0.96, QuadratureRule::defaults(1), Route::direct), std::domain_error);
    CHECK_THROWS_AS(lower_bound_at(c, 0.9991, QuadratureRule::defaults(1), Route::transformed), std::domain_error);
    CHECK_THROWS_AS(lower_bound_value(c, 3, QuadratureRule::defaults(1), Route::transformed), std::out_of_range);
  }

  TEST_CASE("convergence table sandwich") {
    const ExtremalConfig c = disc_config({0.5, 0.8, 0.9, 0.95, 0.99, 0.995, 0.999});
    const auto rows = convergence_table(c, QuadratureRule::defaults(1));
    const double target = theoretical_norm(c.params, 1.0);
    REQUIRE(rows.size() == 7);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      CHECK(rows[k].value <= target + 3.0 * rows[k].error);
      CHECK(rows[k].ratio == doctest::Approx(rows[k].value / target));
    }
    // independent adaptive-quadrature reference values of the transformed integral
    CHECK(std::abs(rows[4].ratio - 0.9498346) < 1e-5);
    CHECK(std::abs(rows[6].ratio - 0.9916590) < 1e-5);
    // the analytic limit object
    const KernelParams& p = c.params;
    CHECK(oracle::rel_diff(c.pairing_value * p.c_sigma * derivative_factor(p) * j_closed_form(-p.n, p.sigma, p.d), target) <
          1e-12);
  }

  TEST_CASE("transformed integrand is bounded by C") {
    std::mt19937_64 rng(37);
    for (auto [d, n, pp] : {std::tuple{1, 1, kInfinity}, std::tuple{2, 2, 2.0}, std::tuple{2, 2, 1.0}, std::tuple{3, 1, 1.5}}) {
      const ExtremalConfig c = ExtremalConfig::make(KernelParams::make(d, 0.0, n), NormSpec::p_norm(pp), {0.99});
      const double C = c_optimize(c.norm, d, n).value;
      const MonomialBasis basis(d, n);
      const BallPoint zm = 0.99 * c.zeta0;
      for (int k = 0; k < 2000; ++k) {
        const BallPoint w = oracle::random_point(rng, d, 1.0);
        CHECK(std::abs(basis.pair(mobius(zm, w), c.dual_witness.components())) <= C + 1e-10);
      }
    }
  }

  TEST_CASE("custom norm with a supplied witness runs the pipeline") {
    const NormSpec l2 = NormSpec::custom(
        "custom-l2", [](std::span<const cplx> z) { return p_norm_value(z, 2.0); },
        [](const MonomialVector& z) {
          const double s = p_norm_value(z.components(), 2.0);
          std::vector<cplx> w(z.components().begin(), z.components().end());
          for (auto& x : w) x /= s;
          return MonomialVector(std::move(w));
        });
    const KernelParams p = KernelParams::make(1, 0.0, 2);
    const ExtremalConfig a = ExtremalConfig::make(p, l2, {0.9});
    const ExtremalConfig b = ExtremalConfig::make(p, NormSpec::p_norm(2.0), {0.9});
    CHECK(a.pairing_value == doctest::Approx(1.0).epsilon(1e-10));
    const IntegralResult va = lower_bound_value(a, 0, QuadratureRule::defaults(1), Route::transformed);
    const IntegralResult vb = lower_bound_value(b, 0, QuadratureRule::defaults(1), Route::transformed);
    CHECK(std::abs(va.value - vb.value) < 1e-10);
  }
}
