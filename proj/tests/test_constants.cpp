#include <doctest.h>

#include <random>

#include "bergman/constants.hpp"
#include "support.hpp"

using namespace bergman;

TEST_SUITE("constants") {
  TEST_CASE("c_exact") {
    for (int d = 1; d <= 4; ++d) {
      for (int n = 1; n <= 3; ++n) CHECK(c_exact(NormSpec::p_norm(3.0), d, n).lower == 1.0);
    }
    const Interval c = c_exact(NormSpec::p_norm(1.0), 4, 1);
    CHECK(c.is_exact());
    CHECK(c.lower == doctest::Approx(2.0).epsilon(1e-15));
    const Interval i = c_exact(NormSpec::p_norm(1.0), 2, 2);
    CHECK(i.lower == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(i.upper == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    const NormSpec custom = NormSpec::custom("sum", [](std::span<const cplx> z) { return p_norm_value(z, 1.0); });
    CHECK_THROWS_AS(c_exact(custom, 2, 1), std::invalid_argument);
  }

  TEST_CASE("c_optimize examples") {
    const SphereOptResult two = c_optimize(NormSpec::p_norm(2.0), 3, 2);
    CHECK(two.value == doctest::Approx(1.0).epsilon(1e-10));
    int unit_coords = 0;
    for (std::size_t j = 0; j < 3; ++j) unit_coords += std::abs(two.maximizer[j]) > 1.0 - 1e-5;
    CHECK(unit_coords == 1);

    const SphereOptResult one = c_optimize(NormSpec::p_norm(1.0), 3, 1);
    CHECK(std::abs(one.value - std::sqrt(3.0)) < 1e-8);
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(std::abs(one.maximizer[j]) - 1.0 / std::sqrt(3.0)) < 1e-4);

    const SphereOptResult open = c_optimize(NormSpec::p_norm(1.0), 2, 2);
    CHECK(open.value >= 1.5 - 1e-8);
    CHECK(open.value <= std::sqrt(3.0) + 1e-8);
    CHECK(std::abs(open.maximizer.modulus() - 1.0) < 1e-12);
    CHECK(std::abs(open.value - NormSpec::p_norm(1.0)(monomial_vector(open.maximizer, 2))) < 1e-12);
  }

  TEST_CASE("c_optimize reproduces closed forms") {
    for (int d = 1; d <= 3; ++d) {
      for (int n = 1; n <= 2; ++n) {
        for (double p : {1.0, 1.5, 2.0, 3.0, kInfinity}) {
          const NormSpec norm = NormSpec::p_norm(p);
          const Interval exact = c_exact(norm, d, n);
          const SphereOptResult r = c_optimize(norm, d, n, 8);
          CHECK(exact.contains(r.value, 1e-8));
          if (exact.is_exact()) CHECK(std::abs(r.value - exact.lower) < 1e-8);
        }
      }
    }
  }

  TEST_CASE("determinism and phase gauge") {
    const SphereOptResult a = c_optimize(NormSpec::p_norm(1.5), 3, 2, 4, 99);
    const SphereOptResult b = c_optimize(NormSpec::p_norm(1.5), 3, 2, 4, 99);
    CHECK(a.value == b.value);
    CHECK((a.maximizer - b.maximizer).modulus() == 0.0);
    const BallPoint g = phase_gauge(BallPoint{0.0, cplx(0.0, 0.6), cplx(-0.8, 0.0)});
    CHECK(g[0] == cplx(0.0));
    CHECK(g[1] == cplx(0.6));
    CHECK(std::abs(g[2] - cplx(0.0, 0.8)) < 1e-15);
  }

  TEST_CASE("remark bound and homogeneity") {
    CHECK(remark_bound_check(NormSpec::p_norm(2.0), 3, 2, 1.0, 20000, 1) <= 1e-10);
    CHECK(remark_bound_check(NormSpec::p_norm(1.0), 2, 1, std::sqrt(2.0), 20000, 2) <= 1e-10);
    CHECK(remark_bound_check(NormSpec::p_norm(1.0), 2, 1, std::sqrt(2.0), 20000, 2) > -0.1);
    CHECK(NormSpec::p_norm(1.0)(monomial_vector(BallPoint(2), 1)) == 0.0);
    std::mt19937_64 rng(41);
    for (int k = 0; k < 100; ++k) {
      const BallPoint z = oracle::random_sphere(rng, 3);
      const double r = (k + 0.5) / 100.0;
      for (double p : {1.0, 2.0, kInfinity}) {
        const NormSpec norm = NormSpec::p_norm(p);
        CHECK(norm(monomial_vector(r * z, 2)) == doctest::Approx(r * r * norm(monomial_vector(z, 2))).epsilon(1e-13));
      }
    }
  }
}
