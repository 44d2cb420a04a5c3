#pragma once

// The norm constant C = max_{|zeta|=1} |Z(zeta)|: closed forms where they are
// known, sphere-constrained optimization otherwise.

#include <cstdint>

#include "bergman/ball_point.hpp"
#include "bergman/projection.hpp"
#include "bergman/special.hpp"

namespace bergman {

struct SphereOptResult {
  BallPoint maximizer;  ///< |maximizer| = 1, first nonzero coordinate rotated to the positive real axis
  double value = 0.0;   ///< vector_norm(Z(maximizer), norm)
  int restarts = 0;
  bool converged = false;
};

/// p >= 2: exactly 1. p < 2, n = 1: exactly d^{1/p-1/2}. p < 2, n >= 2: the
/// bracket [d~^{1/p} d^{-n/2}, d~^{1/p-1/2}]. Custom norms are rejected.
Interval c_exact(const NormSpec& norm, int d, int n);

/// Multi-start projected gradient ascent of zeta -> |Z(zeta)| on the unit sphere of C^d.
SphereOptResult c_optimize(const NormSpec& norm, int d, int n, int restarts = 32, std::uint64_t seed = 0xC0FFEE);

/// max over `samples` seeded interior points w of |Z(w)| - C.
double remark_bound_check(const NormSpec& norm, int d, int n, double C, int samples, std::uint64_t seed);

/// Rotates the point by a global phase so that its first coordinate with modulus
/// above 1e-12 is positive real. Leaves |Z(zeta)| unchanged for every norm.
BallPoint phase_gauge(const BallPoint& zeta);

}  // namespace bergman
