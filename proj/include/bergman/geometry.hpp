#pragma once

// Hermitian geometry of the unit ball B of C^d and its Moebius automorphisms.

#include <utility>

#include "bergman/ball_point.hpp"

namespace bergman {

/// <z, w> = sum_j z_j conj(w_j). Throws std::invalid_argument on a dimension mismatch.
cplx inner(const BallPoint& z, const BallPoint& w);

/// The canonical automorphism phi_z exchanging 0 and z. phi_0 = -Id.
///
/// Requires |z| < 1 and |w| <= 1 (std::domain_error otherwise). For tiny |z| the
/// projection onto z is evaluated without dividing by |z|^2.
BallPoint mobius(const BallPoint& z, const BallPoint& w);

/// Real Jacobian determinant of phi_z at w: ((1-|z|^2)/|1-<w,z>|^2)^{d+1}.
double jacobian_real(const BallPoint& z, const BallPoint& w);

struct IdentityResiduals {
  /// | 1-|phi_z(w)|^2 - (1-|z|^2)(1-|w|^2)/|1-<w,z>|^2 |
  double modulus_identity = 0.0;
  /// | (1-<w,z>)(1-<phi_z(w),z>) - (1-|z|^2) |
  double product_identity = 0.0;
};

IdentityResiduals identity_residuals(const BallPoint& z, const BallPoint& w);

/// Throws std::domain_error unless |z| < 1.
void require_interior(const BallPoint& z, const char* what);

}  // namespace bergman
