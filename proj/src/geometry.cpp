#include "bergman/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bergman {

namespace {

constexpr double kZeroThreshold = 1e-20;  // |z|^2 below this: phi_z = -Id
constexpr double kBoundarySlack = 1e-12;

}  // namespace

BallPoint BallPoint::balanced(std::size_t dim) {
  BallPoint p(dim);
  const double c = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::size_t j = 0; j < dim; ++j) p[j] = c;
  return p;
}

double BallPoint::modulus() const { return std::sqrt(norm_squared()); }

BallPoint& BallPoint::operator+=(const BallPoint& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("BallPoint: dimension mismatch");
  for (std::size_t j = 0; j < dim_; ++j) c_[j] += o.c_[j];
  return *this;
}

BallPoint& BallPoint::operator-=(const BallPoint& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("BallPoint: dimension mismatch");
  for (std::size_t j = 0; j < dim_; ++j) c_[j] -= o.c_[j];
  return *this;
}

cplx inner(const BallPoint& z, const BallPoint& w) {
  if (z.dim() != w.dim()) throw std::invalid_argument("inner: dimension mismatch");
  cplx s = 0.0;
  for (std::size_t j = 0; j < z.dim(); ++j) s += z[j] * std::conj(w[j]);
  return s;
}

void require_interior(const BallPoint& z, const char* what) {
  if (!(z.norm_squared() < 1.0)) {
    throw std::domain_error(std::string(what) + ": point must satisfy |z| < 1 (got |z| = " +
                            std::to_string(z.modulus()) + ")");
  }
}

BallPoint mobius(const BallPoint& z, const BallPoint& w) {
  require_interior(z, "mobius");
  if (z.dim() != w.dim()) throw std::invalid_argument("mobius: dimension mismatch");
  if (w.norm_squared() > 1.0 + kBoundarySlack) throw std::domain_error("mobius: |w| <= 1 required");

  const double zz = z.norm_squared();
  if (zz < kZeroThreshold) return -w;

  // z - P_z w - s Q_z w with s = sqrt(1-|z|^2) equals z - s w - <w,z> z / (1+s),
  // since (1-s)/|z|^2 = 1/(1+s).
  const double s = std::sqrt(1.0 - zz);
  const cplx wz = inner(w, z);
  const cplx den = 1.0 - wz;
  const cplx pz = wz / (1.0 + s);
  BallPoint out(z.dim());
  for (std::size_t j = 0; j < z.dim(); ++j) out[j] = (z[j] - s * w[j] - pz * z[j]) / den;
  return out;
}

double jacobian_real(const BallPoint& z, const BallPoint& w) {
  require_interior(z, "jacobian_real");
  require_interior(w, "jacobian_real");
  const double ratio = (1.0 - z.norm_squared()) / std::norm(1.0 - inner(w, z));
  return std::pow(ratio, static_cast<double>(z.dim() + 1));
}

IdentityResiduals identity_residuals(const BallPoint& z, const BallPoint& w) {
  require_interior(z, "identity_residuals");
  require_interior(w, "identity_residuals");
  const BallPoint phi = mobius(z, w);
  const double one_minus_z = 1.0 - z.norm_squared();
  const cplx den = 1.0 - inner(w, z);

  IdentityResiduals r;
  r.modulus_identity =
      std::abs((1.0 - phi.norm_squared()) - one_minus_z * (1.0 - w.norm_squared()) / std::norm(den));
  r.product_identity = std::abs(den * (1.0 - inner(phi, z)) - one_minus_z);
  return r;
}

}  // namespace bergman
