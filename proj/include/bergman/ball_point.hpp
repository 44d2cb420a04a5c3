#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>

namespace bergman {

using cplx = std::complex<double>;

/// A point of C^d stored inline (no heap traffic in quadrature loops).
///
/// The type does not enforce |z| < 1; operations that need interior or
/// boundary points validate their arguments themselves.
class BallPoint {
 public:
  static constexpr std::size_t kMaxDim = 16;

  BallPoint() = default;

  explicit BallPoint(std::size_t dim) : dim_(dim) {
    if (dim == 0 || dim > kMaxDim) throw std::out_of_range("BallPoint: dimension must be in [1, 16]");
  }

  BallPoint(std::initializer_list<cplx> coords) : BallPoint(coords.size()) {
    std::size_t j = 0;
    for (const auto& c : coords) c_[j++] = c;
  }

  explicit BallPoint(std::span<const cplx> coords) : BallPoint(coords.size()) {
    for (std::size_t j = 0; j < dim_; ++j) c_[j] = coords[j];
  }

  /// Standard basis vector e_{j+1} of C^dim.
  static BallPoint unit(std::size_t dim, std::size_t j) {
    BallPoint e(dim);
    e.c_.at(j) = 1.0;
    return e;
  }

  /// (dim^{-1/2}, ..., dim^{-1/2}).
  static BallPoint balanced(std::size_t dim);

  std::size_t dim() const { return dim_; }

  cplx& operator[](std::size_t j) { return c_[j]; }
  const cplx& operator[](std::size_t j) const { return c_[j]; }

  std::span<const cplx> coords() const { return {c_.data(), dim_}; }
  std::span<cplx> coords() { return {c_.data(), dim_}; }

  double norm_squared() const {
    double s = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) s += std::norm(c_[j]);
    return s;
  }

  double modulus() const;

  BallPoint conj() const {
    BallPoint r = *this;
    for (std::size_t j = 0; j < dim_; ++j) r.c_[j] = std::conj(c_[j]);
    return r;
  }

  BallPoint& operator+=(const BallPoint& o);
  BallPoint& operator-=(const BallPoint& o);
  BallPoint& operator*=(cplx s) {
    for (std::size_t j = 0; j < dim_; ++j) c_[j] *= s;
    return *this;
  }

  friend BallPoint operator+(BallPoint a, const BallPoint& b) { return a += b; }
  friend BallPoint operator-(BallPoint a, const BallPoint& b) { return a -= b; }
  friend BallPoint operator*(cplx s, BallPoint a) { return a *= s; }
  friend BallPoint operator*(BallPoint a, cplx s) { return a *= s; }
  friend BallPoint operator-(BallPoint a) { return a *= -1.0; }

 private:
  std::array<cplx, kMaxDim> c_{};
  std::size_t dim_ = 0;
};

}  // namespace bergman
