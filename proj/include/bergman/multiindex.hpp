#pragma once

// Multi-indices of fixed order and the monomial tuple Z(zeta) = (..., zeta^alpha, ...).
//
// Canonical order (used for every MonomialVector, every derivative tuple and
// every CSV column set): graded reverse-lexicographic, descending. Within the
// fixed order n, alpha precedes beta iff the last nonzero entry of alpha - beta
// is negative. For d = 3, n = 2:
//   (2,0,0) (1,1,0) (0,2,0) (1,0,1) (0,1,1) (0,0,2)

#include <cstdint>
#include <span>
#include <vector>

#include "bergman/ball_point.hpp"

namespace bergman {

/// Largest d and n for which exact integer binomials are supported.
inline constexpr int kMaxIndexRange = 16;

class MultiIndex {
 public:
  explicit MultiIndex(std::vector<int> entries);

  std::size_t dim() const { return entries_.size(); }
  int order() const { return order_; }
  int operator[](std::size_t j) const { return entries_[j]; }
  const std::vector<int>& entries() const { return entries_; }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> entries_;
  int order_ = 0;
};

/// Exact binomial coefficient; throws std::out_of_range past 64-bit range.
std::uint64_t binomial(int n, int k);

/// d~ = binomial(n+d-1, d-1). Throws std::domain_error for d or n < 1 and
/// std::out_of_range above kMaxIndexRange.
std::uint64_t d_tilde(int d, int n);

/// All alpha in Z_+^d with |alpha| = n, in canonical order.
std::vector<MultiIndex> enumerate_indices(int d, int n);

/// Z(zeta) in canonical order.
class MonomialVector {
 public:
  MonomialVector() = default;
  explicit MonomialVector(std::vector<cplx> components) : c_(std::move(components)) {}

  std::size_t size() const { return c_.size(); }
  cplx& operator[](std::size_t i) { return c_[i]; }
  const cplx& operator[](std::size_t i) const { return c_[i]; }
  std::span<const cplx> components() const { return c_; }
  std::span<cplx> components() { return c_; }

  MonomialVector conj() const;

  /// sum_k a_k conj(b_k)
  friend cplx pairing(const MonomialVector& a, const MonomialVector& b);

 private:
  std::vector<cplx> c_;
};

MonomialVector monomial_vector(const BallPoint& zeta, int n);

/// Precomputed exponent table for repeated evaluation of Z(w) at one (d, n).
class MonomialBasis {
 public:
  MonomialBasis(int d, int n);

  int dim() const { return d_; }
  int order() const { return n_; }
  std::size_t size() const { return count_; }
  const std::vector<MultiIndex>& indices() const { return indices_; }

  /// Writes Z(w) into out (size() entries).
  void evaluate(const BallPoint& w, std::span<cplx> out) const;

  /// <Z(w), witness> = sum_alpha w^alpha conj(witness_alpha), without allocating.
  cplx pair(const BallPoint& w, std::span<const cplx> witness) const;

 private:
  template <typename Visit>
  void for_each_monomial(const BallPoint& w, Visit&& visit) const;

  int d_;
  int n_;
  std::size_t count_;
  std::vector<MultiIndex> indices_;
  std::vector<unsigned char> flat_;  // count_ x d_ exponents
};

}  // namespace bergman
