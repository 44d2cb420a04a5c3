#include "bergman/multiindex.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bergman {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::domain_error("MultiIndex: at least one entry required");
  for (int e : entries_) {
    if (e < 0) throw std::domain_error("MultiIndex: entries must be non-negative");
  }
  order_ = std::accumulate(entries_.begin(), entries_.end(), 0);
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    if (r > std::numeric_limits<std::uint64_t>::max() / num) throw std::out_of_range("binomial: overflow");
    r = r * num / static_cast<std::uint64_t>(i);  // exact: r * num is divisible by i
  }
  return r;
}

std::uint64_t d_tilde(int d, int n) {
  if (d < 1 || n < 1) throw std::domain_error("d and n must be positive integers");
  if (d > kMaxIndexRange || n > kMaxIndexRange) {
    throw std::out_of_range("multi-index range exceeded: d, n <= " + std::to_string(kMaxIndexRange));
  }
  return binomial(n + d - 1, d - 1);
}

namespace {

// true iff a precedes b in the canonical (descending grevlex) order.
bool grevlex_before(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t j = a.size(); j-- > 0;) {
    if (a[j] != b[j]) return a[j] < b[j];
  }
  return false;
}

void enumerate_rec(int d, int remaining, std::vector<int>& cur, std::size_t pos, std::vector<std::vector<int>>& out) {
  if (pos + 1 == static_cast<std::size_t>(d)) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    cur[pos] = k;
    enumerate_rec(d, remaining - k, cur, pos + 1, out);
  }
}

}  // namespace

std::vector<MultiIndex> enumerate_indices(int d, int n) {
  const std::uint64_t expected = d_tilde(d, n);
  std::vector<std::vector<int>> raw;
  raw.reserve(expected);
  std::vector<int> cur(static_cast<std::size_t>(d), 0);
  enumerate_rec(d, n, cur, 0, raw);
  std::sort(raw.begin(), raw.end(), grevlex_before);

  std::vector<MultiIndex> out;
  out.reserve(raw.size());
  for (auto& r : raw) out.emplace_back(std::move(r));
  return out;
}

MonomialVector MonomialVector::conj() const {
  MonomialVector r = *this;
  for (auto& c : r.c_) c = std::conj(c);
  return r;
}

cplx pairing(const MonomialVector& a, const MonomialVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("pairing: length mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

MonomialVector monomial_vector(const BallPoint& zeta, int n) {
  const MonomialBasis basis(static_cast<int>(zeta.dim()), n);
  std::vector<cplx> out(basis.size());
  basis.evaluate(zeta, out);
  return MonomialVector(std::move(out));
}

MonomialBasis::MonomialBasis(int d, int n)
    : d_(d), n_(n), count_(static_cast<std::size_t>(d_tilde(d, n))), indices_(enumerate_indices(d, n)) {
  flat_.reserve(count_ * static_cast<std::size_t>(d));
  for (const auto& a : indices_) {
    for (int e : a.entries()) flat_.push_back(static_cast<unsigned char>(e));
  }
}

template <typename Visit>
void MonomialBasis::for_each_monomial(const BallPoint& w, Visit&& visit) const {
  if (w.dim() != static_cast<std::size_t>(d_)) throw std::invalid_argument("MonomialBasis: dimension mismatch");
  // powers[j * (n+1) + k] = w_j^k
  std::array<cplx, BallPoint::kMaxDim*(kMaxIndexRange + 1)> powers;
  const std::size_t stride = static_cast<std::size_t>(n_) + 1;
  for (std::size_t j = 0; j < static_cast<std::size_t>(d_); ++j) {
    powers[j * stride] = 1.0;
    for (std::size_t k = 1; k < stride; ++k) powers[j * stride + k] = powers[j * stride + k - 1] * w[j];
  }
  const unsigned char* e = flat_.data();
  for (std::size_t i = 0; i < count_; ++i, e += d_) {
    cplx m = powers[e[0]];
    for (std::size_t j = 1; j < static_cast<std::size_t>(d_); ++j) m *= powers[j * stride + e[j]];
    visit(i, m);
  }
}

void MonomialBasis::evaluate(const BallPoint& w, std::span<cplx> out) const {
  if (out.size() != count_) throw std::invalid_argument("MonomialBasis::evaluate: output length mismatch");
  for_each_monomial(w, [&](std::size_t i, cplx m) { out[i] = m; });
}

cplx MonomialBasis::pair(const BallPoint& w, std::span<const cplx> witness) const {
  if (witness.size() != count_) throw std::invalid_argument("MonomialBasis::pair: witness length mismatch");
  cplx s = 0.0;
  for_each_monomial(w, [&](std::size_t i, cplx m) { s += m * std::conj(witness[i]); });
  return s;
}

}  // namespace bergman
