#pragma once

// Independent oracles shared by the unit and acceptance tests.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "bergman/ball_point.hpp"

namespace oracle {

using bergman::BallPoint;
using bergman::cplx;

inline BallPoint random_point(std::mt19937_64& rng, int d, double max_radius) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  BallPoint z(static_cast<std::size_t>(d));
  double nn = 0.0;
  while (nn == 0.0) {
    for (int j = 0; j < d; ++j) z[static_cast<std::size_t>(j)] = cplx(normal(rng), normal(rng));
    nn = z.norm_squared();
  }
  z *= max_radius * uni(rng) / std::sqrt(nn);
  return z;
}

inline BallPoint random_sphere(std::mt19937_64& rng, int d) {
  BallPoint z = random_point(rng, d, 1.0);
  z *= 1.0 / z.modulus();
  return z;
}

// All alpha in Z_+^d with |alpha| = n, by counting through [0, n]^d.
inline std::vector<std::vector<int>> brute_force_indices(int d, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(static_cast<std::size_t>(d), 0);
  while (true) {
    int s = 0;
    for (int v : a) s += v;
    if (s == n) out.push_back(a);
    std::size_t k = 0;
    while (k < a.size() && a[k] == n) a[k++] = 0;
    if (k == a.size()) break;
    ++a[k];
  }
  return out;
}

// Determinant of the real 2d x 2d derivative of F at w, by central differences.
inline double fd_real_jacobian(const std::function<BallPoint(const BallPoint&)>& F, const BallPoint& w,
                               double h = 1e-6) {
  const int d = static_cast<int>(w.dim());
  Eigen::MatrixXd J(2 * d, 2 * d);
  for (int k = 0; k < 2 * d; ++k) {
    BallPoint up = w, down = w;
    const cplx step = (k % 2 == 0) ? cplx(h, 0.0) : cplx(0.0, h);
    up[static_cast<std::size_t>(k / 2)] += step;
    down[static_cast<std::size_t>(k / 2)] -= step;
    const BallPoint a = F(up), b = F(down);
    for (int j = 0; j < d; ++j) {
      const cplx diff = (a[static_cast<std::size_t>(j)] - b[static_cast<std::size_t>(j)]) / (2.0 * h);
      J(2 * j, k) = diff.real();
      J(2 * j + 1, k) = diff.imag();
    }
  }
  return J.determinant();
}

// Complex derivative d/dz_j of a function holomorphic in z, by central differences.
inline cplx fd_holomorphic(const std::function<cplx(const BallPoint&)>& f, const BallPoint& z, std::size_t j,
                           double h) {
  BallPoint up = z, down = z;
  up[j] += h;
  down[j] -= h;
  return (f(up) - f(down)) / (2.0 * h);
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace oracle
