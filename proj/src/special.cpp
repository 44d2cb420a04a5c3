#include "bergman/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bergman/multiindex.hpp"

namespace bergman {

KernelParams KernelParams::make(int d, double sigma, int n) {
  if (d < 1) throw std::domain_error("d >= 1 required");
  if (n < 1) throw std::domain_error("n >= 1 required");
  if (!(sigma > -1.0)) throw std::domain_error("sigma > -1 required (σ>−1)");
  KernelParams p;
  p.d = d;
  p.sigma = sigma;
  p.n = n;
  p.lambda = d + 1 + sigma;
  p.c_sigma = bergman::c_sigma(d, sigma);
  p.d_tilde = bergman::d_tilde(d, n);
  return p;
}

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("log_gamma: x > 0 required");
  return std::lgamma(x);
}

double c_sigma(int d, double sigma) {
  if (d < 1) throw std::domain_error("c_sigma: d >= 1 required");
  if (!(sigma > -1.0)) throw std::domain_error("c_sigma: sigma > -1 required");
  return std::exp(log_gamma(d + sigma + 1) - log_gamma(sigma + 1) - log_gamma(d + 1.0));
}

double j_closed_form(double c, double t, int d) {
  if (!(c < 0.0)) throw std::domain_error("j_closed_form: c < 0 required (J_{c,t} is bounded only for c < 0)");
  if (!(t > -1.0)) throw std::domain_error("j_closed_form: t > -1 required");
  if (d < 1) throw std::domain_error("j_closed_form: d >= 1 required");
  return std::exp(log_gamma(d + 1.0) + log_gamma(t + 1) + log_gamma(-c) - 2.0 * log_gamma((d + 1 + t - c) / 2));
}

double theoretical_norm(const KernelParams& params, double C) {
  if (!(C > 0.0)) throw std::domain_error("theoretical_norm: C > 0 required");
  const double a = params.lambda + params.n;
  return C * std::exp(log_gamma(a) + log_gamma(params.n) - 2.0 * log_gamma(a / 2));
}

double derivative_factor(const KernelParams& params) {
  return std::exp(log_gamma(params.lambda + params.n) - log_gamma(params.lambda));
}

double disc_closed_form(int n) {
  if (n < 1) throw std::domain_error("disc_closed_form: n >= 1 required");
  return 4.0 * (n + 1) / n * std::exp(2.0 * log_gamma(n) - 2.0 * log_gamma(n / 2.0));
}

double gradient_constant(double lambda) {
  if (!(lambda > 0.0)) throw std::domain_error("gradient_constant: lambda > 0 required");
  return std::exp(log_gamma(lambda + 1) - 2.0 * log_gamma((lambda + 1) / 2));
}

ReferenceKind parse_reference_kind(const std::string& name) {
  if (name == "l1") return ReferenceKind::l1;
  if (name == "l2") return ReferenceKind::l2;
  if (name == "liu") return ReferenceKind::liu;
  if (name == "disc") return ReferenceKind::disc;
  if (name == "perala") return ReferenceKind::perala;
  if (name == "gradient") return ReferenceKind::gradient;
  throw std::invalid_argument("unknown reference kind '" + name + "' (l1, l2, liu, disc, perala, gradient)");
}

std::string to_string(ReferenceKind kind) {
  switch (kind) {
    case ReferenceKind::l1: return "l1";
    case ReferenceKind::l2: return "l2";
    case ReferenceKind::liu: return "liu";
    case ReferenceKind::disc: return "disc";
    case ReferenceKind::perala: return "perala";
    case ReferenceKind::gradient: return "gradient";
  }
  return "unknown";
}

Interval reference_constants(ReferenceKind kind, const ReferenceInputs& in) {
  if (in.d < 1) throw std::domain_error("d >= 1 required");
  const double d = in.d;
  switch (kind) {
    case ReferenceKind::l1: {
      if (!(in.sigma > 0.0)) throw std::domain_error("L^1 norm requires σ>0");
      const double v = std::exp(log_gamma(d + in.sigma + 1) - 2.0 * log_gamma((d + in.sigma + 1) / 2) +
                                log_gamma(in.sigma) - log_gamma(in.sigma + 1));
      return {v, v};
    }
    case ReferenceKind::l2: {
      if (!(in.sigma > -0.5)) throw std::domain_error("L^2 norm requires σ>−1/2");
      const double v = std::exp(0.5 * log_gamma(2 * in.sigma + 1) - log_gamma(in.sigma + 1));
      return {v, v};
    }
    case ReferenceKind::liu: {
      if (!(in.p > 1.0) || !std::isfinite(in.p)) throw std::domain_error("Liu bounds require 1<p<∞");
      const double q = in.p / (in.p - 1.0);
      const double g = 2.0 * log_gamma((d + 1) / 2);
      const double lower = std::exp(log_gamma((d + 1) / in.p) + log_gamma((d + 1) / q) - g);
      const double upper = std::exp(log_gamma(d + 1) - g) * std::numbers::pi / std::sin(std::numbers::pi / in.p);
      return {lower, upper};
    }
    case ReferenceKind::disc: {
      if (in.n < 1) throw std::domain_error("disc constant requires n>=1");
      const double v = disc_closed_form(in.n);
      return {v, v};
    }
    case ReferenceKind::perala: {
      const double v = 8.0 / std::numbers::pi;
      return {v, v};
    }
    case ReferenceKind::gradient: {
      if (!(in.sigma > -1.0)) throw std::domain_error("gradient constant requires σ>−1");
      const double v = gradient_constant(d + 1 + in.sigma);
      return {v, v};
    }
  }
  throw std::invalid_argument("reference_constants: unknown kind");
}

}  // namespace bergman
