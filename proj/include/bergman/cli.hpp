#pragma once

// The `bergman` command line: verify, reference, norm, jvalue, converge, cp.
// Exit codes: 0 success, 1 failed verification, 2 configuration error.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "bergman/extremal.hpp"
#include "bergman/projection.hpp"
#include "bergman/quadrature.hpp"

namespace bergman::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitConfig = 2;

/// Raised for anything that is the caller's fault; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  int d = 1;
  double sigma = 0.0;
  int n = 1;
  std::string norm = "l2";  ///< l1, l2, linf, lp:<p>, <p>, inf, custom:weighted-l2:w1,w2,...
  std::vector<double> epsilons;  ///< empty selects default_epsilons()
  QuadratureRule rule;           ///< zero node counts select per-d defaults
  bool rule_overridden = false;  ///< scheme chosen explicitly (flag or JSON block)
  std::uint64_t seed = 0x5EED;
  std::string format = "csv";
  std::string out;

  std::string kind = "l2";     ///< reference
  double c = -1.0;             ///< jvalue
  double t = 0.0;              ///< jvalue
  double r = 0.9;              ///< jvalue: z = r e_1
  double max_residual = 1e-12; ///< verify: algebraic residual tolerance and absolute slack
  Route route = Route::transformed;

  /// Range checks done before any computation; throws ConfigError.
  void validate() const;
};

/// Parses a norm descriptor for the derivative tuple of length d_tilde(d, n).
NormSpec parse_norm(const std::string& descriptor, int d, int n);

/// {"scheme": "product" | "monte-carlo", "radial_nodes", "sphere_nodes", "samples", "seed"}.
/// Missing keys keep the values of `base`; unknown keys are rejected.
QuadratureRule rule_from_json(const nlohmann::json& block, QuadratureRule base = {});

/// %.12g for values, %.3g for error estimates.
std::string format_value(double v);
std::string format_error(double v);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bergman::cli
