#include "bergman/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "bergman/constants.hpp"
#include "bergman/geometry.hpp"
#include "bergman/multiindex.hpp"
#include "bergman/special.hpp"

namespace bergman::cli {

using nlohmann::json;

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_error(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

namespace {

// JSON numbers carry the same digits as the CSV text.
json jvalue(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(format_value(v));
}

json jerror(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(format_error(v));
}

double parse_p(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return kInfinity;
  std::size_t used = 0;
  double p = 0.0;
  try {
    p = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse p = '" + text + "'");
  }
  if (used != text.size()) throw ConfigError("cannot parse p = '" + text + "'");
  return p;
}

std::vector<double> parse_weights(const std::string& text) {
  std::vector<double> w;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      w.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("cannot parse weight '" + item + "'");
    }
  }
  return w;
}

}  // namespace

NormSpec parse_norm(const std::string& descriptor, int d, int n) {
  const std::string custom_prefix = "custom:weighted-l2:";
  if (descriptor.rfind(custom_prefix, 0) == 0) {
    std::vector<double> weights = parse_weights(descriptor.substr(custom_prefix.size()));
    const std::size_t expected = d_tilde(d, n);
    if (weights.size() != expected) {
      throw ConfigError("weighted-l2 needs " + std::to_string(expected) + " weights, got " +
                        std::to_string(weights.size()));
    }
    for (double x : weights) {
      if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError("weighted-l2 weights must be positive");
    }
    return NormSpec::custom("weighted-l2", [weights](std::span<const cplx> z) {
      double s = 0.0;
      for (std::size_t k = 0; k < z.size(); ++k) s += weights[k] * std::norm(z[k]);
      return std::sqrt(s);
    });
  }
  double p = 0.0;
  if (descriptor == "l1") {
    p = 1.0;
  } else if (descriptor == "l2") {
    p = 2.0;
  } else if (descriptor == "linf") {
    p = kInfinity;
  } else if (descriptor.rfind("lp:", 0) == 0) {
    p = parse_p(descriptor.substr(3));
  } else {
    p = parse_p(descriptor);
  }
  if (!(p >= 1.0)) throw ConfigError("p ≥ 1 required (got " + descriptor + ")");
  return NormSpec::p_norm(p);
}

QuadratureRule rule_from_json(const json& block, QuadratureRule base) {
  if (!block.is_object()) throw ConfigError("rule block must be a JSON object");
  try {
    for (const auto& [key, value] : block.items()) {
      if (key == "scheme") {
        base.scheme = parse_scheme(value.get<std::string>());
      } else if (key == "radial_nodes") {
        base.radial_nodes = value.get<int>();
      } else if (key == "sphere_nodes") {
        base.sphere_nodes = value.get<int>();
      } else if (key == "samples") {
        base.samples = value.get<std::uint64_t>();
      } else if (key == "seed") {
        base.seed = value.get<std::uint64_t>();
      } else {
        throw ConfigError("unknown rule key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad rule block: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (base.radial_nodes < 0 || base.sphere_nodes < 0) throw ConfigError("node counts must be nonnegative");
  if (base.scheme == Scheme::monte_carlo && base.samples < 2) throw ConfigError("samples >= 2 required");
  return base;
}

void RunConfig::validate() const {
  if (d < 1) throw ConfigError("d ≥ 1 required");
  if (d > static_cast<int>(BallPoint::kMaxDim)) throw ConfigError("d ≤ 16 supported");
  if (n < 1) throw ConfigError("n ≥ 1 required");
  if (n > kMaxIndexRange) throw ConfigError("n ≤ 16 supported");
  if (!(sigma > -1.0) || !std::isfinite(sigma)) throw ConfigError("σ>−1 required (got sigma = " + format_value(sigma) + ")");
  for (double e : epsilons) {
    if (!(e > 0.0 && e < 1.0)) throw ConfigError("ε < 1 required; the limit is analytic (each ε must lie in (0,1))");
  }
  for (std::size_t i = 1; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > epsilons[i - 1])) throw ConfigError("ε schedule must be strictly increasing");
  }
  if (format != "csv" && format != "json") throw ConfigError("format must be csv or json");
  if (!(max_residual >= 0.0)) throw ConfigError("max-residual must be nonnegative");
  if (command == "jvalue") {
    if (!(t > -1.0)) throw ConfigError("t > −1 required");
    if (!(r >= 0.0 && r < 1.0)) throw ConfigError("0 ≤ r < 1 required");
  }
  if (rule.scheme == Scheme::product && d > 2 && rule_overridden) {
    throw ConfigError("product rule supports d ∈ {1, 2}; use --scheme monte-carlo");
  }
  parse_norm(norm, d, n);
}

namespace {

struct Report {
  std::string csv;
  json doc;
  int status = kExitOk;
};

KernelParams params_of(const RunConfig& c) { return KernelParams::make(c.d, c.sigma, c.n); }

// ---- verify ----

struct Check {
  std::string name;
  double residual;
  double tolerance;
  bool pass() const { return residual <= tolerance; }
};

BallPoint random_interior(std::mt19937_64& rng, int d, double max_radius) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  BallPoint z(static_cast<std::size_t>(d));
  double nn = 0.0;
  while (nn == 0.0) {
    for (int j = 0; j < d; ++j) z[static_cast<std::size_t>(j)] = cplx(normal(rng), normal(rng));
    nn = z.norm_squared();
  }
  return (max_radius * std::pow(uni(rng), 1.0 / (2.0 * d)) / std::sqrt(nn)) * z;
}

Check quadrature_check(const std::string& name, cplx a, cplx b, double error, double slack) {
  return {name, std::abs(a - b), 3.0 * error + slack};
}

std::vector<Check> run_verify(const RunConfig& c) {
  const KernelParams params = params_of(c);
  const QuadratureRule rule = c.rule.resolved(c.d);
  std::mt19937_64 rng(c.seed);
  std::vector<Check> checks;

  double worst_modulus = 0.0, worst_product = 0.0, worst_involution = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const BallPoint z = random_interior(rng, c.d, 0.99);
    const BallPoint w = random_interior(rng, c.d, 0.99);
    const IdentityResiduals res = identity_residuals(z, w);
    worst_modulus = std::max(worst_modulus, res.modulus_identity);
    worst_product = std::max(worst_product, res.product_identity);
    worst_involution = std::max(worst_involution, (mobius(z, mobius(z, w)) - w).modulus());
  }
  checks.push_back({"mobius modulus identity", worst_modulus, c.max_residual});
  checks.push_back({"mobius product identity", worst_product, c.max_residual});
  checks.push_back({"mobius involution", worst_involution, c.max_residual});

  const IntegralResult one = integrate_weighted([](const BallPoint&) { return cplx(1.0); }, params, rule);
  checks.push_back(quadrature_check("normalization", one.value, 1.0, one.error_estimate, c.max_residual));

  const BallPoint z = random_interior(rng, c.d, 0.6);
  const std::vector<std::pair<std::string, ScalarIntegrand>> phis = {
      {"1", [](const BallPoint&) { return cplx(1.0); }},
      {"|w|^2", [](const BallPoint& w) { return cplx(w.norm_squared()); }},
      {"Re w1", [](const BallPoint& w) { return cplx(w[0].real()); }},
  };
  for (const auto& [label, phi] : phis) {
    const auto [lhs, rhs] = transform_identity_sides(phi, params, z, rule);
    checks.push_back(quadrature_check("transform identity Phi=" + label, lhs.value, rhs.value,
                                      lhs.error_estimate + rhs.error_estimate, c.max_residual));
  }

  const std::size_t last = static_cast<std::size_t>(c.d - 1);
  const BoundedFunction h(BoundedFunction::Family::clipped_polynomial, "holomorphic 1/4 + w1/2 + wd^2/4",
                          [last](const BallPoint& w) { return 0.25 + 0.5 * w[0] + 0.25 * w[last] * w[last]; });
  const IntegralResult th = apply_T(h, params, z, rule);
  checks.push_back(quadrature_check("reproducing property", th.value, h(z), th.error_estimate, c.max_residual));
  return checks;
}

Report cmd_verify(const RunConfig& c) {
  Report r;
  const std::vector<Check> checks = run_verify(c);
  std::ostringstream os;
  os << "check,residual,tolerance,status\n";
  json list = json::array();
  bool all = true;
  for (const Check& k : checks) {
    all = all && k.pass();
    os << k.name << ',' << format_error(k.residual) << ',' << format_error(k.tolerance) << ','
       << (k.pass() ? "pass" : "fail") << '\n';
    list.push_back({{"check", k.name}, {"residual", jerror(k.residual)}, {"tolerance", jerror(k.tolerance)},
                    {"pass", k.pass()}});
  }
  r.csv = os.str();
  r.doc = {{"d", c.d}, {"sigma", c.sigma}, {"n", c.n}, {"checks", list}, {"passed", all}};
  r.status = all ? kExitOk : kExitFailed;
  return r;
}

// ---- reference ----

Report cmd_reference(const RunConfig& c) {
  Report r;
  const ReferenceKind kind = parse_reference_kind(c.kind);
  const NormSpec norm = parse_norm(c.norm, c.d, c.n);
  const double p = norm.is_p_norm() ? norm.p() : 2.0;
  const Interval v = reference_constants(kind, {c.d, c.sigma, c.n, p});
  std::ostringstream os;
  os << "kind,d,sigma,n,p,lower,upper\n"
     << to_string(kind) << ',' << c.d << ',' << format_value(c.sigma) << ',' << c.n << ',' << format_value(p) << ','
     << format_value(v.lower) << ',' << format_value(v.upper) << '\n';
  r.csv = os.str();
  json value = v.is_exact() ? json{{"exact", jvalue(v.lower)}} : json{{"lower", jvalue(v.lower)}, {"upper", jvalue(v.upper)}};
  r.doc = {{"kind", to_string(kind)}, {"d", c.d}, {"sigma", c.sigma}, {"n", c.n}, {"p", jvalue(p)}, {"value", value}};
  return r;
}

// ---- norm ----

Report cmd_norm(const RunConfig& c) {
  Report r;
  const KernelParams params = params_of(c);
  const NormSpec norm = parse_norm(c.norm, c.d, c.n);
  std::string kind;
  double lower = 0.0, upper = kInfinity, estimate = 0.0;
  if (norm.is_p_norm()) {
    const Interval C = c_exact(norm, c.d, c.n);
    lower = C.lower;
    upper = C.upper;
    if (C.is_exact()) {
      kind = "exact";
      estimate = C.lower;
    } else {
      kind = "interval";
      estimate = c_optimize(norm, c.d, c.n, 32, c.seed).value;
    }
  } else {
    // an attained value is a lower bound; no upper bound is known
    kind = "estimate";
    estimate = c_optimize(norm, c.d, c.n, 32, c.seed).value;
    lower = estimate;
  }
  const double vlo = theoretical_norm(params, lower);
  const double vhi = std::isfinite(upper) ? theoretical_norm(params, upper) : kInfinity;
  std::ostringstream os;
  os << "d,sigma,n,norm,C_kind,C_lower,C_upper,C_estimate,lambda,value_lower,value_upper\n"
     << c.d << ',' << format_value(c.sigma) << ',' << c.n << ',' << norm.name() << ',' << kind << ','
     << format_value(lower) << ',' << format_value(upper) << ',' << format_value(estimate) << ','
     << format_value(params.lambda) << ',' << format_value(vlo) << ',' << format_value(vhi) << '\n';
  r.csv = os.str();
  json value = kind == "exact" ? json{{"exact", jvalue(vlo)}} : json{{"lower", jvalue(vlo)}, {"upper", jvalue(vhi)}};
  r.doc = {{"d", c.d},
           {"sigma", c.sigma},
           {"n", c.n},
           {"norm", norm.name()},
           {"C", {{"kind", kind}, {"lower", jvalue(lower)}, {"upper", jvalue(upper)}, {"estimate", jvalue(estimate)}}},
           {"lambda", jvalue(params.lambda)},
           {"value", value}};
  return r;
}

// ---- jvalue ----

Report cmd_jvalue(const RunConfig& c) {
  Report r;
  BallPoint z(static_cast<std::size_t>(c.d));
  z[0] = c.r;
  const IntegralResult num = j_numeric(c.c, c.t, z, c.rule.resolved(c.d));
  const double closed = c.c < 0.0 ? j_closed_form(c.c, c.t, c.d) : kInfinity;
  const bool within = num.value.real() <= closed + 3.0 * num.error_estimate;
  std::ostringstream os;
  os << "c,t,d,r,numeric,error,closed_form,within_bound,warning\n"
     << format_value(c.c) << ',' << format_value(c.t) << ',' << c.d << ',' << format_value(c.r) << ','
     << format_value(num.value.real()) << ',' << format_error(num.error_estimate) << ',' << format_value(closed) << ','
     << (within ? "true" : "false") << ',' << num.warning << '\n';
  r.csv = os.str();
  r.doc = {{"c", c.c},
           {"t", c.t},
           {"d", c.d},
           {"r", c.r},
           {"numeric", jvalue(num.value.real())},
           {"error", jerror(num.error_estimate)},
           {"closed_form", jvalue(closed)},
           {"within_bound", within},
           {"warning", num.warning}};
  return r;
}

// ---- converge ----

Report cmd_converge(const RunConfig& c) {
  Report r;
  const KernelParams params = params_of(c);
  const NormSpec norm = parse_norm(c.norm, c.d, c.n);
  if (!norm.dual_available()) throw ConfigError("norm '" + norm.name() + "' has no dual witness; converge needs one");
  std::vector<double> eps = c.epsilons.empty() ? default_epsilons() : c.epsilons;
  const double bound = c.route == Route::direct ? kDirectRouteMaxEps : kTransformedRouteMaxEps;
  for (double e : eps) {
    if (e > bound) {
      throw ConfigError("ε = " + format_value(e) + " exceeds the " + to_string(c.route) + " route bound " +
                        format_value(bound));
    }
  }
  const ExtremalConfig config = ExtremalConfig::make(params, norm, eps);
  const auto rows = convergence_table(config, c.rule.resolved(c.d), c.route);
  const double target = theoretical_norm(params, config.pairing_value);
  std::ostringstream os;
  os << "epsilon,value,error,ratio\n";
  json list = json::array();
  for (const ConvergenceRow& row : rows) {
    os << format_value(row.epsilon) << ',' << format_value(row.value) << ',' << format_error(row.error) << ','
       << format_value(row.ratio) << '\n';
    list.push_back({{"epsilon", jvalue(row.epsilon)},
                    {"value", jvalue(row.value)},
                    {"error", jerror(row.error)},
                    {"ratio", jvalue(row.ratio)}});
  }
  os << "theoretical_norm," << format_value(target) << ",,1\n";
  r.csv = os.str();
  r.doc = {{"d", c.d},       {"sigma", c.sigma},
           {"n", c.n},       {"norm", norm.name()},
           {"route", to_string(c.route)},
           {"rows", list},   {"theoretical_norm", jvalue(target)}};
  return r;
}

// ---- cp ----

Report cmd_cp(const RunConfig& c) {
  Report r;
  const NormSpec norm = parse_norm(c.norm, c.d, c.n);
  const SphereOptResult opt = c_optimize(norm, c.d, c.n, 32, c.seed);
  double lower = opt.value, upper = kInfinity;
  if (norm.is_p_norm()) {
    const Interval C = c_exact(norm, c.d, c.n);
    lower = C.lower;
    upper = C.upper;
  }
  const std::string p = norm.is_p_norm() ? format_value(norm.p()) : norm.name();
  std::ostringstream os;
  os << "d,n,p,lower,upper,estimate,converged\n"
     << c.d << ',' << c.n << ',' << p << ',' << format_value(lower) << ',' << format_value(upper) << ','
     << format_value(opt.value) << ',' << (opt.converged ? "true" : "false") << '\n';
  r.csv = os.str();
  r.doc = {{"d", c.d},
           {"n", c.n},
           {"p", norm.is_p_norm() ? jvalue(norm.p()) : json(norm.name())},
           {"lower", jvalue(lower)},
           {"upper", jvalue(upper)},
           {"estimate", jvalue(opt.value)},
           {"converged", opt.converged}};
  return r;
}

Report dispatch(const RunConfig& c) {
  if (c.command == "verify") return cmd_verify(c);
  if (c.command == "reference") return cmd_reference(c);
  if (c.command == "norm") return cmd_norm(c);
  if (c.command == "jvalue") return cmd_jvalue(c);
  if (c.command == "converge") return cmd_converge(c);
  if (c.command == "cp") return cmd_cp(c);
  throw ConfigError("unknown command '" + c.command + "'");
}

void add_common(CLI::App* sub, RunConfig& c, std::string& p_text, std::string& scheme, std::string& rule_json) {
  sub->add_option("--d", c.d, "complex dimension");
  sub->add_option("--sigma", c.sigma, "weight exponent, > -1");
  sub->add_option("--n", c.n, "derivative order");
  auto* p = sub->add_option("--p", p_text, "p-norm exponent (number or inf)");
  auto* nm = sub->add_option("--norm", c.norm, "l1, l2, linf, lp:<p>, custom:weighted-l2:w1,...");
  p->excludes(nm);
  sub->add_option("--eps", c.epsilons, "comma-separated epsilon schedule")->delimiter(',');
  sub->add_option("--samples", c.rule.samples, "Monte Carlo samples");
  sub->add_option("--radial-nodes", c.rule.radial_nodes, "product-rule radial nodes");
  sub->add_option("--sphere-nodes", c.rule.sphere_nodes, "product-rule nodes per angle");
  sub->add_option("--scheme", scheme, "product or monte-carlo");
  sub->add_option("--rule", rule_json, "JSON rule block");
  sub->add_option("--seed", c.seed, "seed for all randomized steps");
  sub->add_option("--format", c.format, "csv or json");
  sub->add_option("--out", c.out, "write output to PATH");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bergman projection: constants, verification and extremal convergence"};
  app.require_subcommand(1);
  RunConfig c;
  std::string p_text, scheme, rule_json, route = "transformed";
  bool samples_given = false;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"verify", "identity, normalization, transform and reproducing checks"},
      {"reference", "reference constants (l1, l2, liu, disc, perala, gradient)"},
      {"norm", "the constant C and the operator norm"},
      {"jvalue", "J_{c,t}(r e1) numeric vs closed form"},
      {"converge", "extremal convergence table"},
      {"cp", "C for a norm: closed form vs sphere optimization"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, c, p_text, scheme, rule_json);
    if (name == "verify") sub->add_option("--max-residual", c.max_residual, "algebraic residual tolerance");
    if (name == "reference") sub->add_option("--kind", c.kind, "l1, l2, liu, disc, perala, gradient");
    if (name == "jvalue") {
      sub->add_option("--c", c.c, "exponent shift c");
      sub->add_option("--t", c.t, "weight exponent t > -1");
      sub->add_option("--z", c.r, "z = r e1, 0 <= r < 1");
    }
    if (name == "converge") sub->add_option("--route", route, "transformed or direct");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    c.command = app.get_subcommands().front()->get_name();
    if (!p_text.empty()) c.norm = p_text;
    samples_given = app.get_subcommands().front()->count("--samples") > 0;
    if (!rule_json.empty()) {
      json block;
      try {
        block = json::parse(rule_json);
      } catch (const json::exception& e) {
        throw ConfigError(std::string("cannot parse --rule: ") + e.what());
      }
      const QuadratureRule before = c.rule;
      c.rule = rule_from_json(block, c.rule);
      c.rule_overridden = block.contains("scheme");
      auto* sub = app.get_subcommands().front();
      if (sub->count("--radial-nodes")) c.rule.radial_nodes = before.radial_nodes;
      if (sub->count("--sphere-nodes")) c.rule.sphere_nodes = before.sphere_nodes;
      if (samples_given) c.rule.samples = before.samples;
      if (sub->count("--seed")) c.rule.seed = before.seed;
    }
    if (!scheme.empty()) {
      try {
        c.rule.scheme = parse_scheme(scheme);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      c.rule_overridden = true;
    }
    if (!c.rule_overridden && c.d > 2) c.rule.scheme = Scheme::monte_carlo;
    if (app.get_subcommands().front()->count("--seed")) c.rule.seed = c.seed;
    if (route == "direct") {
      c.route = Route::direct;
    } else if (route != "transformed") {
      throw ConfigError("route must be transformed or direct");
    }
    c.validate();

    const Report report = dispatch(c);
    std::string text = c.format == "json" ? report.doc.dump(2) + "\n" : report.csv;
    if (c.out.empty()) {
      out << text;
    } else {
      std::ofstream file(c.out, std::ios::binary);
      if (!file) throw ConfigError("cannot open --out path '" + c.out + "'");
      file << text;
    }
    return report.status;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailed;
  }
}

}  // namespace bergman::cli
