#include "sasakilab/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <sasaki/sasaki.hpp>

#include "sasakilab/suites.hpp"

namespace sasakilab {

namespace {

using sasaki::Matrix;
using sasaki::Vector;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

nlohmann::json envelope(const std::string& command, const RunConfig& cfg) {
  return {{"schema", kSchemaId}, {"command", command}, {"config", to_json(cfg)}};
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string check_lines(const std::vector<CheckOutcome>& checks) {
  std::ostringstream os;
  for (const auto& c : checks) {
    const char* tag = c.met ? (c.expected == Expectation::kPass ? "PASS " : "XFAIL")
                            : (c.expected == Expectation::kPass ? "FAIL " : "XPASS");
    os << "  [" << tag << "] " << c.name << "  max=" << sci(c.max_residual)
       << " mean=" << sci(c.mean_residual) << " tol=" << sci(c.tolerance) << "\n";
  }
  return os.str();
}

std::string verdict_lines(const nlohmann::json& verdicts) {
  std::ostringstream os;
  for (const auto& [key, v] : verdicts.items()) {
    if (v.is_object() && v.contains("value")) {
      os << "  " << key << ": " << v["value"].get<std::string>() << " (expected "
         << v["expected"].get<std::string>() << ")\n";
    } else {
      os << "  " << key << ": " << v.dump() << "\n";
    }
  }
  return os.str();
}

struct DecompositionTarget {
  sasaki::IsometryAlgebra algebra;
  sasaki::LinearKillingField xi;
  sasaki::MetricField metric;
  int n;
};

DecompositionTarget decomposition_target(const RunConfig& cfg) {
  const std::string& e = cfg.example;
  if (e == "round" || e == "abelian") {
    const int dim = 2 * cfg.n + 2;
    auto alg = e == "round" ? sasaki::IsometryAlgebra::so(dim)
                            : sasaki::IsometryAlgebra::plane_rotations(dim);
    return {std::move(alg), sasaki::LinearKillingField(sasaki::complex_structure(dim)),
            sasaki::MetricField::round(), cfg.n};
  }
  if (e == "quaternionic") {
    const auto q = sasaki::build_quaternionic_frame(cfg.m);
    return {sasaki::IsometryAlgebra::so(4 * cfg.m + 4), sasaki::LinearKillingField(q.matrices[0]),
            q.metric, 2 * cfg.m + 1};
  }
  if (e == "hopf-lift") {
    const sasaki::HopfBundleData hopf;
    return {sasaki::IsometryAlgebra::so(4), hopf.xi, sasaki::MetricField::round(), 1};
  }
  if (e == "gF") {
    auto ex = sasaki::build_gF(cfg.n, cfg.c);
    return {sasaki::IsometryAlgebra(ex.invariance),
            sasaki::LinearKillingField(sasaki::complex_structure(2 * cfg.n + 2)), ex.metric,
            cfg.n};
  }
  if (e == "irregular") {
    auto ex = sasaki::build_irregular(cfg.n, sasaki::ExactReal::parse(cfg.a));
    return {sasaki::IsometryAlgebra(ex.invariance), sasaki::LinearKillingField(ex.data.T),
            ex.metric, cfg.n};
  }
  throw sasaki::DomainError("unknown example '" + e + "'");
}

CheckOutcome simple_check(std::string name, double residual, double tol) {
  CheckOutcome c;
  c.name = std::move(name);
  c.max_residual = residual;
  c.mean_residual = residual;
  c.tolerance = tol;
  c.pass = std::isfinite(residual) && residual < tol;
  c.met = c.pass;
  return c;
}

Matrix rotation_matrix(const std::vector<sasaki::ExactReal>& rates) {
  const auto k = static_cast<Eigen::Index>(rates.size());
  Matrix a = Matrix::Zero(2 * k, 2 * k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double r = rates[static_cast<std::size_t>(i)].value();
    a(2 * i + 1, 2 * i) = r;
    a(2 * i, 2 * i + 1) = -r;
  }
  return a;
}

void finish(CommandResult& r, const RunConfig& cfg, bool ok) {
  r.report["ok"] = ok;
  if (cfg.timestamp) r.report["timestamp"] = utc_now();
  r.exit_code = ok ? kExitOk : kExitFailed;
}

}  // namespace

CommandResult cmd_verify(const RunConfig& cfg) {
  const SuiteResult suite = run_suite(cfg);
  CommandResult r;
  r.report = envelope("verify", cfg);
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : suite.checks) checks.push_back(to_json(c));
  r.report["checks"] = std::move(checks);
  r.report["verdicts"] = suite.verdicts;
  finish(r, cfg, suite.ok());

  std::ostringstream os;
  os << "verify " << cfg.example << " (seed " << cfg.seed << ", " << cfg.samples << " samples)\n"
     << check_lines(suite.checks) << verdict_lines(suite.verdicts)
     << (suite.ok() ? "OK\n" : "FAILED\n");
  r.text = os.str();
  return r;
}

CommandResult cmd_decompose(const RunConfig& cfg) {
  if (cfg.samples < 1) throw sasaki::DomainError("--samples must be positive");
  const DecompositionTarget t = decomposition_target(cfg);
  const auto dec = sasaki::standard_decomposition(t.algebra, t.xi);
  const auto res = sasaki::decomposition_residuals(t.algebra, t.xi, dec);

  std::vector<CheckOutcome> checks;
  checks.push_back(simple_check("decomposition:zero-space", res.zero_space, 1e-10));
  checks.push_back(simple_check("decomposition:eigen-blocks", res.eigen_blocks, 1e-10));
  checks.push_back(simple_check("decomposition:reconstruction", res.reconstruction, 1e-10));
  checks.push_back(simple_check("decomposition:antisymmetry", res.antisymmetry, 1e-10));

  std::optional<sasaki::PerLemmaReport> lemma;
  if (!dec.pairs.empty()) {
    sasaki::FdOptions fd;
    fd.step = cfg.fd_step;
    lemma = sasaki::verify_per_lemma(t.metric, dec, t.xi,
                                     sasaki::sample_sphere(t.n, cfg.samples, cfg.seed), fd);
    for (const auto& f : lemma->fields) {
      CheckOutcome c = simple_check("lemma-per:" + f.name,
                                    std::max({f.max_orthogonality, f.max_bracket, f.max_eigen}),
                                    lemma->tolerance);
      c.metadata = {{"lambda", f.lambda},
                    {"orthogonality", f.max_orthogonality},
                    {"bracket", f.max_bracket},
                    {"eigen", f.max_eigen}};
      checks.push_back(std::move(c));
    }
  }
  const bool ok =
      std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.met; });

  CommandResult r;
  r.report = envelope("decompose", cfg);
  r.report["decomposition"] = sasaki::to_json(dec);
  r.report["algebra_dim"] = t.algebra.dim();
  nlohmann::json cj = nlohmann::json::array();
  for (const auto& c : checks) cj.push_back(to_json(c));
  r.report["checks"] = std::move(cj);
  r.report["verdicts"] = nlohmann::json::object();
  finish(r, cfg, ok);

  std::ostringstream os;
  os << "g0: " << dec.zero_space.size();
  for (const auto& b : dec.pairs) os << ", lambda=" << b.lambda << ": " << b.basis.size();
  os << "\n" << check_lines(checks) << (ok ? "OK\n" : "FAILED\n");
  r.text = os.str();
  return r;
}

CommandResult cmd_classify_flow(const RunConfig& cfg) {
  if (cfg.rates.empty()) throw sasaki::DomainError("classify-flow needs at least one rate");
  sasaki::RotationProfile profile;
  for (const auto& s : cfg.rates) profile.rates.push_back(sasaki::ExactReal::parse(s));
  const auto cls = sasaki::classify(profile);

  std::vector<CheckOutcome> checks;
  nlohmann::json probes = nlohmann::json::array();
  if (cfg.probe) {
    std::vector<sasaki::ExactReal> planes;
    for (const auto& r : profile.rates) planes.push_back(r.sign() < 0 ? -r : r);
    const Matrix a = rotation_matrix(planes);
    const auto dim = a.rows();
    const double two_pi = 2.0 * std::numbers::pi;

    if (cls.generic_period) {
      const double period = cls.generic_period->value();
      const auto probe = sasaki::numeric_orbit_probe(
          a, Vector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim))), 1.25 * period,
          1e-6);
      const double r =
          probe.first_return ? std::abs(*probe.first_return - period) : HUGE_VAL;
      checks.push_back(simple_check("probe:generic", r, 1e-3));
      probes.push_back({{"stratum", "generic"}, {"probe", sasaki::to_json(probe)}});
    } else {
      double slowest = HUGE_VAL;
      for (const auto& p : planes) slowest = std::min(slowest, p.value());
      const auto probe = sasaki::numeric_orbit_probe(
          a, Vector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim))),
          100.0 * two_pi / slowest, 1e-6);
      CheckOutcome c = simple_check("probe:generic-aperiodic",
                                    static_cast<double>(probe.return_times.size()), 0.5);
      c.metadata = {{"min_distance", probe.min_distance}};
      checks.push_back(std::move(c));
      probes.push_back({{"stratum", "generic"}, {"probe", sasaki::to_json(probe)}});
    }

    // Lower strata: points supported on the planes of a rank-one subset.
    std::vector<sasaki::ExactReal> distinct;
    for (const auto& p : planes) {
      if (std::find(distinct.begin(), distinct.end(), p) == distinct.end()) distinct.push_back(p);
    }
    if (distinct.size() <= 10) {
      const std::size_t subsets = std::size_t{1} << distinct.size();
      for (std::size_t mask = 1; mask + 1 < subsets; ++mask) {
        sasaki::RotationProfile sub;
        for (std::size_t k = 0; k < distinct.size(); ++k) {
          if (mask & (std::size_t{1} << k)) sub.rates.push_back(distinct[k]);
        }
        if (sasaki::rational_rank(sub.rates) != 1) continue;
        const double period = sasaki::classify(sub).generic_period->value();
        Vector p = Vector::Zero(dim);
        std::string label;
        for (std::size_t i = 0; i < planes.size(); ++i) {
          if (std::find(sub.rates.begin(), sub.rates.end(), planes[i]) == sub.rates.end()) continue;
          p(static_cast<Eigen::Index>(2 * i)) = 1.0;
          label += (label.empty() ? "" : ",") + std::to_string(i);
        }
        p.normalize();
        const auto probe = sasaki::numeric_orbit_probe(a, p, 1.25 * period, 1e-6);
        const double r =
            probe.first_return ? std::abs(*probe.first_return - period) : HUGE_VAL;
        checks.push_back(simple_check("probe:planes{" + label + "}", r, 1e-3));
        probes.push_back({{"stratum", label}, {"probe", sasaki::to_json(probe)}});
      }
    }
  }
  const bool ok =
      std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.met; });

  CommandResult r;
  r.report = envelope("classify-flow", cfg);
  nlohmann::json cj = nlohmann::json::array();
  for (const auto& c : checks) cj.push_back(to_json(c));
  r.report["checks"] = std::move(cj);
  r.report["verdicts"] = {{"flow", sasaki::to_json(cls)}};
  if (cfg.probe) r.report["probes"] = std::move(probes);
  finish(r, cfg, ok);

  std::ostringstream os;
  os << "verdict: " << sasaki::to_string(cls.verdict) << "\n";
  os << "generic period: "
     << (cls.generic_period ? cls.generic_period->to_string() + " (" +
                                  std::to_string(cls.generic_period->value()) + ")"
                            : std::string("none"))
     << "\n";
  os << "exceptional periods:";
  if (cls.exceptional_periods.empty()) os << " none";
  for (const auto& p : cls.exceptional_periods) {
    os << " " << p.to_string() << " (" << std::to_string(p.value()) << ")";
  }
  os << "\nclosure torus dim: " << cls.closure_torus_dim << "\n";
  if (!checks.empty()) os << check_lines(checks) << (ok ? "OK\n" : "FAILED\n");
  r.text = os.str();
  return r;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string format = "text";
  bool no_timestamp = false;

  CLI::App app{"Verification suites for Killing, Sasakian and 3-Sasakian structures on spheres",
               "sasakilab"};
  app.set_config("--config", "", "Flat key = value file mirroring the flags");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--example", cfg.example,
                 "round | quaternionic | hopf-lift | gF | irregular (decompose: also abelian)")
      ->capture_default_str();
  app.add_option("--n", cfg.n, "Sphere S^(2n+1)")->capture_default_str();
  app.add_option("--m", cfg.m, "Sphere S^(4m+3) for quaternionic")->capture_default_str();
  app.add_option("--c", cfg.c, "Deformation amplitude for gF")->capture_default_str();
  app.add_option("--a", cfg.a, "Irregularity parameter, exact (e.g. 1/3, irr:sqrt2m1)")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "Sampling seed")->capture_default_str();
  app.add_option("--samples", cfg.samples, "Sample points")->capture_default_str();
  app.add_option("--fd-step", cfg.fd_step, "Finite-difference step")->capture_default_str();
  app.add_option("--format", format, "text | json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_flag("--no-timestamp", no_timestamp, "Omit the report timestamp");

  auto* verify = app.add_subcommand("verify", "Run the check battery of an example");
  auto* decompose = app.add_subcommand("decompose", "Standard decomposition of the isometry algebra");
  auto* flow = app.add_subcommand("classify-flow", "Classify the flow of a linear Killing field");
  flow->add_option("rates", cfg.rates, "Rotation rates, one per 2-plane")->required();
  flow->add_flag("--probe", cfg.probe, "Cross-check periods with a numeric orbit probe");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  cfg.format = format == "json" ? OutputFormat::kJson : OutputFormat::kText;
  cfg.timestamp = !no_timestamp;

  std::function<CommandResult(const RunConfig&)> run;
  if (*verify) run = cmd_verify;
  if (*decompose) run = cmd_decompose;
  if (*flow) run = cmd_classify_flow;

  CommandResult result;
  try {
    result = run(cfg);
  } catch (const sasaki::DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const sasaki::UnsupportedError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const sasaki::PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const sasaki::Error& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
  if (cfg.format == OutputFormat::kJson) {
    out << result.report.dump(2) << "\n";
  } else {
    out << result.text;
  }
  return result.exit_code;
}

}  // namespace sasakilab
