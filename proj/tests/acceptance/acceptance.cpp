// Acceptance harness: one PASS/FAIL line per criterion.
//   acceptance              run all criteria
//   acceptance --criterion N

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <sasaki/sasaki.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "sasakilab/commands.hpp"
#include "sasakilab/suites.hpp"

using namespace sasaki;
using sasakilab::CheckOutcome;
using sasakilab::RunConfig;
using sasakilab::SuiteResult;

namespace {

constexpr int kSamples = 200;
constexpr std::uint64_t kSeed = 42;

// Collects failed conditions for one criterion.
class Ledger {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  std::string summary() const {
    std::ostringstream s;
    for (std::size_t i = 0; i < failures_.size(); ++i) s << (i ? "; " : "") << failures_[i];
    return s.str();
  }

 private:
  std::vector<std::string> failures_;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

RunConfig config(const std::string& example) {
  RunConfig cfg;
  cfg.example = example;
  cfg.samples = kSamples;
  cfg.seed = kSeed;
  cfg.timestamp = false;
  return cfg;
}

const CheckOutcome* find(const SuiteResult& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void require_pass_below(Ledger& l, const SuiteResult& r, const std::string& name, double bound,
                        const std::string& tag = {}) {
  const CheckOutcome* c = find(r, name);
  if (c == nullptr) {
    l.require(false, tag + name + " missing");
    return;
  }
  l.require(c->pass && c->max_residual < bound,
            tag + name + " residual " + fmt(c->max_residual) + " (bound " + fmt(bound) + ")");
}

bool criterion_1(Ledger& l) {
  for (int n = 1; n <= 3; ++n) {
    RunConfig cfg = config("round");
    cfg.n = n;
    const SuiteResult r = sasakilab::run_suite(cfg);
    const std::string tag = "n=" + std::to_string(n) + " ";
    for (const char* name : {"killing:xi", "unit-length", "sasakian", "k-contact", "nijenhuis"}) {
      require_pass_below(l, r, name, 1e-5, tag);
    }
  }
  return l.ok();
}

bool criterion_2(Ledger& l) {
  struct Case {
    int n;
    int g0;
    int g2;
  };
  for (const Case c : {Case{1, 4, 2}, Case{2, 9, 6}}) {
    const int dim = 2 * c.n + 2;
    const auto alg = IsometryAlgebra::so(dim);
    const LinearKillingField xi(complex_structure(dim));
    const auto dec = standard_decomposition(alg, xi);
    const std::string tag = "S^" + std::to_string(2 * c.n + 1) + " ";
    l.require(static_cast<int>(dec.zero_space.size()) == c.g0, tag + "dim g0");
    l.require(dec.pairs.size() == 1, tag + "number of eigenvalues");
    if (dec.pairs.size() == 1) {
      l.require(std::abs(dec.pairs[0].lambda - 2.0) < 1e-8, tag + "lambda");
      l.require(static_cast<int>(dec.pairs[0].basis.size()) == c.g2, tag + "dim g_lambda");
    }
    // Independent oracle: complex spectrum of ad_xi in a plain basis of so(dim).
    std::vector<Matrix> basis;
    for (int a = 0; a < dim; ++a) {
      for (int b = a + 1; b < dim; ++b) basis.push_back(plane_generator(dim, a, b));
    }
    const auto spectrum = oracle::ad_spectrum(basis, xi.matrix());
    l.require(spectrum.zero_dim == c.g0, tag + "oracle dim g0");
    l.require(spectrum.blocks.size() == 1 && spectrum.blocks.count(2000000) == 1 &&
                  spectrum.blocks.at(2000000) == c.g2,
              tag + "oracle eigenvalue blocks");
  }
  return l.ok();
}

bool criterion_3(Ledger& l) {
  for (int n : {1, 2}) {
    const int dim = 2 * n + 2;
    const auto ex = build_round_sasakian(n);
    const LinearKillingField xi(complex_structure(dim));
    const auto dec = standard_decomposition(IsometryAlgebra::so(dim), xi);
    const auto s = sample_sphere(n, kSamples, kSeed);
    const auto rep = verify_per_lemma(ex.metric, dec, xi, s);
    const std::string tag = "S^" + std::to_string(2 * n + 1) + " ";
    std::size_t expected = 0;
    for (const auto& b : dec.pairs) expected += b.basis.size();
    l.require(!rep.fields.empty() && rep.fields.size() == expected, tag + "field count");
    for (const auto& f : rep.fields) {
      l.require(f.max_orthogonality < 1e-6, tag + f.name + " g(A,xi) " + fmt(f.max_orthogonality));
      l.require(f.max_bracket < 1e-6, tag + f.name + " [xi,A]+A-|dxi " + fmt(f.max_bracket));
      l.require(f.max_eigen < 1e-6, tag + f.name + " (dxi o dxi)A+4A " + fmt(f.max_eigen));
      l.require(std::abs(f.lambda - 2.0) < 1e-8, tag + f.name + " lambda");
    }
  }
  return l.ok();
}

bool criterion_4(Ledger& l) {
  RunConfig cfg = config("gF");
  cfg.n = 3;
  cfg.c = 0.3;
  const SuiteResult r = sasakilab::run_suite(cfg);
  require_pass_below(l, r, "k-contact", 1e-5);
  const CheckOutcome* sas = find(r, "sasakian");
  l.require(sas != nullptr && !sas->pass && sas->max_residual > 1e-2 &&
                sas->metadata.value("samples_in_support", 0) > 0,
            "sasakian must fail on supp F with residual > 1e-2");
  const CheckOutcome* nij = find(r, "nijenhuis");
  l.require(nij != nullptr && !nij->pass && nij->max_residual > 1e-3,
            "nijenhuis must fail with residual > 1e-3");
  int invariance = 0;
  for (const auto& c : r.checks) {
    if (c.name.rfind("killing:invariance", 0) == 0) {
      ++invariance;
      l.require(c.pass, c.name + " residual " + fmt(c.max_residual));
    }
  }
  // so(V1) on R^4 plus R xi.
  l.require(invariance == 7, "invariance fields " + std::to_string(invariance));
  require_pass_below(l, r, "killing:xi", 1e-5);
  require_pass_below(l, r, "dxi-agreement", 1e-8);
  return l.ok();
}

bool criterion_5(Ledger& l) {
  for (int m : {0, 1}) {
    RunConfig cfg = config("quaternionic");
    cfg.m = m;
    const SuiteResult r = sasakilab::run_suite(cfg);
    const std::string tag = "S^" + std::to_string(4 * m + 3) + " ";
    require_pass_below(l, r, "3-sasakian/orthonormality", 1e-5, tag);
    // The defining relations, read literally.
    require_pass_below(l, r, "3-sasakian/relations-plus-nabla", 1e-5, tag);
    require_pass_below(l, r, "ac-identities", 1e-5, tag);
    require_pass_below(l, r, "bracket-identity", 1e-12, tag);
    require_pass_below(l, r, "fr-lemma/xi3", 1e-6, tag);
    const auto& split = r.verdicts["split_d"];
    l.require(split["value"] == "0", tag + "dim D+ = " + split["value"].get<std::string>());
  }
  return l.ok();
}

bool criterion_6(Ledger& l) {
  const auto f = fixture::split_fixture(kSamples, kSeed);
  const auto split = split_D(f.metric, f.xi[0], f.xi[1], f.xi[2], f.samples);
  l.require(split.constant_dims && split.dim_plus > 0 && split.dim_minus > 0,
            "fixture must split with both parts nonzero");
  const MetricField h = sign_flip_metric(f.metric, split);
  double worst = 0.0;
  for (const auto& sp : f.samples.points) {
    const Vector& p = sp.coords();
    const Matrix g = f.metric.gram(p);
    const Matrix hg = h.gram(p);
    const Matrix d = distribution_d(f.metric, p, f.xi[0], f.xi[1], f.xi[2]);
    const auto phi = contact_endomorphisms(f.metric, f.xi[0], f.xi[1], f.xi[2], p);
    const Matrix psi1 = reassociate_endomorphism(hg, g, phi[0]);
    const Matrix psi2 = reassociate_endomorphism(hg, g, phi[1]);
    const Matrix psi3 = reassociate_endomorphism(hg, g, phi[2]);
    worst = std::max(worst, quaternionic_residual(g, d, psi1, psi2, psi3));
  }
  l.require(worst < 1e-5, "quaternionic residual " + fmt(worst));
  return l.ok();
}

bool criterion_7(Ledger& l) {
  RunConfig cfg = config("irregular");
  cfg.a = "irr:sqrt2m1";
  const SuiteResult r = sasakilab::run_suite(cfg);
  require_pass_below(l, r, "sasakian", 1e-5);
  require_pass_below(l, r, "nabla-T-on-Q", 1e-5);
  const CheckOutcome* cen = find(r, "centralizer");
  l.require(cen != nullptr && cen->pass, "centralizer");
  l.require(r.verdicts["flow"]["value"] == "irregular", "flow verdict");
  l.require(r.verdicts["closure_torus_dim"]["value"] == "2", "closure torus dim");
  int invariance = 0;
  for (const auto& c : r.checks) {
    if (c.name.rfind("killing:invariance", 0) == 0) {
      ++invariance;
      l.require(c.pass, c.name + " residual " + fmt(c.max_residual));
    }
  }
  l.require(invariance > 0, "no invariance fields");
  // Independent recomputation of the flow verdict from the matrix spectrum.
  const auto ex = build_irregular(cfg.n, ExactReal::parse(cfg.a));
  const auto profile = rotation_profile(LinearKillingField(ex.data.T),
                                        rates_of_j0_plus_aj1(cfg.n, ex.data.a));
  const auto cls = classify(profile);
  l.require(cls.verdict == FlowVerdict::kIrregular && cls.closure_torus_dim == 2,
            "direct classification");
  return l.ok();
}

Matrix rates_matrix(const std::vector<double>& rates) {
  const auto k = static_cast<Eigen::Index>(rates.size());
  Matrix a = Matrix::Zero(2 * k, 2 * k);
  for (Eigen::Index i = 0; i < k; ++i) {
    a(2 * i + 1, 2 * i) = rates[static_cast<std::size_t>(i)];
    a(2 * i, 2 * i + 1) = -rates[static_cast<std::size_t>(i)];
  }
  return a;
}

RotationProfile profile_of(std::initializer_list<const char*> rates) {
  RotationProfile p;
  for (const char* r : rates) p.rates.push_back(ExactReal::parse(r));
  return p;
}

bool criterion_8(Ledger& l) {
  const double two_pi = 2.0 * std::numbers::pi;
  const auto regular = classify(profile_of({"1", "1", "1"}));
  l.require(regular.verdict == FlowVerdict::kRegular, "(1,1,1) regular");
  const auto quasi = classify(profile_of({"1", "2"}));
  l.require(quasi.verdict == FlowVerdict::kQuasiRegular, "(1,2) quasi-regular");
  l.require(quasi.generic_period && std::abs(quasi.generic_period->value() - two_pi) < 1e-12 &&
                quasi.exceptional_periods.size() == 1 &&
                std::abs(quasi.exceptional_periods[0].value() - std::numbers::pi) < 1e-12,
            "(1,2) periods {2pi, pi}");
  const auto irr = classify(profile_of({"1", "irr:sqrt2m1"}));
  l.require(irr.verdict == FlowVerdict::kIrregular, "(1, irrational) irregular");

  // Numeric probe on the rational cases, within the probe grid step.
  const double step = 1e-3;
  auto probe_matches = [&](const Matrix& a, const Vector& p, double expected, const std::string& what) {
    const auto probe = numeric_orbit_probe(a, p, 1.25 * expected, 1e-6, step);
    l.require(probe.first_return && std::abs(*probe.first_return - expected) <= step,
              what + " probe");
  };
  probe_matches(rates_matrix({1, 1, 1}), Vector::Constant(6, 1.0 / std::sqrt(6.0)), two_pi,
                "(1,1,1) generic");
  const Matrix a12 = rates_matrix({1, 2});
  probe_matches(a12, Vector::Constant(4, 0.5), two_pi, "(1,2) generic");
  probe_matches(a12, Vector::Unit(4, 2), std::numbers::pi, "(1,2) stratum");
  probe_matches(a12, Vector::Unit(4, 0), two_pi, "(1,2) slow stratum");
  return l.ok();
}

bool criterion_9(Ledger& l) {
  const SuiteResult r = sasakilab::run_suite(config("hopf-lift"));
  require_pass_below(l, r, "killing:lift", 1e-5);
  require_pass_below(l, r, "path-independence", 1e-6);
  require_pass_below(l, r, "lift-projection", 1e-6);
  const CheckOutcome* ker = find(r, "exact-sequence");
  l.require(ker != nullptr && ker->pass && ker->metadata.value("kernel_dim", -1) == 1,
            "kernel of A -> X is R xi");
  return l.ok();
}

bool criterion_10(Ledger& l) {
  for (const auto& example : sasakilab::kExamples) {
    const RunConfig cfg = config(example);
    const auto a = sasakilab::cmd_verify(cfg);
    const auto b = sasakilab::cmd_verify(cfg);
    l.require(!a.report.contains("timestamp"), example + " timestamp present");
    l.require(a.report.dump(2) == b.report.dump(2), example + " reports differ");
  }
  RunConfig flow = config("round");
  flow.rates = {"1", "2", "irr:sqrt3"};
  flow.probe = true;
  l.require(sasakilab::cmd_classify_flow(flow).report.dump(2) ==
                sasakilab::cmd_classify_flow(flow).report.dump(2),
            "classify-flow reports differ");
  RunConfig dec = config("round");
  dec.n = 2;
  l.require(sasakilab::cmd_decompose(dec).report.dump(2) ==
                sasakilab::cmd_decompose(dec).report.dump(2),
            "decompose reports differ");
  return l.ok();
}

struct Criterion {
  int id;
  const char* title;
  std::function<bool(Ledger&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "round-sphere Sasakian suite, n = 1..3", criterion_1},
      {2, "standard decomposition (4,2,2) and (9,2,6) vs oracle", criterion_2},
      {3, "per-field lemma on g_2", criterion_3},
      {4, "K-contact non-Sasakian g_F (n = 3, c = 0.3)", criterion_4},
      {5, "3-Sasakian suite on S^3 and S^7", criterion_5},
      {6, "sign-flip fixture is quaternionic on D", criterion_6},
      {7, "irregular Sasakian suite (a = irr:sqrt2m1)", criterion_7},
      {8, "flow classifier and orbit probe", criterion_8},
      {9, "Hopf lift of a base rotation", criterion_9},
      {10, "byte-identical reports across reruns", criterion_10},
  };
  return all;
}

bool run_one(const Criterion& c) {
  Ledger l;
  bool ok = false;
  try {
    ok = c.run(l);
  } catch (const std::exception& e) {
    l.require(false, std::string("exception: ") + e.what());
  }
  ok = ok && l.ok();
  std::printf("criterion %2d: %s  %s", c.id, ok ? "PASS" : "FAIL", c.title);
  if (!ok) std::printf("  [%s]", l.summary().c_str());
  std::printf("\n");
  std::fflush(stdout);
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  bool all_ok = true;
  bool ran = false;
  for (const auto& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    ran = true;
    all_ok = run_one(c) && all_ok;
  }
  if (!ran) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return all_ok ? 0 : 1;
}
