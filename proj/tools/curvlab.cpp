#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>

#include "curvlab/corpus.hpp"
#include "curvlab/document.hpp"
#include "curvlab/geometry_decisions.hpp"
#include "curvlab/verification.hpp"

namespace {

using nlohmann::json;
using namespace curvlab;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_text(const std::optional<std::string>& path, const std::string& text) {
  if (!path) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + *path + "'");
  out << text;
}

// analyze --------------------------------------------------------------------

struct AnalyzeArgs {
  std::optional<std::string> input;
  std::optional<std::string> output;
  std::optional<std::uint64_t> seed;
  std::vector<double> lambdas;
  std::optional<double> ambient_k;
  std::vector<int> p;
  std::optional<double> kappa;
  std::optional<double> q;
  std::optional<double> c;
  std::optional<std::string> kato;
};

int run_analyze(const AnalyzeArgs& a) {
  json doc;
  if (a.input) {
    if (!a.lambdas.empty()) throw UsageError("--input and --lambdas are mutually exclusive");
    std::ifstream in(*a.input, std::ios::binary);
    if (!in) throw Error(ErrorKind::parse, "cannot open '" + *a.input + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    doc = parse_document(text).source;
  } else if (!a.lambdas.empty()) {
    doc = {{"format_version", kFormatVersion},
           {"dimension", static_cast<int>(a.lambdas.size())},
           {"object", {{"hypersurface", {{"lambdas", a.lambdas}, {"K", a.ambient_k.value_or(0.0)}}}}},
           {"analysis", {{"closed", true}}}};
  } else {
    throw UsageError("analyze needs --input PATH or --lambdas CSV");
  }

  // Command-line values override the document; the echo shows the result.
  if (a.seed) doc["seed"] = *a.seed;
  if (!doc.contains("analysis")) doc["analysis"] = json::object();
  json& analysis = doc["analysis"];
  if (!a.p.empty()) analysis["p"] = a.p;
  if (a.kappa) analysis["kappa"] = *a.kappa;
  if (a.q) analysis["Q"] = *a.q;
  if (a.c) analysis["c"] = *a.c;
  if (a.kato) analysis["kato"] = *a.kato;

  const InputDocument parsed = document_from_json(doc);
  write_text(a.output, render(analyze(parsed)));
  return kExitOk;
}

// verify ---------------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  int n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::optional<std::string> output;
};

int run_verify(const VerifyArgs& a) {
  std::vector<std::string> suites;
  if (a.suite == "all") {
    suites = suite_names();
  } else {
    bool known = false;
    for (const auto& s : suite_names()) known = known || s == a.suite;
    if (!known) throw UsageError("unknown suite '" + a.suite + "'");
    suites.push_back(a.suite);
  }
  if (a.n < kMinDimension || a.n > kMaxDimension)
    throw UsageError(fmt::format("--n must lie in [{}, {}]", kMinDimension, kMaxDimension));
  if (a.trials < 1) throw UsageError("--trials must be positive");

  bool all_pass = true;
  json summary = json::array();
  for (const auto& name : suites) {
    if (a.n < suite_min_dimension(name)) {
      if (a.suite != "all")
        throw UsageError(fmt::format("suite {} needs n >= {}", name, suite_min_dimension(name)));
      fmt::print("{:<20} n={} skipped (needs n >= {})\n", name, a.n, suite_min_dimension(name));
      continue;
    }
    const SuiteResult r = run_suite(name, a.n, a.trials, a.seed);
    all_pass = all_pass && r.passed();
    fmt::print("{:<20} n={} trials={} seed={} max_residual={:.3e} tolerance={:.0e} violations={} {}\n",
               r.name, r.n, r.trials, r.seed, r.max_residual, r.tolerance, r.violations,
               r.passed() ? "PASS" : "FAIL");
    for (const auto& note : r.notes) fmt::print("  note: {}\n", note);
    summary.push_back({{"suite", r.name},
                       {"n", r.n},
                       {"trials", r.trials},
                       {"seed", r.seed},
                       {"max_residual", r.max_residual},
                       {"tolerance", r.tolerance},
                       {"violations", r.violations},
                       {"pass", r.passed()},
                       {"notes", r.notes}});
  }
  if (a.output) write_text(a.output, render(summary));
  return all_pass ? kExitOk : kExitFailure;
}

// thresholds -----------------------------------------------------------------

struct ThresholdArgs {
  std::optional<int> n;
  double q = 2.0;
  double c = 1.0;
  std::string kato = "generic";
  std::optional<int> ell;
  std::optional<std::string> weyl;
};

int run_thresholds(const ThresholdArgs& a) {
  KatoConstant kato = KatoConstant::generic();
  if (a.kato == "form") {
    if (!a.n || !a.ell) throw UsageError("--kato form needs --n and --ell");
    kato = KatoConstant::form(*a.ell, *a.n);
  } else if (a.kato == "einstein-weyl") {
    if (!a.n) throw UsageError("--kato einstein-weyl needs --n");
    kato = KatoConstant::einstein_weyl(*a.n);
  } else if (a.kato == "zero-scalar") {
    kato = KatoConstant::zero_scalar_rm();
  }

  // Everything is evaluated before printing so an out-of-range argument
  // produces no partial table.
  std::vector<std::string> rows;
  const auto row = [&](std::string_view quantity, double value, std::string_view formula, std::string inputs) {
    rows.push_back(fmt::format("{:<8} {:<10.6g} {:<22.17g} {:<44} {}", quantity, value, value, formula, inputs));
  };
  row("kappa", kappa_threshold(a.q, a.c, kato), "4(Q-1+a)/(c Q^2)",
      fmt::format("Q={} c={} kato={}", a.q, a.c, kato.describe()));
  if (a.ell) {
    if (!a.n) throw UsageError("--ell needs --n");
    row("form", form_threshold(*a.n, *a.ell, a.q), "4(Q-1+1/max(ell,n-ell))/(ell(n-ell) Q^2)",
        fmt::format("n={} ell={} Q={}", *a.n, *a.ell, a.q));
  }
  if (a.weyl) {
    if (!a.n) throw UsageError("--weyl needs --n");
    const WeylVariant v = *a.weyl == "einstein" ? WeylVariant::einstein : WeylVariant::generic;
    row("weyl", weyl_threshold(*a.n, a.q, v),
        v == WeylVariant::generic ? "2(Q-1)/((n-1) Q^2)" : "2(Q-1+2/(n-1))/((n-1) Q^2)",
        fmt::format("n={} Q={} variant={}", *a.n, a.q, to_string(v)));
  }
  fmt::print("{:<8} {:<10} {:<22} {:<44} {}\n", "quantity", "value", "exact", "formula", "inputs");
  for (const auto& r : rows) fmt::print("{}\n", r);
  return kExitOk;
}

// corpus ---------------------------------------------------------------------

int run_corpus_cmd(std::uint64_t seed, const std::optional<std::string>& output) {
  bool all_pass = true;
  json reports = json::array();
  for (const auto& o : run_corpus(seed)) {
    all_pass = all_pass && o.identities_pass;
    std::string verdicts;
    for (const auto& v : o.report["verdicts"]) {
      if (!verdicts.empty()) verdicts += ", ";
      verdicts += v["theorem"].get<std::string>() + "=" + v["conclusion"].get<std::string>();
      if (v["marginal"].get<bool>()) verdicts += "(marginal)";
    }
    const auto& ev = o.report["spectrum"]["eigenvalues"];
    fmt::print("{:<30} identities={} mu_1={:.6g} mu_N={:.6g} verdicts: {}\n", o.name,
               o.identities_pass ? "PASS" : "FAIL", ev.front().get<double>(), ev.back().get<double>(),
               verdicts);
    reports.push_back({{"name", o.name}, {"report", o.report}});
  }
  if (output) write_text(output, render(reports));
  return all_pass ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Algebraic curvature tensors, curvature-operator spectra and vanishing criteria"};
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze", "Analyze a curvature document and emit a JSON report");
  analyze_cmd->add_option("--input", analyze_args.input, "Input document (JSON)");
  analyze_cmd->add_option("--output", analyze_args.output, "Report path (default: stdout)");
  analyze_cmd->add_option("--seed", analyze_args.seed, "Seed for sampled checks (overrides the document)");
  analyze_cmd->add_option("--lambdas", analyze_args.lambdas, "Principal curvatures of a hypersurface")
      ->delimiter(',');
  analyze_cmd->add_option("--ambient-k", analyze_args.ambient_k, "Ambient sectional curvature");
  analyze_cmd->add_option("--p", analyze_args.p, "Degree bound(s) p for form and Betti verdicts");
  analyze_cmd->add_option("--kappa", analyze_args.kappa, "Weighted curvature bound kappa");
  analyze_cmd->add_option("--q", analyze_args.q, "Integrability exponent Q");
  analyze_cmd->add_option("--c", analyze_args.c, "Lichnerowicz constant c");
  analyze_cmd->add_option("--kato", analyze_args.kato, "Kato variant")
      ->check(CLI::IsMember({"generic", "form", "einstein-weyl", "zero-scalar"}));

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Run seeded randomized identity suites");
  verify_cmd->add_option("--suite", verify_args.suite, "Suite name or 'all'")->required();
  verify_cmd->add_option("--n", verify_args.n, "Dimension")->required();
  verify_cmd->add_option("--trials", verify_args.trials, "Trials per case")->required();
  verify_cmd->add_option("--seed", verify_args.seed, "Seed")->required();
  verify_cmd->add_option("--output", verify_args.output, "Also write a JSON summary");

  ThresholdArgs threshold_args;
  auto* thresholds_cmd = app.add_subcommand("thresholds", "Print kappa thresholds");
  thresholds_cmd->add_option("--n", threshold_args.n, "Dimension");
  thresholds_cmd->add_option("--q", threshold_args.q, "Integrability exponent Q (default 2)");
  thresholds_cmd->add_option("--c", threshold_args.c, "Lichnerowicz constant c (default 1)");
  thresholds_cmd->add_option("--kato", threshold_args.kato, "Kato variant")
      ->check(CLI::IsMember({"generic", "form", "einstein-weyl", "zero-scalar"}));
  thresholds_cmd->add_option("--ell", threshold_args.ell, "Form degree");
  thresholds_cmd->add_option("--weyl", threshold_args.weyl, "Weyl variant")
      ->check(CLI::IsMember({"generic", "einstein"}));

  std::uint64_t corpus_seed = 0;
  std::optional<std::string> corpus_output;
  auto* corpus_cmd = app.add_subcommand("corpus", "Run the built-in example corpus");
  corpus_cmd->add_option("--seed", corpus_seed, "Seed for the random tensors (default 0)");
  corpus_cmd->add_option("--output", corpus_output, "Write all reports as a JSON array");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*analyze_cmd) return run_analyze(analyze_args);
    if (*verify_cmd) return run_verify(verify_args);
    if (*thresholds_cmd) return run_thresholds(threshold_args);
    if (*corpus_cmd) return run_corpus_cmd(corpus_seed, corpus_output);
  } catch (const UsageError& e) {
    fmt::print(stderr, "usage error: {}\n", e.what());
    return kExitUsage;
  } catch (const Error& e) {
    fmt::print(stderr, "{}\n", e.what());
    // Out-of-range command arguments are usage errors; bad documents fail validation.
    const bool usage = !*analyze_cmd && (e.kind() == ErrorKind::invalid_argument ||
                                         e.kind() == ErrorKind::hypothesis_violation ||
                                         e.kind() == ErrorKind::unsupported_dimension);
    return usage ? kExitUsage : kExitFailure;
  }
  return kExitUsage;
}
