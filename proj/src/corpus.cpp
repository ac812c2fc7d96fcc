#include "curvlab/corpus.hpp"

#include "curvlab/document.hpp"
#include "curvlab/sampling.hpp"

namespace curvlab {

using nlohmann::json;

namespace {

json base_document(int n, std::uint64_t seed, json object, json analysis) {
  return {
      {"format_version", kFormatVersion},
      {"dimension", n},
      {"seed", seed},
      {"object", std::move(object)},
      {"analysis", std::move(analysis)},
  };
}

}  // namespace

std::vector<CorpusEntry> builtin_corpus(std::uint64_t seed) {
  std::vector<CorpusEntry> out;

  for (int n = 3; n <= 6; ++n)
    out.push_back({"constant_curvature_n" + std::to_string(n),
                   base_document(n, seed, {{"constant_curvature", {{"kappa", 1.0}}}},
                                 {{"m", {1, (n + 1) / 2}},
                                  {"p", json::array({1})},
                                  {"hypotheses", {{"complete_noncompact", true}}}})});

  out.push_back({"unit_sphere_hypersurface",
                 base_document(4, seed, {{"hypersurface", {{"lambdas", {1.0, 1.0, 1.0, 1.0}}, {"K", 0.0}}}},
                               {{"m", {1, 2}}, {"p", {1, 2}}, {"closed", true}})});

  out.push_back({"hypersurface_boundary",
                 base_document(3, seed, {{"hypersurface", {{"lambdas", {1.0, 1.0, -1.0}}, {"K", 1.0}}}},
                               {{"m", {1, 2}}, {"p", json::array({1})}, {"closed", true}})});

  // Totally umbilic sphere with |H| = 1 in flat R^5.
  out.push_back({"umbilic_flat_ambient",
                 base_document(4, seed, {{"constant_curvature", {{"kappa", 1.0}}}},
                               {{"p", {1, 2}},
                                {"closed", true},
                                {"umbilic", {{"h_norm", 1.0}, {"ambient_mu", std::vector<double>(10, 0.0)}}}})});

  for (int n = 3; n <= 6; ++n) {
    const SpaceContext ctx(n);
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(n)));
    const CurvatureTensor rm = random_curvature(ctx, rng);
    const int l = n / 2;
    std::vector<double> coeffs(binomial(n, l));
    for (double& v : coeffs) v = rng.uniform();
    const auto comps = rm.tensor().components();
    json doc = base_document(n, seed, {{"curvature_tensor", std::vector<double>(comps.begin(), comps.end())}},
                             {{"m", {1, (n + 1) / 2, n - 1}}, {"p", json::array({1})}});
    doc["form"] = {{"degree", l}, {"increasing", coeffs}};
    out.push_back({"random_bianchi_n" + std::to_string(n), std::move(doc)});
  }

  {
    const int n = 4;
    const int N = n * (n - 1) / 2;
    json rows = json::array();
    for (int a = 0; a < N; ++a) {
      std::vector<double> row(static_cast<std::size_t>(N), 0.0);
      row[static_cast<std::size_t>(a)] = 1.0;
      rows.push_back(row);
    }
    out.push_back({"ricci_flat_identity_operator",
                   base_document(n, seed, {{"operator_matrix", rows}},
                                 {{"m", json::array({1})},
                                  {"kappa", 0.0},
                                  {"weyl", "generic"},
                                  {"hypotheses",
                                   {{"ricci_flat", true}, {"complete_noncompact", true}, {"connected", true}}}})});
  }
  return out;
}

std::vector<CorpusOutcome> run_corpus(std::uint64_t seed) {
  std::vector<CorpusOutcome> out;
  for (const auto& entry : builtin_corpus(seed)) {
    CorpusOutcome o{entry.name, analyze(document_from_json(entry.document)), true};
    for (const auto& check : o.report["identity_checks"])
      if (!check["pass"].get<bool>()) o.identities_pass = false;
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace curvlab
