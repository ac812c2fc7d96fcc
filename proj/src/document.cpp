#include "curvlab/document.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "curvlab/spectral_conditions.hpp"
#include "curvlab/verification.hpp"

namespace curvlab {

using nlohmann::json;

std::string_view to_string(ObjectKind k) noexcept {
  switch (k) {
    case ObjectKind::curvature_tensor: return "curvature_tensor";
    case ObjectKind::constant_curvature: return "constant_curvature";
    case ObjectKind::kulkarni_nomizu: return "kulkarni_nomizu";
    case ObjectKind::hypersurface: return "hypersurface";
    case ObjectKind::operator_matrix: return "operator_matrix";
  }
  return "curvature_tensor";
}

namespace {

// A JSON value together with its path, for diagnostics.
class Field {
 public:
  Field(const json& value, std::string path) : v_(value), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::parse, "field '" + path_ + "': " + msg);
  }

  const std::string& path() const { return path_; }
  const json& raw() const { return v_; }

  void expect_object(std::initializer_list<std::string_view> allowed) const {
    if (!v_.is_object()) fail("expected an object");
    const std::set<std::string_view> ok(allowed);
    for (const auto& [key, _] : v_.items())
      if (!ok.count(key)) fail("unknown key '" + key + "'");
  }

  bool has(const std::string& key) const { return v_.contains(key); }

  Field at(const std::string& key) const {
    if (!v_.contains(key)) fail("missing required key '" + key + "'");
    return Field(v_.at(key), path_ + "." + key);
  }

  Field index(std::size_t i) const { return Field(v_.at(i), path_ + "[" + std::to_string(i) + "]"); }

  double number() const {
    if (!v_.is_number()) fail("expected a number");
    const double d = v_.get<double>();
    if (!std::isfinite(d)) fail("number is not finite");
    return d;
  }

  int integer() const {
    if (!v_.is_number_integer()) fail("expected an integer");
    return v_.get<int>();
  }

  std::uint64_t unsigned_integer() const {
    if (!v_.is_number_unsigned()) fail("expected a nonnegative integer");
    return v_.get<std::uint64_t>();
  }

  bool boolean() const {
    if (!v_.is_boolean()) fail("expected true or false");
    return v_.get<bool>();
  }

  std::string string() const {
    if (!v_.is_string()) fail("expected a string");
    return v_.get<std::string>();
  }

  std::size_t array_size() const {
    if (!v_.is_array()) fail("expected an array");
    return v_.size();
  }

  std::vector<double> numbers(std::optional<std::size_t> expected = std::nullopt) const {
    const std::size_t size = array_size();
    if (expected && size != *expected)
      fail("expected " + std::to_string(*expected) + " entries, got " + std::to_string(size));
    std::vector<double> out;
    out.reserve(size);
    for (std::size_t i = 0; i < size; ++i) out.push_back(index(i).number());
    return out;
  }

  std::vector<int> integers() const {
    const std::size_t size = array_size();
    std::vector<int> out;
    for (std::size_t i = 0; i < size; ++i) out.push_back(index(i).integer());
    return out;
  }

  Eigen::MatrixXd matrix(int rows) const {
    if (array_size() != static_cast<std::size_t>(rows))
      fail("expected " + std::to_string(rows) + " rows, got " + std::to_string(v_.size()));
    Eigen::MatrixXd m(rows, rows);
    for (int r = 0; r < rows; ++r) {
      const auto row = index(static_cast<std::size_t>(r)).numbers(static_cast<std::size_t>(rows));
      for (int c = 0; c < rows; ++c) m(r, c) = row[static_cast<std::size_t>(c)];
    }
    return m;
  }

 private:
  const json& v_;
  std::string path_;
};

// Re-raises library errors with the document path prepended.
template <typename Fn>
auto at_path(const Field& f, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    const ErrorKind kind = e.kind() == ErrorKind::invalid_operator ? ErrorKind::validation : e.kind();
    std::string msg = e.what();
    const std::string prefix = std::string(to_string(e.kind())) + ": ";
    if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
    throw Error(kind, "field '" + f.path() + "': " + msg);
  }
}

void parse_object(const Field& obj, SpaceContext ctx, InputDocument& doc) {
  obj.expect_object({"curvature_tensor", "constant_curvature", "kulkarni_nomizu", "hypersurface",
                     "operator_matrix"});
  if (obj.raw().size() != 1) obj.fail("exactly one object variant must be present");
  const int n = ctx.dim();
  const std::string key = obj.raw().begin().key();
  const Field f = obj.at(key);

  if (key == "curvature_tensor") {
    doc.kind = ObjectKind::curvature_tensor;
    auto comps = f.numbers(static_cast<std::size_t>(n) * n * n * n);
    doc.curvature = at_path(f, [&] {
      return CurvatureTensor::from_tensor(DenseTensor::from_components(ctx, 4, std::move(comps)));
    });
  } else if (key == "constant_curvature") {
    doc.kind = ObjectKind::constant_curvature;
    f.expect_object({"kappa"});
    doc.curvature = constant_curvature(ctx, f.at("kappa").number());
  } else if (key == "kulkarni_nomizu") {
    doc.kind = ObjectKind::kulkarni_nomizu;
    f.expect_object({"S", "T"});
    const Field fs = f.at("S");
    const Field ft = f.at("T");
    const auto S = at_path(fs, [&] { return SymmetricBilinear::from_matrix(ctx, fs.matrix(n)); });
    const auto T = at_path(ft, [&] { return SymmetricBilinear::from_matrix(ctx, ft.matrix(n)); });
    doc.curvature = kulkarni_nomizu(S, T);
  } else if (key == "hypersurface") {
    doc.kind = ObjectKind::hypersurface;
    f.expect_object({"lambdas", "K"});
    auto lambdas = f.at("lambdas").numbers(static_cast<std::size_t>(n));
    const double K = f.at("K").number();
    doc.hypersurface = at_path(f, [&] { return HypersurfaceSpec::make(std::move(lambdas), K); });
    doc.curvature = hypersurface_curvature(*doc.hypersurface);
  } else {
    doc.kind = ObjectKind::operator_matrix;
    doc.op = at_path(f, [&] { return CurvatureOperator::from_matrix(ctx, f.matrix(ctx.bivector_dim())); });
    try {
      doc.curvature = from_operator(*doc.op);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::validation) throw;
    }
  }
  if (!doc.op) doc.op = to_operator(*doc.curvature);
}

void parse_form(const Field& f, SpaceContext ctx, InputDocument& doc) {
  f.expect_object({"degree", "components", "increasing"});
  const int l = f.at("degree").integer();
  if (l < 1 || l > ctx.dim() - 1)
    f.at("degree").fail("degree must lie in [1, " + std::to_string(ctx.dim() - 1) + "]");
  if (f.has("components") == f.has("increasing"))
    f.fail("give exactly one of 'components' (all n^degree entries) or 'increasing'");
  if (f.has("components")) {
    const Field c = f.at("components");
    std::size_t count = 1;
    for (int s = 0; s < l; ++s) count *= static_cast<std::size_t>(ctx.dim());
    auto comps = c.numbers(count);
    doc.form = at_path(c, [&] {
      return AlternatingForm::from_tensor(DenseTensor::from_components(ctx, l, std::move(comps)));
    });
  } else {
    const Field c = f.at("increasing");
    const auto coeffs = c.numbers(binomial(ctx.dim(), l));
    doc.form = AlternatingForm::from_increasing(ctx, l, coeffs);
  }
}

void parse_hypotheses(const Field& f, AnalysisRequest& req) {
  f.expect_object({"weighted_poincare", "liminf_rho_positive", "nonparabolic", "complete_noncompact",
                   "connected", "einstein", "ricci_flat", "zero_scalar", "divergence_free_rm",
                   "divergence_free_weyl"});
  AnalyticHypotheses::Flags flags;
  const auto read = [&](const char* key, bool& dst) {
    if (f.has(key)) dst = f.at(key).boolean();
  };
  read("weighted_poincare", flags.weighted_poincare);
  read("liminf_rho_positive", flags.liminf_rho_positive);
  read("nonparabolic", flags.nonparabolic);
  read("complete_noncompact", flags.complete_noncompact);
  read("connected", flags.connected);
  read("einstein", flags.einstein);
  read("ricci_flat", flags.ricci_flat);
  read("zero_scalar", flags.zero_scalar);
  read("divergence_free_rm", flags.divergence_free_rm);
  read("divergence_free_weyl", flags.divergence_free_weyl);
  req.hypotheses = AnalyticHypotheses(flags);
}

void parse_analysis(const Field& f, SpaceContext ctx, AnalysisRequest& req) {
  f.expect_object({"m", "p", "Q", "c", "kappa", "kato", "ell", "weyl", "closed", "lambda1", "umbilic",
                   "hypotheses"});
  const int n = ctx.dim();
  if (f.has("m")) {
    req.m = f.at("m").integers();
    for (int m : req.m)
      if (m < 1 || m > ctx.bivector_dim())
        f.at("m").fail("m=" + std::to_string(m) + " outside [1, " + std::to_string(ctx.bivector_dim()) + "]");
  }
  if (f.has("p")) {
    req.p = f.at("p").integers();
    for (int p : req.p)
      if (p < 1 || p > n / 2)
        f.at("p").fail("p=" + std::to_string(p) + " outside [1, " + std::to_string(n / 2) + "]");
  }
  if (f.has("Q")) req.Q = f.at("Q").number();
  if (f.has("c")) req.c = f.at("c").number();
  if (f.has("kappa")) req.kappa = f.at("kappa").number();
  if (f.has("ell")) req.ell = f.at("ell").integer();
  if (f.has("kato")) {
    req.kato = f.at("kato").string();
    if (req.kato != "generic" && req.kato != "form" && req.kato != "einstein-weyl" &&
        req.kato != "zero-scalar")
      f.at("kato").fail("expected one of generic, form, einstein-weyl, zero-scalar");
    if (req.kato == "form" && !req.ell) f.at("kato").fail("kato 'form' needs 'ell'");
  }
  if (f.has("weyl")) {
    const std::string w = f.at("weyl").string();
    if (w == "generic") req.weyl = WeylVariant::generic;
    else if (w == "einstein") req.weyl = WeylVariant::einstein;
    else f.at("weyl").fail("expected 'generic' or 'einstein'");
  }
  if (f.has("closed")) req.closed = f.at("closed").boolean();
  if (f.has("lambda1")) req.lambda1 = f.at("lambda1").number();
  if (f.has("umbilic")) {
    const Field u = f.at("umbilic");
    u.expect_object({"h_norm", "ambient_mu"});
    req.umbilic_h_norm = u.at("h_norm").number();
    req.umbilic_ambient_mu = u.at("ambient_mu").numbers();
  }
  if (f.has("hypotheses")) parse_hypotheses(f.at("hypotheses"), req);
}

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

}  // namespace

InputDocument document_from_json(const json& root) {
  const Field top(root, "$");
  top.expect_object({"format_version", "dimension", "seed", "object", "form", "analysis"});
  const int version = top.at("format_version").integer();
  if (version != kFormatVersion)
    top.at("format_version").fail("unsupported format_version " + std::to_string(version));

  InputDocument doc;
  const Field dim = top.at("dimension");
  doc.dimension = dim.integer();
  const SpaceContext ctx = at_path(dim, [&] { return SpaceContext(doc.dimension); });
  if (top.has("seed")) doc.seed = top.at("seed").unsigned_integer();
  parse_object(top.at("object"), ctx, doc);
  if (top.has("form")) parse_form(top.at("form"), ctx, doc);
  if (top.has("analysis")) parse_analysis(top.at("analysis"), ctx, doc.analysis);
  doc.source = root;
  return doc;
}

InputDocument parse_document(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.byte is one past the offending character
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    std::string what = e.what();
    const auto pos = what.find("syntax error");
    if (pos != std::string::npos) what = what.substr(pos);
    throw Error(ErrorKind::parse, "line " + line_column(text, at) + ": " + what);
  }
  return document_from_json(root);
}

InputDocument load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::parse, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

std::string content_hash(const json& doc) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : doc.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

json verdict_to_json(const TheoremVerdict& v) {
  json checks = json::array();
  for (const auto& h : v.hypotheses_checked)
    checks.push_back({{"name", h.name}, {"value", h.value}, {"satisfied", h.satisfied}});
  return {
      {"theorem", v.theorem_id},
      {"hypotheses", checks},
      {"conclusion", std::string(to_string(v.conclusion))},
      {"marginal", v.marginal},
      {"degrees", v.degrees},
      {"notes", v.notes},
  };
}

namespace {

json identity_check(const std::string& name, double residual, double tolerance) {
  return {{"name", name}, {"residual", residual}, {"tolerance", tolerance}, {"pass", residual <= tolerance}};
}

KatoConstant kato_for(const AnalysisRequest& req, int n) {
  if (req.kato == "form") return KatoConstant::form(*req.ell, n);
  if (req.kato == "einstein-weyl") return KatoConstant::einstein_weyl(n);
  if (req.kato == "zero-scalar") return KatoConstant::zero_scalar_rm();
  return KatoConstant::generic();
}

}  // namespace

json analyze(const InputDocument& doc) {
  const int n = doc.dimension;
  const AnalysisRequest& req = doc.analysis;
  const CurvatureOperator& op = *doc.op;
  const SpectralReport report = spectrum(op);

  json out;
  out["format_version"] = kFormatVersion;
  out["input"] = doc.source;
  out["input_hash"] = content_hash(doc.source);
  out["seed"] = doc.seed;
  out["object"] = std::string(to_string(doc.kind));
  out["dimension"] = n;
  json notes = json::array();

  out["spectrum"] = {
      {"eigenvalues", report.eigenvalues()},
      {"prefix_sums", report.prefix_sums()},
      {"scale", report.scale()},
  };

  json classes = json::array();
  for (int m : req.m)
    classes.push_back({{"m", m},
                       {"classification", std::string(to_string(classify_m(report, m)))},
                       {"prefix_sum", report.prefix_sum(m)},
                       {"marginal", is_marginal(report, m)},
                       {"kappa_lower_bound", kappa_lower_bound(report, m)}});
  out["classifications"] = classes;

  json checks = json::array();
  if (doc.curvature) {
    const CurvatureTensor& rm = *doc.curvature;
    checks.push_back(identity_check("bianchi_symmetries", curvature_residuals(rm.tensor()).max(),
                                    kRelTol * std::max(1.0, rm.norm())));
    if (n >= 3) {
      const DecompositionParts parts = decompose(rm);
      out["decomposition"] = {
          {"scalar_curvature", parts.scal},
          {"norm", rm.norm()},
          {"scalar_part_norm", parts.scal_part.norm()},
          {"traceless_ricci_part_norm", parts.ricci_part.norm()},
          {"weyl_norm", parts.weyl.norm()},
          {"traceless_ricci_norm", traceless_ricci(rm).norm()},
      };
      checks.push_back(identity_check("hat_norm_curvature", curvature_hat_residual(rm), kRelTol));
      checks.push_back(identity_check("decomposition", decomposition_residuals(rm).max(), kRelTol));
    } else {
      notes.push_back("n = 2: decomposition and curvature hat identity are not computed");
    }
    checks.push_back(identity_check("weitzenboeck_curvature",
                                    weitzenboeck_residual(rm, rm.tensor(), rm.tensor()), kRelTol));
    if (doc.form)
      checks.push_back(identity_check("weitzenboeck_form",
                                      weitzenboeck_residual(rm, doc.form->tensor(), doc.form->tensor()),
                                      kRelTol));
  } else {
    notes.push_back(
        "operator matrix does not satisfy the first Bianchi identity; tensor-based checks skipped");
  }

  if (doc.form) {
    const AlternatingForm& w = *doc.form;
    const int l = w.degree();
    checks.push_back(identity_check("hat_norm_form", form_hat_residual(w), kRelTol));
    const int C = std::max(l, n - l);
    const double kappa = kappa_lower_bound(report, C);
    const bool holds = lemma22_check(op, w.tensor(), C, kappa, doc.seed);
    out["form_curvature_bound"] = {
        {"degree", l},
        {"C", C},
        {"kappa", kappa},
        {"quadratic", curvature_quadratic(op, w.tensor())},
        {"hat_norm_squared", hat(w).norm_squared()},
        {"holds", holds},
    };
  }
  out["identity_checks"] = checks;

  json verdicts = json::array();
  const AnalyticHypotheses& hyp = req.hypotheses;
  verdicts.push_back(verdict_to_json(harmonic_tensor_verdict(report, n, req.Q, hyp)));
  if (req.kappa)
    verdicts.push_back(
        verdict_to_json(weighted_tensor_verdict(*req.kappa, req.Q, req.c, kato_for(req, n), hyp)));
  for (int p : req.p) {
    verdicts.push_back(verdict_to_json(form_vanishing_verdict(report, n, p, req.Q, hyp)));
    if (req.kappa && req.ell)
      verdicts.push_back(verdict_to_json(weighted_form_verdict(n, p, *req.ell, req.Q, *req.kappa, hyp)));
    if (doc.hypersurface) {
      verdicts.push_back(verdict_to_json(betti_verdict(*doc.hypersurface, p, req.closed)));
      if (req.lambda1 && req.ell)
        verdicts.push_back(verdict_to_json(
            submanifold_form_verdict(*doc.hypersurface, p, *req.ell, req.Q, req.kappa.value_or(0.0),
                                     first_eigenvalue_weight(*req.lambda1), hyp)));
    }
    if (req.umbilic_h_norm) {
      const auto spec = UmbilicSpec::make(n, *req.umbilic_h_norm, req.umbilic_ambient_mu);
      verdicts.push_back(verdict_to_json(umbilic_verdict(spec, p, req.closed)));
    }
  }
  if (req.weyl) {
    if (n >= 4)
      verdicts.push_back(
          verdict_to_json(weyl_verdict(n, req.Q, req.kappa.value_or(0.0), *req.weyl, hyp)));
    else
      notes.push_back("Weyl verdict skipped: the Weyl tensor vanishes identically for n < 4");
  }
  out["verdicts"] = verdicts;
  out["notes"] = notes;
  return out;
}

std::string render(const json& report) { return report.dump(2) + "\n"; }

}  // namespace curvlab
