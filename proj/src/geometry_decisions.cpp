#include "curvlab/geometry_decisions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace curvlab {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void require_Q(double Q) {
  if (!(Q >= 2.0) || !std::isfinite(Q))
    throw Error(ErrorKind::hypothesis_violation, "integrability exponent Q must be >= 2, got " + num(Q));
}

void require_kappa(double kappa) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa))
    throw Error(ErrorKind::hypothesis_violation, "kappa must be >= 0, got " + num(kappa));
}

void require_p(int n, int p) {
  if (n < 3)
    throw Error(ErrorKind::invalid_argument, "degree ranges need n >= 3, got n=" + std::to_string(n));
  if (p < 1 || p > n / 2)
    throw Error(ErrorKind::invalid_argument, "p=" + std::to_string(p) + " outside [1, " +
                                                 std::to_string(n / 2) + "]");
}

double threshold_tolerance(double threshold) {
  return kSpectralEpsilon * std::max(1.0, std::abs(threshold));
}

class VerdictBuilder {
 public:
  explicit VerdictBuilder(std::string id) { v_.theorem_id = std::move(id); }

  VerdictBuilder& check(std::string name, double value, bool satisfied) {
    v_.hypotheses_checked.push_back({std::move(name), value, satisfied});
    return *this;
  }
  VerdictBuilder& flag(std::string name, bool asserted) {
    return check(std::move(name), asserted ? 1.0 : 0.0, asserted);
  }
  VerdictBuilder& note(std::string text) {
    v_.notes.push_back(std::move(text));
    return *this;
  }
  VerdictBuilder& marginal(bool m) {
    v_.marginal = v_.marginal || m;
    return *this;
  }

  /// `success` when every listed hypothesis holds, not_applicable otherwise.
  TheoremVerdict finish(Conclusion success, std::vector<int> degrees = {}) {
    if (v_.all_satisfied()) {
      v_.conclusion = success;
      v_.degrees = std::move(degrees);
    } else {
      v_.conclusion = Conclusion::not_applicable;
      for (const auto& h : v_.hypotheses_checked)
        if (!h.satisfied) v_.notes.push_back("failed hypothesis: " + h.name);
    }
    return std::move(v_);
  }

 private:
  TheoremVerdict v_;
};

void weighted_flags(VerdictBuilder& b, const AnalyticHypotheses::Flags& f) {
  b.flag("weighted_poincare", f.weighted_poincare)
      .flag("liminf_rho_positive", f.liminf_rho_positive)
      .flag("nonparabolic", f.nonparabolic);
}

}  // namespace

// AnalyticHypotheses ----------------------------------------------------------

AnalyticHypotheses::AnalyticHypotheses(Flags flags) : flags_(flags) {
  if (flags_.ricci_flat) {
    flags_.einstein = true;
    flags_.zero_scalar = true;
  }
}

AnalyticHypotheses AnalyticHypotheses::all_asserted() {
  return AnalyticHypotheses(Flags{true, true, true, true, true, true, true, true, true, true});
}

AnalyticHypotheses AnalyticHypotheses::merged(const AnalyticHypotheses& other) const {
  const Flags& a = flags_;
  const Flags& b = other.flags_;
  return AnalyticHypotheses(Flags{
      a.weighted_poincare || b.weighted_poincare,
      a.liminf_rho_positive || b.liminf_rho_positive,
      a.nonparabolic || b.nonparabolic,
      a.complete_noncompact || b.complete_noncompact,
      a.connected || b.connected,
      a.einstein || b.einstein,
      a.ricci_flat || b.ricci_flat,
      a.zero_scalar || b.zero_scalar,
      a.divergence_free_rm || b.divergence_free_rm,
      a.divergence_free_weyl || b.divergence_free_weyl,
  });
}

// KatoConstant ---------------------------------------------------------------

KatoConstant KatoConstant::generic() { return KatoConstant(0.0, KatoKind::generic, 0, 0); }

KatoConstant KatoConstant::form(int ell, int n) {
  if (n < 2 || ell < 1 || ell > n - 1)
    throw Error(ErrorKind::invalid_argument, "form Kato constant needs 1 <= ell <= n-1");
  return KatoConstant(1.0 / std::max(ell, n - ell), KatoKind::form, ell, n);
}

KatoConstant KatoConstant::einstein_weyl(int n) {
  if (n < 2) throw Error(ErrorKind::invalid_argument, "Einstein-Weyl Kato constant needs n >= 2");
  return KatoConstant(2.0 / (n - 1), KatoKind::einstein_weyl, 0, n);
}

KatoConstant KatoConstant::zero_scalar_rm() {
  return KatoConstant(0.5, KatoKind::zero_scalar_rm, 0, 0);
}

std::string KatoConstant::describe() const {
  switch (kind_) {
    case KatoKind::generic: return "generic (a=0)";
    case KatoKind::form:
      return "form(ell=" + std::to_string(ell_) + ", n=" + std::to_string(n_) +
             ") (a=1/max(ell,n-ell))";
    case KatoKind::einstein_weyl:
      return "einstein_weyl(n=" + std::to_string(n_) + ") (a=2/(n-1))";
    case KatoKind::zero_scalar_rm: return "zero_scalar_rm (a=1/2)";
  }
  return "";
}

// Specs ----------------------------------------------------------------------

HypersurfaceSpec HypersurfaceSpec::make(std::vector<double> lambdas, double K) {
  const int n = static_cast<int>(lambdas.size());
  if (n < kMinDimension || n > kMaxDimension)
    throw Error(ErrorKind::unsupported_dimension,
                "hypersurface needs between 2 and 8 principal curvatures, got " + std::to_string(n));
  for (double l : lambdas)
    if (!std::isfinite(l)) throw Error(ErrorKind::validation, "principal curvature is not finite");
  if (!std::isfinite(K)) throw Error(ErrorKind::validation, "ambient curvature is not finite");
  return HypersurfaceSpec{n, std::move(lambdas), K};
}

UmbilicSpec UmbilicSpec::make(int n, double h_norm, std::vector<double> ambient_mu) {
  if (n < kMinDimension || n > kMaxDimension)
    throw Error(ErrorKind::unsupported_dimension, "submanifold dimension outside [2, 8]");
  if (!(h_norm >= 0.0) || !std::isfinite(h_norm))
    throw Error(ErrorKind::validation, "mean curvature norm must be finite and >= 0");
  for (double v : ambient_mu)
    if (!std::isfinite(v)) throw Error(ErrorKind::validation, "ambient eigenvalue is not finite");
  if (!std::is_sorted(ambient_mu.begin(), ambient_mu.end()))
    throw Error(ErrorKind::validation, "ambient eigenvalues must be sorted ascending");
  return UmbilicSpec{n, h_norm, std::move(ambient_mu)};
}

// Verdict plumbing -----------------------------------------------------------

std::string_view to_string(Conclusion c) noexcept {
  switch (c) {
    case Conclusion::vanishes: return "vanishes";
    case Conclusion::parallel: return "parallel";
    case Conclusion::locally_conformally_flat: return "locally_conformally_flat";
    case Conclusion::constant_sectional_curvature: return "constant_sectional_curvature";
    case Conclusion::flat: return "flat";
    case Conclusion::betti_range_zero: return "betti_range_zero";
    case Conclusion::not_applicable: return "not_applicable";
  }
  return "not_applicable";
}

std::string_view to_string(WeylVariant v) noexcept {
  return v == WeylVariant::generic ? "generic" : "einstein";
}

bool TheoremVerdict::all_satisfied() const noexcept {
  return std::all_of(hypotheses_checked.begin(), hypotheses_checked.end(),
                     [](const HypothesisCheck& h) { return h.satisfied; });
}

// Thresholds -----------------------------------------------------------------

double kappa_threshold(double Q, double c, const KatoConstant& kato) {
  require_Q(Q);
  if (!(c > 0.0) || !std::isfinite(c))
    throw Error(ErrorKind::hypothesis_violation, "Laplacian constant c must be > 0, got " + num(c));
  return 4.0 * (Q - 1.0 + kato.a()) / (c * Q * Q);
}

double form_threshold(int n, int ell, double Q) {
  if (n < 3 || ell < 1 || ell > n - 1)
    throw Error(ErrorKind::hypothesis_violation, "form threshold needs n >= 3 and 1 <= ell <= n-1");
  require_Q(Q);
  const double a = 1.0 / std::max(ell, n - ell);
  return 4.0 * (Q - 1.0 + a) / (static_cast<double>(ell * (n - ell)) * Q * Q);
}

double weyl_threshold(int n, double Q, WeylVariant variant) {
  if (n < 4)
    throw Error(ErrorKind::unsupported_dimension,
                "the Weyl tensor vanishes identically for n < 4, got n=" + std::to_string(n));
  require_Q(Q);
  const double a = variant == WeylVariant::einstein ? 2.0 / (n - 1) : 0.0;
  return 2.0 * (Q - 1.0 + a) / ((n - 1) * Q * Q);
}

std::vector<int> vanishing_degrees(int n, int p) {
  require_p(n, p);
  std::vector<int> d;
  for (int l = 1; l <= n - 1; ++l)
    if (l <= p || l >= n - p) d.push_back(l);
  return d;
}

// Verdicts -------------------------------------------------------------------

TheoremVerdict harmonic_tensor_verdict(const SpectralReport& report, int n, double Q,
                                       const AnalyticHypotheses& hyp) {
  if (report.context().dim() != n)
    throw Error(ErrorKind::dimension_mismatch, "spectral report is not from dimension n");
  const int m = (n + 1) / 2;
  VerdictBuilder b("harmonic_tensor_nonnegative");
  b.check("curvature operator ceil(n/2)-nonnegative (m=" + std::to_string(m) + ")",
          report.prefix_sum(m), classify_m(report, m) != Positivity::indefinite)
      .check("Q >= 2", Q, Q >= 2.0)
      .flag("complete_noncompact", hyp.flags().complete_noncompact)
      .marginal(is_marginal(report, m));
  return b.finish(Conclusion::vanishes);
}

TheoremVerdict weighted_tensor_verdict(double kappa, double Q, double c, const KatoConstant& kato,
                                       const AnalyticHypotheses& hyp) {
  require_kappa(kappa);
  const double threshold = kappa_threshold(Q, c, kato);
  const double tol = threshold_tolerance(threshold);
  const auto& f = hyp.flags();
  VerdictBuilder b("weighted_tensor");
  b.check("kappa < 4(Q-1+a)/(cQ^2) = " + num(threshold), kappa, kappa < threshold - tol);
  weighted_flags(b, f);
  b.flag("connected", f.connected)
      .flag("complete_noncompact", f.complete_noncompact)
      .marginal(std::abs(kappa - threshold) <= tol)
      .note("Kato constant: " + kato.describe());
  return b.finish(Conclusion::vanishes);
}

TheoremVerdict form_vanishing_verdict(const SpectralReport& report, int n, int p, double Q,
                                      const AnalyticHypotheses& hyp) {
  require_p(n, p);
  if (report.context().dim() != n)
    throw Error(ErrorKind::dimension_mismatch, "spectral report is not from dimension n");
  const int m = n - p;
  VerdictBuilder b("form_vanishing");
  b.check("curvature operator (n-p)-nonnegative (m=" + std::to_string(m) + ")",
          report.prefix_sum(m), classify_m(report, m) != Positivity::indefinite)
      .check("Q >= 2", Q, Q >= 2.0)
      .flag("complete_noncompact", hyp.flags().complete_noncompact)
      .marginal(is_marginal(report, m));
  return b.finish(Conclusion::vanishes, vanishing_degrees(n, p));
}

TheoremVerdict weighted_form_verdict(int n, int p, int ell, double Q, double kappa,
                                     const AnalyticHypotheses& hyp) {
  require_p(n, p);
  require_kappa(kappa);
  if (ell < 1 || ell > n - 1 || (ell > p && ell < n - p))
    throw Error(ErrorKind::invalid_argument, "degree ell=" + std::to_string(ell) +
                                                 " is outside {1..p} u {n-p..n-1}");
  const double threshold = form_threshold(n, ell, Q);
  const double tol = threshold_tolerance(threshold);
  VerdictBuilder b("weighted_form");
  b.check("kappa < 4(Q-1+1/max(ell,n-ell))/(ell(n-ell)Q^2) = " + num(threshold), kappa,
          kappa < threshold - tol);
  weighted_flags(b, hyp.flags());
  b.flag("complete_noncompact", hyp.flags().complete_noncompact)
      .marginal(std::abs(kappa - threshold) <= tol);
  std::vector<int> degrees{ell};
  if (n - ell != ell) degrees.push_back(n - ell);
  std::sort(degrees.begin(), degrees.end());
  return b.finish(Conclusion::vanishes, std::move(degrees));
}

TheoremVerdict weyl_verdict(int n, double Q, double kappa, WeylVariant variant,
                            const AnalyticHypotheses& hyp) {
  if (n < 4)
    throw Error(ErrorKind::unsupported_dimension,
                "the Weyl tensor vanishes identically for n < 4, got n=" + std::to_string(n));
  require_kappa(kappa);
  const auto& f = hyp.flags();
  const bool weighted = kappa > 0.0;
  // Einstein metrics have harmonic curvature and hence divergence-free Weyl tensor.
  const bool div_free_weyl = f.divergence_free_weyl || f.einstein;

  const auto common = [&](VerdictBuilder& b) {
    b.check("Q >= 2", Q, Q >= 2.0)
        .flag("complete_noncompact", f.complete_noncompact)
        .flag("connected", f.connected)
        .flag("divergence_free_weyl", div_free_weyl);
    if (weighted) weighted_flags(b, f);
    if (!f.divergence_free_weyl && f.einstein)
      b.note("divergence-free Weyl tensor inferred from the Einstein condition");
  };

  if (f.ricci_flat && kappa <= kSpectralEpsilon) {
    VerdictBuilder b("ricci_flat_rigidity");
    b.check("curvature operator floor((n-1)/2)-nonnegative (kappa = 0)", kappa, true);
    common(b);
    b.note("Ricci-flat: curvature tensor equals the Weyl tensor, so vanishing Weyl means flat");
    return b.finish(Conclusion::flat);
  }

  const double threshold = weyl_threshold(n, Q, variant);
  const double tol = threshold_tolerance(threshold);
  VerdictBuilder b(variant == WeylVariant::generic ? "weyl_generic" : "weyl_einstein");
  b.check("kappa < " + std::string(variant == WeylVariant::generic
                                       ? "2(Q-1)/((n-1)Q^2)"
                                       : "2(Q-1+2/(n-1))/((n-1)Q^2)") +
              " = " + num(threshold),
          kappa, kappa < threshold - tol);
  common(b);
  b.marginal(std::abs(kappa - threshold) <= tol);
  if (variant == WeylVariant::einstein) {
    b.flag("einstein", f.einstein);
    const double alt = 2.0 * (Q - 1.0 + 2.0 / (n - 2)) / ((n - 1) * Q * Q);
    b.note("Kato constant 2/(n-1) used; with 2/(n-2) the threshold would be " + num(alt));
  }

  // Infinite curvature integral: Einstein with kappa < 2(Q-1)/((n-1)Q^2), or
  // zero scalar curvature and divergence-free Rm with kappa < 2(Q-1/2)/((n-1)Q^2).
  const bool weights_ok = f.weighted_poincare && f.liminf_rho_positive && f.nonparabolic &&
                          f.connected && f.complete_noncompact;
  if (weights_ok && Q >= 2.0) {
    const double einstein_bound = 2.0 * (Q - 1.0) / ((n - 1) * Q * Q);
    const double zero_scalar_bound = 2.0 * (Q - 0.5) / ((n - 1) * Q * Q);
    if (f.einstein && kappa < einstein_bound)
      b.note("Einstein case: the L^Q norm of the curvature tensor is infinite (kappa < " +
             num(einstein_bound) + ")");
    else if (f.zero_scalar && f.divergence_free_rm && kappa < zero_scalar_bound)
      b.note("zero scalar curvature case: the L^Q norm of the curvature tensor is infinite (kappa < " +
             num(zero_scalar_bound) + ")");
  }
  return b.finish(variant == WeylVariant::generic ? Conclusion::locally_conformally_flat
                                                  : Conclusion::constant_sectional_curvature);
}

// Hypersurfaces --------------------------------------------------------------

CurvatureTensor hypersurface_curvature(const HypersurfaceSpec& spec) {
  const SpaceContext ctx(spec.n);
  const auto g = SymmetricBilinear::identity(ctx);
  const auto h = SymmetricBilinear::diagonal(ctx, spec.lambdas);
  // Rm = K(g(x,z)g(y,w) - g(x,w)g(y,z)) + h(x,z)h(y,w) - h(x,w)h(y,z)
  return 0.5 * spec.K * kulkarni_nomizu(g, g) + 0.5 * kulkarni_nomizu(h, h);
}

CurvatureOperator hypersurface_operator(const HypersurfaceSpec& spec) {
  const SpaceContext ctx(spec.n);
  std::vector<double> diag;
  for (const auto& [i, j] : ctx.pairs())
    diag.push_back(spec.K + spec.lambdas[static_cast<std::size_t>(i)] *
                                spec.lambdas[static_cast<std::size_t>(j)]);
  return CurvatureOperator::diagonal(ctx, diag);
}

std::vector<double> second_kind_means(const HypersurfaceSpec& spec) {
  std::vector<double> mu;
  for (int i = 0; i < spec.n; ++i)
    for (int j = i + 1; j < spec.n; ++j)
      mu.push_back(spec.lambdas[static_cast<std::size_t>(i)] * spec.lambdas[static_cast<std::size_t>(j)]);
  std::sort(mu.begin(), mu.end());
  return mu;
}

namespace {

TheoremVerdict betti_from_margin(std::string id, std::string condition, int n, int p,
                                 double margin, double scale, bool closed) {
  const double tol = kSpectralEpsilon * scale;
  VerdictBuilder b(std::move(id));
  b.flag("closed", closed).check(std::move(condition), margin, margin >= -tol);
  const bool boundary = std::abs(margin) <= tol;
  b.marginal(boundary);
  if (boundary) {
    b.note("boundary case: harmonic p- and (n-p)-forms are parallel");
    std::vector<int> degrees{p};
    if (n - p != p) degrees.push_back(n - p);
    return b.finish(Conclusion::parallel, std::move(degrees));
  }
  return b.finish(Conclusion::betti_range_zero, vanishing_degrees(n, p));
}

}  // namespace

TheoremVerdict betti_verdict(const HypersurfaceSpec& spec, int p, bool closed) {
  const int n = spec.n;
  require_p(n, p);
  const auto mu = second_kind_means(spec);
  const int m = n - p;
  double sum = 0.0;
  for (int i = 0; i < m; ++i) sum += mu[static_cast<std::size_t>(i)];
  const double margin = sum + m * spec.K;
  double scale = std::max({1.0, std::abs(spec.K), std::abs(mu.front()), std::abs(mu.back())});
  return betti_from_margin("hypersurface_betti",
                           "mu_1 + .. + mu_{n-p} + (n-p)K >= 0 (sum=" + num(sum) + ")", n, p,
                           margin, scale, closed);
}

TheoremVerdict umbilic_verdict(const UmbilicSpec& spec, int p, bool closed) {
  const int n = spec.n;
  require_p(n, p);
  const int m = n - p;
  if (static_cast<int>(spec.ambient_mu.size()) < m)
    throw Error(ErrorKind::invalid_argument, "need at least n-p=" + std::to_string(m) +
                                                 " ambient eigenvalues, got " +
                                                 std::to_string(spec.ambient_mu.size()));
  double sum = 0.0;
  for (int i = 0; i < m; ++i) sum += spec.ambient_mu[static_cast<std::size_t>(i)];
  const double h2 = spec.h_norm * spec.h_norm;
  const double margin = sum + m * h2;
  double scale = std::max(1.0, h2);
  for (int i = 0; i < m; ++i)
    scale = std::max(scale, std::abs(spec.ambient_mu[static_cast<std::size_t>(i)]));
  return betti_from_margin("umbilic_betti",
                           "mubar_1 + .. + mubar_{n-p} + (n-p)|H|^2 >= 0 (sum=" + num(sum) + ")",
                           n, p, margin, scale, closed);
}

PoincareWeight first_eigenvalue_weight(double lambda1) {
  if (!(lambda1 > 0.0) || !std::isfinite(lambda1))
    throw Error(ErrorKind::hypothesis_violation,
                "first eigenvalue must be positive, got " + num(lambda1));
  AnalyticHypotheses::Flags f;
  f.weighted_poincare = true;
  f.liminf_rho_positive = true;
  // A positive bottom of the spectrum makes the manifold nonparabolic.
  f.nonparabolic = true;
  return PoincareWeight{lambda1, AnalyticHypotheses(f)};
}

TheoremVerdict submanifold_form_verdict(const HypersurfaceSpec& spec, int p, int ell, double Q,
                                        double kappa, const PoincareWeight& weight,
                                        const AnalyticHypotheses& hyp) {
  const int n = spec.n;
  require_p(n, p);
  const auto mu = second_kind_means(spec);
  const int m = n - p;
  double sum = 0.0;
  for (int i = 0; i < m; ++i) sum += mu[static_cast<std::size_t>(i)];
  const double average = (m * spec.K + sum) / m;
  const double bound = -kappa * weight.rho;

  TheoremVerdict v = weighted_form_verdict(n, p, ell, Q, kappa, hyp.merged(weight.hypotheses));
  v.theorem_id = "submanifold_weighted_form";
  const double tol = kSpectralEpsilon * std::max(1.0, std::abs(bound));
  const bool ok = average >= bound - tol;
  v.hypotheses_checked.insert(
      v.hypotheses_checked.begin(),
      {"((n-p)K + mu_1 + .. + mu_{n-p})/(n-p) >= -kappa*lambda1 = " + num(bound), average, ok});
  v.marginal = v.marginal || std::abs(average - bound) <= tol;
  if (!ok && v.conclusion != Conclusion::not_applicable) {
    v.conclusion = Conclusion::not_applicable;
    v.degrees.clear();
    v.notes.push_back("failed hypothesis: curvature average bound");
  } else if (!ok) {
    v.notes.push_back("failed hypothesis: curvature average bound");
  }
  return v;
}

}  // namespace curvlab
