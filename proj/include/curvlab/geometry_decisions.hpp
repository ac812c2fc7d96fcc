#pragma once

// Hypothesis arithmetic for the L^Q vanishing and rigidity statements about
// harmonic tensors, plus the hypersurface and totally umbilical Betti number
// criteria.
//
// Analytic conditions (completeness, nonparabolicity, weighted Poincare
// inequalities, ...) are never verified here. They enter as caller
// assertions and are copied into the verdict so the record shows exactly
// what was assumed. Pointwise weighted curvature bounds
// (mu_1 + .. + mu_m)/m >= -kappa rho are reduced to the scalar kappa.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "curvlab/curvature_algebra.hpp"
#include "curvlab/spectral_conditions.hpp"

namespace curvlab {

class AnalyticHypotheses {
 public:
  struct Flags {
    bool weighted_poincare = false;
    bool liminf_rho_positive = false;  // liminf of the weight at infinity is positive
    bool nonparabolic = false;
    bool complete_noncompact = false;
    bool connected = false;
    bool einstein = false;
    bool ricci_flat = false;
    bool zero_scalar = false;
    bool divergence_free_rm = false;
    bool divergence_free_weyl = false;
  };

  AnalyticHypotheses() = default;
  /// Ricci-flat implies Einstein and zero scalar curvature; those flags are
  /// raised here.
  explicit AnalyticHypotheses(Flags flags);
  static AnalyticHypotheses all_asserted();

  const Flags& flags() const noexcept { return flags_; }
  /// Union of the asserted flags.
  AnalyticHypotheses merged(const AnalyticHypotheses& other) const;

 private:
  Flags flags_{};
};

enum class KatoKind { generic, form, einstein_weyl, zero_scalar_rm };

/// The constant a of a refined Kato inequality |nabla T|^2 >= (1+a)|nabla|T||^2.
class KatoConstant {
 public:
  static KatoConstant generic();
  /// a = 1/max(ell, n-ell) for harmonic ell-forms.
  static KatoConstant form(int ell, int n);
  /// a = 2/(n-1) for the Weyl tensor of an Einstein manifold.
  static KatoConstant einstein_weyl(int n);
  /// a = 1/2 for divergence-free curvature with zero scalar curvature.
  static KatoConstant zero_scalar_rm();

  double a() const noexcept { return a_; }
  KatoKind kind() const noexcept { return kind_; }
  std::string describe() const;

 private:
  KatoConstant(double a, KatoKind kind, int ell, int n) : a_(a), kind_(kind), ell_(ell), n_(n) {}

  double a_;
  KatoKind kind_;
  int ell_;
  int n_;
};

struct HypersurfaceSpec {
  int n;
  std::vector<double> lambdas;  // principal curvatures
  double K;                     // ambient sectional curvature

  /// n = lambdas.size(); requires 2 <= n <= 8 and finite inputs.
  static HypersurfaceSpec make(std::vector<double> lambdas, double K);
};

struct UmbilicSpec {
  int n;
  double h_norm;                   // |H|
  std::vector<double> ambient_mu;  // ascending ambient curvature-operator spectrum

  /// Requires h_norm >= 0 and ambient_mu sorted ascending.
  static UmbilicSpec make(int n, double h_norm, std::vector<double> ambient_mu);
};

enum class Conclusion {
  vanishes,
  parallel,
  locally_conformally_flat,
  constant_sectional_curvature,
  flat,
  betti_range_zero,
  not_applicable,
};

std::string_view to_string(Conclusion c) noexcept;

struct HypothesisCheck {
  std::string name;
  double value;
  bool satisfied;
};

struct TheoremVerdict {
  std::string theorem_id;
  std::vector<HypothesisCheck> hypotheses_checked;
  Conclusion conclusion = Conclusion::not_applicable;
  bool marginal = false;
  /// Form degrees (or Betti indices) the conclusion applies to, when any.
  std::vector<int> degrees;
  std::vector<std::string> notes;

  bool all_satisfied() const noexcept;
};

// Threshold arithmetic -------------------------------------------------------

/// 4(Q-1+a)/(c Q^2). Requires Q >= 2 and c > 0.
double kappa_threshold(double Q, double c, const KatoConstant& kato);
/// 4(Q-1+1/max(ell,n-ell)) / (ell (n-ell) Q^2). Requires n >= 3, 1 <= ell <= n-1, Q >= 2.
double form_threshold(int n, int ell, double Q);

enum class WeylVariant { generic, einstein };
std::string_view to_string(WeylVariant v) noexcept;

/// generic: 2(Q-1)/((n-1)Q^2); einstein: 2(Q-1+2/(n-1))/((n-1)Q^2). Requires n >= 4.
double weyl_threshold(int n, double Q, WeylVariant variant);

/// Degrees {1..p} u {n-p..n-1}.
std::vector<int> vanishing_degrees(int n, int p);

// Verdicts -------------------------------------------------------------------

/// ceil(n/2)-nonnegative curvature operator and |T| in L^Q => T = 0.
TheoremVerdict harmonic_tensor_verdict(const SpectralReport& report, int n, double Q,
                                       const AnalyticHypotheses& hyp);

/// g(R(T^),T^) >= -kappa rho |T|^2 with kappa below 4(Q-1+a)/(cQ^2) => T = 0.
TheoremVerdict weighted_tensor_verdict(double kappa, double Q, double c, const KatoConstant& kato,
                                       const AnalyticHypotheses& hyp);

/// (n-p)-nonnegative curvature operator => harmonic ell-forms in L^Q vanish
/// for ell in {1..p} u {n-p..n-1}.
TheoremVerdict form_vanishing_verdict(const SpectralReport& report, int n, int p, double Q,
                                      const AnalyticHypotheses& hyp);

/// Weighted version for a single degree ell of the range: kappa compared with
/// form_threshold(n, ell, Q).
TheoremVerdict weighted_form_verdict(int n, int p, int ell, double Q, double kappa,
                                     const AnalyticHypotheses& hyp);

/// Divergence-free Weyl tensor in L^Q. generic => locally conformally flat,
/// einstein => constant sectional curvature; Ricci-flat with kappa = 0 => flat.
TheoremVerdict weyl_verdict(int n, double Q, double kappa, WeylVariant variant,
                            const AnalyticHypotheses& hyp);

// Hypersurfaces and umbilical submanifolds -----------------------------------

/// Gauss equation: (K/2) g.g + (1/2) h.h with h = diag(lambdas).
CurvatureTensor hypersurface_curvature(const HypersurfaceSpec& spec);
/// Diagonal operator with entry K + lambda_i lambda_j at pair (i, j).
CurvatureOperator hypersurface_operator(const HypersurfaceSpec& spec);
/// {lambda_i lambda_j : i < j}, ascending.
std::vector<double> second_kind_means(const HypersurfaceSpec& spec);

/// Closed hypersurface in a space form: mu_1 + .. + mu_{n-p} > -(n-p)K gives
/// vanishing Betti numbers in degrees {1..p} u {n-p..n-1}; equality gives
/// parallel harmonic p- and (n-p)-forms.
TheoremVerdict betti_verdict(const HypersurfaceSpec& spec, int p, bool closed);

/// Closed totally umbilical submanifold: sum of the n-p lowest ambient
/// eigenvalues against -(n-p)|H|^2, same conclusion shape as betti_verdict.
TheoremVerdict umbilic_verdict(const UmbilicSpec& spec, int p, bool closed);

struct PoincareWeight {
  double rho;  // constant weight
  AnalyticHypotheses hypotheses;
};

/// A positive bottom of the spectrum lambda1 gives a weighted Poincare
/// inequality with constant weight rho = lambda1.
PoincareWeight first_eigenvalue_weight(double lambda1);

/// Complete non-compact hypersurface with lambda1 > 0: the average of the
/// n-p lowest curvature-operator eigenvalues must be >= -kappa lambda1, and
/// kappa must be below form_threshold(n, ell, Q).
TheoremVerdict submanifold_form_verdict(const HypersurfaceSpec& spec, int p, int ell, double Q,
                                        double kappa, const PoincareWeight& weight,
                                        const AnalyticHypotheses& hyp);

}  // namespace curvlab
