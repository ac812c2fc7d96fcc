#pragma once

// Spectra of curvature operators and the m-positivity classification.
//
// An operator is m-positive (m-nonnegative) when the sum of its m lowest
// eigenvalues is positive (nonnegative). Zero is decided with the tolerance
// kSpectralEpsilon * scale, scale = max(1, |mu_1|, |mu_N|).

#include <cstdint>
#include <string_view>
#include <vector>

#include "curvlab/curvature_algebra.hpp"

namespace curvlab {

inline constexpr double kSpectralEpsilon = 1e-9;

enum class Positivity { positive, nonnegative_not_positive, indefinite };

std::string_view to_string(Positivity p) noexcept;

class SpectralReport {
 public:
  /// Sorts the values; requires exactly n(n-1)/2 finite entries.
  static SpectralReport from_eigenvalues(SpaceContext ctx, std::vector<double> eigenvalues);

  const SpaceContext& context() const noexcept { return ctx_; }
  /// Ascending.
  const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }
  /// prefix_sums()[m] = mu_1 + .. + mu_m, with prefix_sums()[0] = 0.
  const std::vector<double>& prefix_sums() const noexcept { return prefix_sums_; }
  double prefix_sum(int m) const;
  double scale() const noexcept { return scale_; }
  int size() const noexcept { return static_cast<int>(eigenvalues_.size()); }

 private:
  SpectralReport(SpaceContext ctx, std::vector<double> eigenvalues);

  SpaceContext ctx_;
  std::vector<double> eigenvalues_;
  std::vector<double> prefix_sums_;
  double scale_;
};

SpectralReport spectrum(const CurvatureOperator& op);

Positivity classify_m(const SpectralReport& report, int m);
/// True when the m-th prefix sum lies within the zero tolerance, i.e. the
/// strict and non-strict readings of the hypothesis disagree.
bool is_marginal(const SpectralReport& report, int m);
/// (mu_1 + .. + mu_m) / m.
double kappa_lower_bound(const SpectralReport& report, int m);

/// Sampled check that g(R(T^), T^) >= kappa |T^|^2 given the bound
/// |LT|^2 <= |T^|^2 |L|^2 / C. The bound itself is verified first on the
/// bivector basis and 100 random L drawn from `seed`; if it fails an
/// invalid-argument error is thrown. Never a proof.
bool lemma22_check(const CurvatureOperator& op, const DenseTensor& t, double C, double kappa,
                   std::uint64_t seed);

}  // namespace curvlab
