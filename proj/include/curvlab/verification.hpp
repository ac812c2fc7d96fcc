#pragma once

// Residuals of the algebraic identities and the seeded randomized suites
// that drive them. Every residual is a nonnegative number compared against a
// fixed tolerance; the normalisation is documented per function.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "curvlab/curvature_algebra.hpp"

namespace curvlab {

/// | |w^|^2 - l(n-l)|w|^2 | / (l(n-l)|w|^2).
double form_hat_residual(const AlternatingForm& w);

/// | |Rm^|^2 - (4(n-1)|Rm0|^2 - 8|Ric0|^2) | / max(|Rm|^2, |Rm^|^2), where Rm0
/// is the traceless part and Ric0 the traceless Ricci tensor.
double curvature_hat_residual(const CurvatureTensor& rm);

/// |<Ric(S), T> - sum R[a,b] <S^_a, T^_b>| / (max(1, |Rm|) |S| |T|).
double weitzenboeck_residual(const CurvatureTensor& rm, const DenseTensor& s, const DenseTensor& t);

struct DecompositionResiduals {
  double reconstruction = 0.0;  // |Rm - sum of parts| / |Rm|
  double orthogonality = 0.0;   // max pairwise |<A, B>| / |Rm|^2
  double weyl_ricci = 0.0;      // |Ric(W)| / |Rm|
  double max() const;
};

/// Requires n >= 3.
DecompositionResiduals decomposition_residuals(const CurvatureTensor& rm);

struct SuiteResult {
  std::string name;
  int n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  long violations = 0;
  std::vector<std::string> notes;

  bool passed() const noexcept { return violations == 0 && max_residual <= tolerance; }
};

/// prop25a, prop25b, prop23, lemma25_bounds, lemma24, decomposition, hypersurface_oracle.
const std::vector<std::string>& suite_names();

/// Smallest dimension a suite accepts.
int suite_min_dimension(std::string_view name);

/// Runs `trials` seeded trials; trial t draws from derive_seed(seed, t).
/// Unknown names and dimensions below suite_min_dimension throw
/// invalid_argument.
SuiteResult run_suite(std::string_view name, int n, int trials, std::uint64_t seed);

}  // namespace curvlab
