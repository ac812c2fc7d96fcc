#pragma once

// Seeded generators for property checks. Every generator draws components
// i.i.d. uniform on [-1, 1] and then projects onto the required class; forms
// draw one coefficient per increasing index set instead.

#include <cstdint>
#include <random>

#include "curvlab/curvature_algebra.hpp"
#include "curvlab/tensor_core.hpp"

namespace curvlab {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [-1, 1).
  double uniform() { return 2.0 * unit() - 1.0; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  /// Uniform on {0, .., bound-1}.
  int below(int bound) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(bound)); }

 private:
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 engine_;
};

/// Independent sub-seed for trial `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

DenseTensor random_tensor(SpaceContext ctx, int arity, Rng& rng);
AlternatingForm random_form(SpaceContext ctx, int degree, Rng& rng);
SkewEndomorphism random_skew(SpaceContext ctx, Rng& rng);
SymmetricBilinear random_symmetric(SpaceContext ctx, Rng& rng);
CurvatureTensor random_curvature(SpaceContext ctx, Rng& rng);
/// Symmetric N x N matrix, not necessarily satisfying the Bianchi identity.
CurvatureOperator random_symmetric_operator(SpaceContext ctx, Rng& rng);

}  // namespace curvlab
