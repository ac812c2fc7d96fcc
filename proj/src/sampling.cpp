#include "curvlab/sampling.hpp"

namespace curvlab {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  // splitmix64 finalizer over the combined state
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

DenseTensor random_tensor(SpaceContext ctx, int arity, Rng& rng) {
  DenseTensor t(ctx, arity);
  for (double& v : t.components()) v = rng.uniform();
  return t;
}

AlternatingForm random_form(SpaceContext ctx, int degree, Rng& rng) {
  std::vector<double> coeffs(binomial(ctx.dim(), degree));
  for (double& v : coeffs) v = rng.uniform();
  return AlternatingForm::from_increasing(ctx, degree, coeffs);
}

SkewEndomorphism random_skew(SpaceContext ctx, Rng& rng) {
  const int n = ctx.dim();
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.uniform();
  return SkewEndomorphism::from_matrix(ctx, 0.5 * (a - a.transpose()));
}

SymmetricBilinear random_symmetric(SpaceContext ctx, Rng& rng) {
  const int n = ctx.dim();
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.uniform();
  return SymmetricBilinear::from_matrix(ctx, 0.5 * (a + a.transpose()));
}

CurvatureTensor random_curvature(SpaceContext ctx, Rng& rng) {
  return CurvatureTensor::project(random_tensor(ctx, 4, rng));
}

CurvatureOperator random_symmetric_operator(SpaceContext ctx, Rng& rng) {
  const int N = ctx.bivector_dim();
  Eigen::MatrixXd a(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) a(i, j) = rng.uniform();
  return CurvatureOperator::from_matrix(ctx, 0.5 * (a + a.transpose()));
}

}  // namespace curvlab
