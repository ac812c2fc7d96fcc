#include "curvlab/spectral_conditions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "curvlab/sampling.hpp"

namespace curvlab {

std::string_view to_string(Positivity p) noexcept {
  switch (p) {
    case Positivity::positive: return "positive";
    case Positivity::nonnegative_not_positive: return "nonnegative_not_positive";
    case Positivity::indefinite: return "indefinite";
  }
  return "indefinite";
}

SpectralReport::SpectralReport(SpaceContext ctx, std::vector<double> eigenvalues)
    : ctx_(ctx), eigenvalues_(std::move(eigenvalues)) {
  std::sort(eigenvalues_.begin(), eigenvalues_.end());
  prefix_sums_.assign(eigenvalues_.size() + 1, 0.0);
  for (std::size_t m = 0; m < eigenvalues_.size(); ++m)
    prefix_sums_[m + 1] = prefix_sums_[m] + eigenvalues_[m];
  scale_ = 1.0;
  if (!eigenvalues_.empty())
    scale_ = std::max({1.0, std::abs(eigenvalues_.front()), std::abs(eigenvalues_.back())});
}

SpectralReport SpectralReport::from_eigenvalues(SpaceContext ctx, std::vector<double> eigenvalues) {
  if (static_cast<int>(eigenvalues.size()) != ctx.bivector_dim())
    throw Error(ErrorKind::dimension_mismatch,
                "expected " + std::to_string(ctx.bivector_dim()) + " eigenvalues, got " +
                    std::to_string(eigenvalues.size()));
  for (double v : eigenvalues)
    if (!std::isfinite(v)) throw Error(ErrorKind::validation, "eigenvalue is not finite");
  return SpectralReport(ctx, std::move(eigenvalues));
}

double SpectralReport::prefix_sum(int m) const {
  if (m < 0 || m > size())
    throw Error(ErrorKind::invalid_argument,
                "m=" + std::to_string(m) + " outside [0, " + std::to_string(size()) + "]");
  return prefix_sums_[static_cast<std::size_t>(m)];
}

SpectralReport spectrum(const CurvatureOperator& op) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::invalid_operator, "symmetric eigensolver did not converge");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return SpectralReport::from_eigenvalues(op.context(), std::vector<double>(ev.begin(), ev.end()));
}

namespace {

void check_m(const SpectralReport& report, int m) {
  if (m < 1 || m > report.size())
    throw Error(ErrorKind::invalid_argument,
                "m=" + std::to_string(m) + " outside [1, " + std::to_string(report.size()) + "]");
}

}  // namespace

Positivity classify_m(const SpectralReport& report, int m) {
  check_m(report, m);
  const double sum = report.prefix_sum(m);
  const double tol = kSpectralEpsilon * report.scale();
  if (sum > tol) return Positivity::positive;
  if (std::abs(sum) <= tol) return Positivity::nonnegative_not_positive;
  return Positivity::indefinite;
}

bool is_marginal(const SpectralReport& report, int m) {
  check_m(report, m);
  return std::abs(report.prefix_sum(m)) <= kSpectralEpsilon * report.scale();
}

double kappa_lower_bound(const SpectralReport& report, int m) {
  check_m(report, m);
  return report.prefix_sum(m) / m;
}

bool lemma22_check(const CurvatureOperator& op, const DenseTensor& t, double C, double kappa,
                   std::uint64_t seed) {
  if (!(C >= 1.0))
    throw Error(ErrorKind::invalid_argument, "constant C must be >= 1, got " + format_number(C));
  if (op.context() != t.context())
    throw Error(ErrorKind::dimension_mismatch, "operator and tensor live in different spaces");
  const SpaceContext ctx = t.context();
  const HatTensor t_hat = hat(t);
  const double hat_sq = t_hat.norm_squared();

  const auto check_bound = [&](const SkewEndomorphism& L) {
    const double lhs = lt_action(L, t).norm_squared();
    const double rhs = hat_sq * L.norm_squared() / C;
    if (lhs > rhs + kRelTol * std::max(rhs, 1e-300))
      throw Error(ErrorKind::invalid_argument,
                  "bound |LT|^2 <= |T^|^2 |L|^2 / C fails for C=" + format_number(C));
  };
  for (const auto& [i, j] : ctx.pairs()) check_bound(wedge_to_skew(i, j, ctx));
  Rng rng(seed);
  for (int trial = 0; trial < 100; ++trial) check_bound(random_skew(ctx, rng));

  const double quadratic = curvature_quadratic(op, t_hat);
  const double scale = spectrum(op).scale();
  return quadratic >= kappa * hat_sq - kSpectralEpsilon * scale * hat_sq;
}

}  // namespace curvlab
