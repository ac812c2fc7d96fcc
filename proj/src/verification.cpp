#include "curvlab/verification.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "curvlab/geometry_decisions.hpp"
#include "curvlab/sampling.hpp"
#include "curvlab/spectral_conditions.hpp"

namespace curvlab {

namespace {

constexpr double kTiny = std::numeric_limits<double>::min();

double safe_ratio(double num, double den) { return den > kTiny ? num / den : num; }

}  // namespace

double form_hat_residual(const AlternatingForm& w) {
  const int n = w.context().dim();
  const int l = w.degree();
  const double expected = static_cast<double>(l * (n - l)) * w.tensor().norm_squared();
  return safe_ratio(std::abs(hat_norm_squared(w.tensor()) - expected), expected);
}

double curvature_hat_residual(const CurvatureTensor& rm) {
  const int n = rm.dim();
  const double lhs = hat_norm_squared(rm.tensor());
  const double ric0 = traceless_ricci(rm).matrix().squaredNorm();
  const double rhs = 4.0 * (n - 1) * traceless_part(rm).norm_squared() - 8.0 * ric0;
  return safe_ratio(std::abs(lhs - rhs), std::max(rm.norm_squared(), lhs));
}

double weitzenboeck_residual(const CurvatureTensor& rm, const DenseTensor& s, const DenseTensor& t) {
  const double lhs = inner(weitzenboeck(rm, s), t);
  const double rhs = curvature_pairing(to_operator(rm), hat(s), hat(t));
  return safe_ratio(std::abs(lhs - rhs), std::max(1.0, rm.norm()) * s.norm() * t.norm());
}

double DecompositionResiduals::max() const {
  return std::max({reconstruction, orthogonality, weyl_ricci});
}

DecompositionResiduals decomposition_residuals(const CurvatureTensor& rm) {
  const DecompositionParts parts = decompose(rm);
  const double norm = rm.norm();
  DecompositionResiduals r;
  r.reconstruction = safe_ratio((rm - parts.scal_part - parts.ricci_part - parts.weyl).norm(), norm);
  const double n2 = rm.norm_squared();
  r.orthogonality = std::max({
      safe_ratio(std::abs(inner(parts.scal_part.tensor(), parts.ricci_part.tensor())), n2),
      safe_ratio(std::abs(inner(parts.scal_part.tensor(), parts.weyl.tensor())), n2),
      safe_ratio(std::abs(inner(parts.ricci_part.tensor(), parts.weyl.tensor())), n2),
  });
  r.weyl_ricci = safe_ratio(ricci_contraction(parts.weyl).norm(), norm);
  return r;
}

// Suites ---------------------------------------------------------------------

namespace {

struct Tracker {
  SuiteResult& result;

  void record(double residual) {
    result.max_residual = std::max(result.max_residual, residual);
    if (!(residual <= result.tolerance)) ++result.violations;
  }
  void require(bool ok) {
    if (!ok) ++result.violations;
  }
};

using SuiteFn = std::function<void(SpaceContext, int, std::uint64_t, SuiteResult&)>;

void suite_prop25a(SpaceContext ctx, int trials, std::uint64_t seed, SuiteResult& out) {
  Tracker tr{out};
  const int n = ctx.dim();
  for (int l = 1; l <= n - 1; ++l)
    for (int t = 0; t < trials; ++t) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(l) * trials + t));
      tr.record(form_hat_residual(random_form(ctx, l, rng)));
    }
  out.notes.push_back("degrees 1.." + std::to_string(n - 1) + ", " + std::to_string(trials) +
                      " forms each");
}

void suite_prop25b(SpaceContext ctx, int trials, std::uint64_t seed, SuiteResult& out) {
  Tracker tr{out};
  const int n = ctx.dim();
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    const CurvatureTensor rm = random_curvature(ctx, rng);
    tr.record(curvature_hat_residual(rm));
    // A generic tensor is not of constant curvature and has nonzero hat.
    const double scale = rm.norm_squared();
    tr.require(hat(rm).norm_squared() > kRelTol * scale);
    tr.require(traceless_part(rm).norm_squared() > kRelTol * scale);
  }
  // Constant curvature: Rm^ = 0 and the traceless part vanishes. Adding a
  // traceless piece breaks both.
  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(trials)));
  for (int kappa = -2; kappa <= 2; ++kappa) {
    const CurvatureTensor rm = constant_curvature(ctx, kappa);
    const double scale = std::max(1.0, rm.norm_squared());
    tr.record(safe_ratio(hat(rm).norm_squared(), scale));
    tr.record(safe_ratio(traceless_part(rm).norm_squared(), scale));
    tr.record(curvature_hat_residual(rm));
    const CurvatureTensor bumped = rm + 1e-3 * traceless_part(random_curvature(ctx, rng));
    tr.require(hat(bumped).norm_squared() > kRelTol * scale);
  }
  out.notes.push_back("constant-curvature family kappa in {-2,-1,0,1,2}: hat vanishes");
  if (n == 3) {
    for (int t = 0; t < std::min(trials, 50); ++t) {
      Rng r(derive_seed(seed, static_cast<std::uint64_t>(trials) + 1 + t));
      const CurvatureTensor rm = random_curvature(ctx, r);
      tr.record(safe_ratio(decompose(rm).weyl.norm(), rm.norm()));
    }
    out.notes.push_back("n = 3: the Weyl part vanishes identically");
  }
}

void suite_prop23(SpaceContext ctx, int trials, std::uint64_t seed, SuiteResult& out) {
  Tracker tr{out};
  for (int k = 1; k <= 3; ++k)
    for (int t = 0; t < trials; ++t) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k) * trials + t));
      const CurvatureTensor rm = random_curvature(ctx, rng);
      const DenseTensor s = random_tensor(ctx, k, rng);
      const DenseTensor u = random_tensor(ctx, k, rng);
      tr.record(weitzenboeck_residual(rm, s, u));
    }
  out.notes.push_back("arities 1..3, " + std::to_string(trials) + " triples each");
}

// Reports lhs/rhs - 1 clipped at zero; the tolerance is the permitted slack.
double bound_excess(double lhs, double rhs) {
  return std::max(0.0, safe_ratio(lhs - rhs, std::max(rhs, 1.0)));
}

void suite_lemma25_bounds(SpaceContext ctx, int trials, std::uint64_t seed, SuiteResult& out) {
  Tracker tr{out};
  const int n = ctx.dim();
  double worst[3] = {0.0, 0.0, 0.0};
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    const SkewEndomorphism L = random_skew(ctx, rng);
    const double l2 = L.norm_squared();

    const int k = 1 + t % 4;
    const DenseTensor T = random_tensor(ctx, k, rng);
    const double a_lhs = lt_action(L, T).norm_squared();
    const double a_rhs = static_cast<double>(k * k) * T.norm_squared() * l2;
    worst[0] = std::max(worst[0], safe_ratio(a_lhs, a_rhs));
    tr.record(bound_excess(a_lhs, a_rhs));

    const int l = 1 + t % (n - 1);
    const AlternatingForm w = random_form(ctx, l, rng);
    const double b_lhs = lt_action(L, w.tensor()).norm_squared();
    const double b_rhs = std::min(l, n - l) * w.tensor().norm_squared() * l2;
    worst[1] = std::max(worst[1], safe_ratio(b_lhs, b_rhs));
    tr.record(bound_excess(b_lhs, b_rhs));

    const CurvatureTensor rm = random_curvature(ctx, rng);
    const double c_lhs = lt_action(L, rm.tensor()).norm_squared();
    const double c_rhs = 8.0 * traceless_part(rm).norm_squared() * l2;
    worst[2] = std::max(worst[2], safe_ratio(c_lhs, c_rhs));
    tr.record(bound_excess(c_lhs, c_rhs));
  }
  out.notes.push_back("largest lhs/rhs: tensor " + format_number(worst[0]) + ", form " +
                      format_number(worst[1]) + ", curvature " + format_number(worst[2]));
}

void suite_lemma24(SpaceContext ctx, int trials, std::uint64_t seed, SuiteResult& out) {
  Tracker tr{out};
  const int n = ctx.dim();
  const int N = ctx.bivector_dim();
  long strict_cases = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    Eigen::MatrixXd m = to_operator(random_curvature(ctx, rng)).matrix();
    // Odd trials shift by a multiple of the identity so that the prefix sums
    // take both signs.
    if (t % 2 == 1) m += rng.uniform(-1.0, 3.0) * Eigen::MatrixXd::Identity(N, N);
    const CurvatureOperator op = CurvatureOperator::from_matrix(ctx, m);
    const int l = 1 + t % (n - 1);
    const AlternatingForm w = random_form(ctx, l, rng);

    const int C = n - l;
    const SpectralReport report = spectrum(op);
    const double kappa = kappa_lower_bound(report, C);
    const HatTensor w_hat = hat(w);
    const double hat_sq = w_hat.norm_squared();
    const double quad = curvature_quadratic(op, w_hat);
    tr.record(std::max(0.0, -(quad - kappa * hat_sq) / (report.scale() * hat_sq)));

    if (classify_m(report, C) == Positivity::positive) {
      ++strict_cases;
      tr.require(quad > 0.0);
    }
  }
  out.notes.push_back("C = n - l; strictly positive prefix in " + std::to_string(strict_cases) +
                      " trials");
}

void suite_decomposition(SpaceContext ctx, int trials, std::uint64_t seed, SuiteResult& out) {
  Tracker tr{out};
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    tr.record(decomposition_residuals(random_curvature(ctx, rng)).max());
  }
}

void suite_hypersurface_oracle(SpaceContext ctx, int trials, std::uint64_t seed, SuiteResult& out) {
  Tracker tr{out};
  const int n = ctx.dim();
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    std::vector<double> lambdas(static_cast<std::size_t>(n));
    for (double& l : lambdas) l = rng.uniform(-2.0, 2.0);
    const double K = rng.uniform(-2.0, 2.0);
    const auto spec = HypersurfaceSpec::make(lambdas, K);

    const CurvatureTensor rm = hypersurface_curvature(spec);
    tr.record(curvature_residuals(rm.tensor()).max());
    const Eigen::MatrixXd m = to_operator(rm).matrix();
    std::vector<double> expected;
    double entry_err = 0.0;
    for (const auto& [i, j] : ctx.pairs()) {
      const int a = ctx.pair_index(i, j);
      for (int b = 0; b < ctx.bivector_dim(); ++b) {
        const double want = a == b ? K + lambdas[static_cast<std::size_t>(i)] *
                                             lambdas[static_cast<std::size_t>(j)]
                                   : 0.0;
        entry_err = std::max(entry_err, std::abs(m(a, b) - want));
      }
      expected.push_back(K + lambdas[static_cast<std::size_t>(i)] * lambdas[static_cast<std::size_t>(j)]);
    }
    tr.record(entry_err);
    std::sort(expected.begin(), expected.end());
    const SpectralReport report = spectrum(to_operator(rm));
    double spec_err = 0.0;
    for (std::size_t a = 0; a < expected.size(); ++a)
      spec_err = std::max(spec_err, std::abs(report.eigenvalues()[a] - expected[a]));
    tr.record(spec_err);
  }
}

struct SuiteEntry {
  int min_dimension;
  double tolerance;
  SuiteFn fn;
};

const std::map<std::string, SuiteEntry, std::less<>>& registry() {
  static const std::map<std::string, SuiteEntry, std::less<>> r = {
      {"prop25a", {2, 1e-9, suite_prop25a}},
      {"prop25b", {3, 1e-9, suite_prop25b}},
      {"prop23", {2, 1e-9, suite_prop23}},
      {"lemma25_bounds", {2, 1e-12, suite_lemma25_bounds}},
      {"lemma24", {2, 1e-9, suite_lemma24}},
      {"decomposition", {3, 1e-9, suite_decomposition}},
      {"hypersurface_oracle", {2, 1e-12, suite_hypersurface_oracle}},
  };
  return r;
}

const SuiteEntry& lookup(std::string_view name) {
  const auto& r = registry();
  const auto it = r.find(name);
  if (it == r.end())
    throw Error(ErrorKind::invalid_argument, "unknown suite '" + std::string(name) + "'");
  return it->second;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "prop25a", "prop25b", "prop23", "lemma25_bounds", "lemma24", "decomposition", "hypersurface_oracle",
  };
  return names;
}

int suite_min_dimension(std::string_view name) { return lookup(name).min_dimension; }

SuiteResult run_suite(std::string_view name, int n, int trials, std::uint64_t seed) {
  const SuiteEntry& entry = lookup(name);
  if (n < entry.min_dimension)
    throw Error(ErrorKind::invalid_argument, "suite " + std::string(name) + " needs n >= " +
                                                 std::to_string(entry.min_dimension));
  if (trials < 1) throw Error(ErrorKind::invalid_argument, "trials must be positive");
  const SpaceContext ctx(n);
  SuiteResult result;
  result.name = std::string(name);
  result.n = n;
  result.trials = trials;
  result.seed = seed;
  result.tolerance = entry.tolerance;
  entry.fn(ctx, trials, seed, result);
  return result;
}

}  // namespace curvlab
