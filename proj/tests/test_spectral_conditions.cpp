#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "curvlab/sampling.hpp"
#include "curvlab/spectral_conditions.hpp"

using namespace curvlab;

namespace {

template <typename Fn>
void expect_error(ErrorKind kind, Fn&& fn) {
  try {
    fn();
    FAIL("expected an error");
  } catch (const Error& err) {
    CHECK(err.kind() == kind);
  }
}

SpectralReport report3(std::vector<double> mu) {
  return SpectralReport::from_eigenvalues(SpaceContext(3), std::move(mu));
}

std::vector<double> diag_entries(const CurvatureOperator& op) {
  std::vector<double> d(static_cast<std::size_t>(op.matrix().rows()));
  for (std::size_t a = 0; a < d.size(); ++a) d[a] = op.matrix()(a, a);
  return d;
}

}  // namespace

TEST_CASE("spectrum examples") {
  CHECK(spectrum(CurvatureOperator::identity(SpaceContext(3))).eigenvalues() == std::vector<double>{1, 1, 1});

  const std::vector<double> d{6, 2, 3};
  const auto rep = spectrum(CurvatureOperator::diagonal(SpaceContext(3), d));
  CHECK(rep.eigenvalues() == std::vector<double>{2, 3, 6});
  CHECK(rep.prefix_sums() == std::vector<double>{0, 2, 5, 11});
  CHECK(rep.scale() == 6.0);

  const auto sphere = spectrum(to_operator(constant_curvature(SpaceContext(4), 1.0)));
  REQUIRE(sphere.size() == 6);
  for (double mu : sphere.eigenvalues()) CHECK(std::abs(mu - 1.0) < 1e-14);

  CHECK(spectrum(CurvatureOperator::diagonal(SpaceContext(3), std::vector<double>{-0.25, 0.1, 0.2})).scale() == 1.0);
}

TEST_CASE("spectral report validation") {
  expect_error(ErrorKind::dimension_mismatch, [] { report3({1, 2}); });
  expect_error(ErrorKind::validation, [] { report3({1, 2, std::numeric_limits<double>::quiet_NaN()}); });
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(3, 3);
  m(1, 2) = 1e-3;
  expect_error(ErrorKind::invalid_operator, [&] { CurvatureOperator::from_matrix(SpaceContext(3), m); });
  const auto rep = report3({3, 1, 2});
  CHECK(rep.eigenvalues() == std::vector<double>{1, 2, 3});
  expect_error(ErrorKind::invalid_argument, [&] { rep.prefix_sum(4); });
  expect_error(ErrorKind::invalid_argument, [&] { classify_m(rep, 0); });
  expect_error(ErrorKind::invalid_argument, [&] { kappa_lower_bound(rep, 4); });
}

TEST_CASE("m-positivity classification examples") {
  CHECK(classify_m(report3({0, 0, 2}), 2) == Positivity::nonnegative_not_positive);
  CHECK(is_marginal(report3({0, 0, 2}), 2));
  CHECK(classify_m(report3({1, 1, 1}), 2) == Positivity::positive);
  CHECK_FALSE(is_marginal(report3({1, 1, 1}), 2));
  CHECK(classify_m(report3({-1, -1, 3}), 2) == Positivity::indefinite);
  CHECK(classify_m(report3({-1, -1, 3}), 3) == Positivity::positive);

  // the zero band scales with the spectrum
  CHECK(classify_m(report3({-5e-10, 1, 1}), 1) == Positivity::nonnegative_not_positive);
  CHECK(classify_m(report3({-2e-9, 1, 1}), 1) == Positivity::indefinite);
  CHECK(classify_m(report3({-2e-9, 1, 10}), 1) == Positivity::nonnegative_not_positive);
  CHECK(classify_m(report3({2e-9, 1, 1}), 1) == Positivity::positive);
}

TEST_CASE("kappa lower bound examples") {
  CHECK(kappa_lower_bound(report3({2, 3, 6}), 2) == 2.5);
  for (int m = 1; m <= 3; ++m) CHECK(kappa_lower_bound(report3({1, 1, 1}), m) == 1.0);
  CHECK(kappa_lower_bound(report3({-4, 1, 1}), 1) == -4.0);
}

TEST_CASE("property: spectra of random symmetric operators") {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const SpaceContext ctx(2 + rng.below(7));
    const auto op = random_symmetric_operator(ctx, rng);
    const auto rep = spectrum(op);
    const auto& mu = rep.eigenvalues();
    REQUIRE(rep.size() == ctx.bivector_dim());
    CHECK(std::is_sorted(mu.begin(), mu.end()));

    double total = 0.0;
    for (double v : mu) total += v;
    const double tr = op.matrix().trace();
    CHECK(std::abs(total - tr) <= 1e-9 * std::max(1.0, std::abs(tr)) + 1e-12 * rep.scale());

    for (int m = 1; m <= rep.size(); ++m) {
      CHECK(rep.prefix_sums()[m] - rep.prefix_sums()[m - 1] == doctest::Approx(mu[m - 1]).epsilon(1e-12));
      if (m > 1) CHECK(kappa_lower_bound(rep, m) >= kappa_lower_bound(rep, m - 1) - 1e-14 * rep.scale());
    }

    // each eigenvalue is a root: R - mu I has a (numerically) zero singular value
    const int N = ctx.bivector_dim();
    for (double v : mu) {
      const Eigen::MatrixXd shifted = op.matrix() - v * Eigen::MatrixXd::Identity(N, N);
      const double smin = Eigen::JacobiSVD<Eigen::MatrixXd>(shifted).singularValues()(N - 1);
      CHECK(smin <= 1e-9 * rep.scale());
    }
  }
}

TEST_CASE("property: positivity is monotone in m") {
  Rng rng(42);
  for (int trial = 0; trial < 500; ++trial) {
    const SpaceContext ctx(2 + rng.below(5));
    const auto op = random_symmetric_operator(ctx, rng);
    // shift so that every classification occurs
    const double shift = rng.uniform(-1.0, 2.0);
    Eigen::MatrixXd m = op.matrix() + shift * Eigen::MatrixXd::Identity(op.matrix().rows(), op.matrix().rows());
    const auto rep = spectrum(CurvatureOperator::from_matrix(ctx, m));
    bool seen_positive = false;
    for (int k = 1; k <= rep.size(); ++k) {
      const auto cls = classify_m(rep, k);
      if (seen_positive) CHECK(cls == Positivity::positive);
      seen_positive = seen_positive || cls == Positivity::positive;
    }
  }
}

TEST_CASE("sampled curvature lower bound examples") {
  const SpaceContext c3(3);
  const auto e1 = DenseTensor::basis_covector(c3, 0);
  const auto id = CurvatureOperator::identity(c3);
  CHECK(curvature_quadratic(id, e1) == hat_norm_squared(e1));
  CHECK(lemma22_check(id, e1, 2.0, 1.0, 1));
  CHECK(lemma22_check(id, e1, 2.0, kappa_lower_bound(spectrum(id), 2), 1));

  Rng rng(43);
  const auto rm = random_curvature(c3, rng);
  CHECK(lemma22_check(to_operator(rm), DenseTensor(c3, 1), 2.0, 0.0, 2));
  CHECK(lemma22_check(to_operator(rm), DenseTensor(c3, 1), 2.0, -3.0, 2));

  const auto op = CurvatureOperator::diagonal(c3, std::vector<double>{-1, 5, 5});
  const double kappa = kappa_lower_bound(spectrum(op), 2);
  CHECK(kappa == 2.0);
  for (int t = 0; t < 20; ++t) {
    const auto w = random_form(c3, 1, rng);
    // brute force: diagonal operator pairs each slice with itself
    const auto h = hat(w);
    const double q = -1.0 * h.slice(0).norm_squared() + 5.0 * h.slice(1).norm_squared() +
                     5.0 * h.slice(2).norm_squared();
    CHECK(curvature_quadratic(op, w.tensor()) == doctest::Approx(q).epsilon(1e-14));
    CHECK(q >= kappa * h.norm_squared() - 1e-12);
    CHECK(lemma22_check(op, w.tensor(), 2.0, kappa, static_cast<std::uint64_t>(t)));
  }
}

TEST_CASE("sampled curvature lower bound rejects bad constants") {
  const SpaceContext c3(3);
  const auto e1 = DenseTensor::basis_covector(c3, 0);
  expect_error(ErrorKind::invalid_argument,
               [&] { lemma22_check(CurvatureOperator::identity(c3), e1, 0.5, 0.0, 1); });
  // a general 2-tensor does not satisfy the bound with C = n
  Rng rng(44);
  const auto T = random_tensor(c3, 2, rng);
  expect_error(ErrorKind::invalid_argument,
               [&] { lemma22_check(CurvatureOperator::identity(c3), T, 3.0, 0.0, 1); });
  expect_error(ErrorKind::dimension_mismatch, [&] {
    lemma22_check(CurvatureOperator::identity(SpaceContext(4)), e1, 2.0, 0.0, 1);
  });
}

TEST_CASE("property: sampled lower bound holds for forms with C = n - l") {
  Rng rng(45);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + rng.below(4);
    const SpaceContext ctx(n);
    const int l = 1 + rng.below(n - 1);
    const auto op = to_operator(random_curvature(ctx, rng));
    const auto w = random_form(ctx, l, rng);
    const int C = n - l;
    const auto rep = spectrum(op);
    CHECK(lemma22_check(op, w.tensor(), C, kappa_lower_bound(rep, C), derive_seed(45, trial)));
    if (rep.prefix_sum(C) > kSpectralEpsilon * rep.scale()) CHECK(curvature_quadratic(op, w.tensor()) > 0.0);
  }
}

TEST_CASE("positivity names") {
  CHECK(to_string(Positivity::positive) == "positive");
  CHECK(to_string(Positivity::nonnegative_not_positive) == "nonnegative_not_positive");
  CHECK(to_string(Positivity::indefinite) == "indefinite");
}
