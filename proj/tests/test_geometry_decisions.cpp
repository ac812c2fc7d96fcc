#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "curvlab/geometry_decisions.hpp"
#include "curvlab/sampling.hpp"

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

SpectralReport report(int n, std::vector<double> mu) {
  return SpectralReport::from_eigenvalues(SpaceContext(n), std::move(mu));
}

SpectralReport identity_report(int n) { return spectrum(CurvatureOperator::identity(SpaceContext(n))); }

bool has_note(const TheoremVerdict& v, const std::string& needle) {
  return std::any_of(v.notes.begin(), v.notes.end(),
                     [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

const auto kAll = AnalyticHypotheses::all_asserted();

}  // namespace

TEST_CASE("Kato constants") {
  CHECK(KatoConstant::generic().a() == 0.0);
  CHECK(KatoConstant::form(1, 4).a() == 1.0 / 3.0);
  CHECK(KatoConstant::form(2, 4).a() == 0.5);
  CHECK(KatoConstant::form(3, 4).a() == 1.0 / 3.0);
  CHECK(KatoConstant::einstein_weyl(5).a() == 0.5);
  CHECK(KatoConstant::zero_scalar_rm().a() == 0.5);
  expect_error(ErrorKind::invalid_argument, [] { KatoConstant::form(4, 4); });
  expect_error(ErrorKind::invalid_argument, [] { KatoConstant::form(0, 4); });
}

TEST_CASE("analytic hypotheses") {
  AnalyticHypotheses::Flags f;
  f.ricci_flat = true;
  const AnalyticHypotheses h(f);
  CHECK(h.flags().einstein);
  CHECK(h.flags().zero_scalar);
  CHECK_FALSE(h.flags().connected);

  AnalyticHypotheses::Flags g;
  g.connected = true;
  const auto m = h.merged(AnalyticHypotheses(g));
  CHECK(m.flags().connected);
  CHECK(m.flags().ricci_flat);
  CHECK_FALSE(m.flags().nonparabolic);
}

TEST_CASE("kappa threshold examples") {
  CHECK(kappa_threshold(2, 1, KatoConstant::generic()) == 1.0);
  CHECK(kappa_threshold(2, 0.5, KatoConstant::generic()) == 2.0);
  CHECK(kappa_threshold(2, 1, KatoConstant::zero_scalar_rm()) == 1.5);
  expect_error(ErrorKind::hypothesis_violation, [] { kappa_threshold(1.5, 1, KatoConstant::generic()); });
  expect_error(ErrorKind::hypothesis_violation, [] { kappa_threshold(2, 0, KatoConstant::generic()); });
  expect_error(ErrorKind::hypothesis_violation, [] { kappa_threshold(2, -1, KatoConstant::generic()); });
}

TEST_CASE("form threshold examples") {
  CHECK(std::abs(form_threshold(4, 1, 2) - 4.0 / 9.0) <= 1e-15);
  CHECK(std::abs(form_threshold(4, 2, 2) - 3.0 / 8.0) <= 1e-15);
  CHECK(std::abs(form_threshold(3, 1, 2) - 3.0 / 4.0) <= 1e-15);
  CHECK(form_threshold(4, 3, 2) == form_threshold(4, 1, 2));
  expect_error(ErrorKind::hypothesis_violation, [] { form_threshold(2, 1, 2); });
  expect_error(ErrorKind::hypothesis_violation, [] { form_threshold(4, 4, 2); });
  expect_error(ErrorKind::hypothesis_violation, [] { form_threshold(4, 1, 1); });
}

TEST_CASE("Weyl threshold examples") {
  CHECK(std::abs(weyl_threshold(4, 2, WeylVariant::generic) - 1.0 / 6.0) <= 1e-15);
  CHECK(std::abs(weyl_threshold(4, 2, WeylVariant::einstein) - 5.0 / 18.0) <= 1e-15);
  CHECK(std::abs(weyl_threshold(5, 2, WeylVariant::generic) - 1.0 / 8.0) <= 1e-15);
  expect_error(ErrorKind::unsupported_dimension, [] { weyl_threshold(3, 2, WeylVariant::generic); });
  expect_error(ErrorKind::hypothesis_violation, [] { weyl_threshold(4, 1.9, WeylVariant::generic); });
}

TEST_CASE("property: thresholds factor through the generic formula") {
  for (double Q : {2.0, 3.0, 4.0, 10.0}) {
    for (int n = 3; n <= 8; ++n)
      for (int l = 1; l <= n - 1; ++l) {
        const double direct = form_threshold(n, l, Q);
        const double via = kappa_threshold(Q, 1.0, KatoConstant::form(l, n)) / (l * (n - l));
        CHECK(std::abs(direct - via) <= 1e-12);
      }
    for (int n = 4; n <= 8; ++n) {
      const double direct = weyl_threshold(n, Q, WeylVariant::generic);
      const double via = kappa_threshold(Q, 0.5, KatoConstant::generic()) / (4.0 * (n - 1));
      CHECK(std::abs(direct - via) <= 1e-12);
      const double ein = weyl_threshold(n, Q, WeylVariant::einstein);
      CHECK(std::abs(ein - kappa_threshold(Q, 0.5, KatoConstant::einstein_weyl(n)) / (4.0 * (n - 1))) <= 1e-12);
      CHECK(ein > direct);
    }
  }
}

TEST_CASE("vanishing degrees") {
  CHECK(vanishing_degrees(5, 2) == std::vector<int>{1, 2, 3, 4});
  CHECK(vanishing_degrees(4, 1) == std::vector<int>{1, 3});
  CHECK(vanishing_degrees(4, 2) == std::vector<int>{1, 2, 3});
  CHECK(vanishing_degrees(7, 3) == std::vector<int>{1, 2, 3, 4, 5, 6});
  expect_error(ErrorKind::invalid_argument, [] { vanishing_degrees(4, 3); });
  expect_error(ErrorKind::invalid_argument, [] { vanishing_degrees(4, 0); });
}

TEST_CASE("harmonic tensor verdict examples") {
  const auto v = harmonic_tensor_verdict(identity_report(4), 4, 2, kAll);
  CHECK(v.theorem_id == "harmonic_tensor_nonnegative");
  CHECK(v.conclusion == Conclusion::vanishes);
  CHECK(v.all_satisfied());

  const auto w = harmonic_tensor_verdict(report(3, {-1, -1, 3}), 3, 2, kAll);
  CHECK(w.conclusion == Conclusion::not_applicable);
  CHECK(has_note(w, "failed hypothesis: curvature operator"));

  const auto open = harmonic_tensor_verdict(identity_report(4), 4, 2, AnalyticHypotheses());
  CHECK(open.conclusion == Conclusion::not_applicable);
  CHECK(has_note(open, "complete_noncompact"));

  const auto edge = harmonic_tensor_verdict(report(3, {-1, 1, 3}), 3, 2, kAll);
  CHECK(edge.conclusion == Conclusion::vanishes);
  CHECK(edge.marginal);
}

TEST_CASE("weighted tensor verdict examples") {
  const auto v = weighted_tensor_verdict(0.5, 2, 1, KatoConstant::generic(), kAll);
  CHECK(v.conclusion == Conclusion::vanishes);
  CHECK_FALSE(v.marginal);

  const auto edge = weighted_tensor_verdict(1.0, 2, 1, KatoConstant::generic(), kAll);
  CHECK(edge.conclusion == Conclusion::not_applicable);
  CHECK(edge.marginal);

  // the refined Kato constant moves the boundary
  CHECK(weighted_tensor_verdict(1.2, 2, 1, KatoConstant::zero_scalar_rm(), kAll).conclusion == Conclusion::vanishes);

  auto f = kAll.flags();
  f.nonparabolic = false;
  const auto np = weighted_tensor_verdict(0.5, 2, 1, KatoConstant::generic(), AnalyticHypotheses(f));
  CHECK(np.conclusion == Conclusion::not_applicable);
  CHECK(has_note(np, "nonparabolic"));

  expect_error(ErrorKind::hypothesis_violation,
               [] { weighted_tensor_verdict(-0.1, 2, 1, KatoConstant::generic(), kAll); });
}

TEST_CASE("form vanishing verdict examples") {
  const auto v = form_vanishing_verdict(identity_report(5), 5, 2, 2, kAll);
  CHECK(v.conclusion == Conclusion::vanishes);
  CHECK(v.degrees == std::vector<int>{1, 2, 3, 4});

  const auto z = form_vanishing_verdict(report(4, {0, 0, 0, 0, 0, 1}), 4, 1, 2, kAll);
  CHECK(z.conclusion == Conclusion::vanishes);
  CHECK(z.degrees == std::vector<int>{1, 3});
  CHECK(z.marginal);

  const auto n = form_vanishing_verdict(report(4, {-1, 0, 3, 3, 3, 3}), 4, 2, 2, kAll);
  CHECK(n.conclusion == Conclusion::not_applicable);
  CHECK(n.degrees.empty());

  expect_error(ErrorKind::invalid_argument, [] { form_vanishing_verdict(identity_report(4), 4, 3, 2, kAll); });
  expect_error(ErrorKind::dimension_mismatch,
               [] { form_vanishing_verdict(identity_report(4), 5, 1, 2, kAll); });
}

TEST_CASE("weighted form verdict") {
  const auto v = weighted_form_verdict(4, 1, 1, 2, 0.4, kAll);
  CHECK(v.conclusion == Conclusion::vanishes);
  CHECK(v.degrees == std::vector<int>{1, 3});
  CHECK(weighted_form_verdict(4, 1, 1, 2, 0.5, kAll).conclusion == Conclusion::not_applicable);
  CHECK(weighted_form_verdict(4, 1, 1, 2, 4.0 / 9.0, kAll).marginal);
  expect_error(ErrorKind::invalid_argument, [] { weighted_form_verdict(4, 1, 2, 2, 0.1, kAll); });
}

TEST_CASE("Weyl verdict examples") {
  const auto v = weyl_verdict(4, 2, 0.1, WeylVariant::generic, kAll);
  CHECK(v.theorem_id == "weyl_generic");
  AnalyticHypotheses::Flags f = kAll.flags();
  f.ricci_flat = false;
  f.einstein = false;
  const AnalyticHypotheses not_einstein(f);
  CHECK(weyl_verdict(4, 2, 0.1, WeylVariant::generic, not_einstein).conclusion ==
        Conclusion::locally_conformally_flat);
  CHECK(weyl_verdict(4, 2, 0.2, WeylVariant::generic, not_einstein).conclusion == Conclusion::not_applicable);

  AnalyticHypotheses::Flags r;
  r.ricci_flat = true;
  r.complete_noncompact = true;
  r.connected = true;
  const auto flat = weyl_verdict(5, 2, 0.0, WeylVariant::generic, AnalyticHypotheses(r));
  CHECK(flat.conclusion == Conclusion::flat);
  CHECK(flat.theorem_id == "ricci_flat_rigidity");
  CHECK(has_note(flat, "inferred from the Einstein condition"));

  const auto ein = weyl_verdict(4, 2, 0.2, WeylVariant::einstein, not_einstein.merged(AnalyticHypotheses(r)));
  // positive kappa leaves the rigidity branch even when Ricci-flat
  CHECK(ein.conclusion == Conclusion::constant_sectional_curvature);
  f.einstein = true;
  const auto e2 = weyl_verdict(4, 2, 0.2, WeylVariant::einstein, AnalyticHypotheses(f));
  CHECK(e2.conclusion == Conclusion::constant_sectional_curvature);
  CHECK(has_note(e2, "2/(n-2)"));

  f.einstein = false;
  f.divergence_free_weyl = false;
  CHECK(weyl_verdict(4, 2, 0.1, WeylVariant::generic, AnalyticHypotheses(f)).conclusion ==
        Conclusion::not_applicable);

  expect_error(ErrorKind::unsupported_dimension, [] { weyl_verdict(3, 2, 0.0, WeylVariant::generic, kAll); });
}

TEST_CASE("hypersurface operator examples") {
  const auto check_diag = [](std::vector<double> lambdas, double K, std::vector<double> want) {
    const auto op = hypersurface_operator(HypersurfaceSpec::make(std::move(lambdas), K));
    Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(3, 3);
    for (int a = 0; a < 3; ++a) expected(a, a) = want[static_cast<std::size_t>(a)];
    CHECK((op.matrix() - expected).cwiseAbs().maxCoeff() == 0.0);
  };
  check_diag({1, 1, 1}, 0, {1, 1, 1});
  check_diag({1, 2, 3}, 0, {2, 3, 6});
  check_diag({1, 1, -1}, 1, {2, 0, 0});

  expect_error(ErrorKind::unsupported_dimension, [] { HypersurfaceSpec::make({1}, 0); });
  expect_error(ErrorKind::validation, [] { HypersurfaceSpec::make({1, NAN}, 0); });
}

TEST_CASE("second kind means examples") {
  CHECK(second_kind_means(HypersurfaceSpec::make({1, 2, 3}, 0)) == std::vector<double>{2, 3, 6});
  CHECK(second_kind_means(HypersurfaceSpec::make({1, 1, -1}, 0)) == std::vector<double>{-1, -1, 1});
  CHECK(second_kind_means(HypersurfaceSpec::make({0, 0, 0}, 0)) == std::vector<double>{0, 0, 0});
}

TEST_CASE("property: hypersurface operator matches the Gauss equation") {
  Rng rng(51);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + rng.below(5);
    std::vector<double> lambdas(static_cast<std::size_t>(n));
    for (double& l : lambdas) l = rng.uniform(-3, 3);
    const double K = rng.uniform(-2, 2);
    const auto spec = HypersurfaceSpec::make(lambdas, K);
    const auto gauss = to_operator(hypersurface_curvature(spec));
    CHECK((gauss.matrix() - hypersurface_operator(spec).matrix()).cwiseAbs().maxCoeff() <= 1e-12);

    const auto flat = HypersurfaceSpec::make(lambdas, 0.0);
    const auto mu = spectrum(hypersurface_operator(flat)).eigenvalues();
    const auto means = second_kind_means(flat);
    for (std::size_t a = 0; a < mu.size(); ++a) CHECK(std::abs(mu[a] - means[a]) <= 1e-12);
  }
}

TEST_CASE("Betti verdict examples") {
  const auto v = betti_verdict(HypersurfaceSpec::make({1, 1, 1, 1}, 0), 2, true);
  CHECK(v.conclusion == Conclusion::betti_range_zero);
  CHECK(v.degrees == std::vector<int>{1, 2, 3});
  CHECK_FALSE(v.marginal);

  const auto edge = betti_verdict(HypersurfaceSpec::make({1, 1, -1}, 1), 1, true);
  CHECK(edge.conclusion == Conclusion::parallel);
  CHECK(edge.marginal);
  CHECK(edge.degrees == std::vector<int>{1, 2});

  const auto open = betti_verdict(HypersurfaceSpec::make({1, 1, 1, 1}, 0), 2, false);
  CHECK(open.conclusion == Conclusion::not_applicable);
  CHECK(has_note(open, "closed"));

  CHECK(betti_verdict(HypersurfaceSpec::make({1, 1, -1}, 0), 1, true).conclusion == Conclusion::not_applicable);
  expect_error(ErrorKind::invalid_argument, [] { betti_verdict(HypersurfaceSpec::make({1, 1, 1}, 0), 2, true); });
  expect_error(ErrorKind::invalid_argument, [] { betti_verdict(HypersurfaceSpec::make({1, 1}, 0), 1, true); });
}

TEST_CASE("property: Betti vanishing is monotone in p") {
  Rng rng(52);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 3 + rng.below(6);
    std::vector<double> lambdas(static_cast<std::size_t>(n));
    for (double& l : lambdas) l = rng.uniform(-2, 2);
    const auto spec = HypersurfaceSpec::make(lambdas, rng.uniform(-1, 1));
    bool lower_all_zero = true;
    for (int p = 1; p <= n / 2; ++p) {
      const bool zero = betti_verdict(spec, p, true).conclusion == Conclusion::betti_range_zero;
      if (zero) CHECK(lower_all_zero);
      lower_all_zero = lower_all_zero && zero;
    }
  }
}

TEST_CASE("umbilic verdict examples") {
  const auto v = umbilic_verdict(UmbilicSpec::make(4, 1.0, std::vector<double>(10, 0.0)), 2, true);
  CHECK(v.conclusion == Conclusion::betti_range_zero);
  CHECK(v.degrees == std::vector<int>{1, 2, 3});

  const auto edge = umbilic_verdict(UmbilicSpec::make(4, 1.0, {-1, -1, 0, 0, 0, 0}), 2, true);
  CHECK(edge.conclusion == Conclusion::parallel);
  CHECK(edge.marginal);
  CHECK(edge.degrees == std::vector<int>{2});

  CHECK(umbilic_verdict(UmbilicSpec::make(4, 0.0, {-1, 0, 0, 0, 0, 0}), 2, true).conclusion ==
        Conclusion::not_applicable);
  expect_error(ErrorKind::invalid_argument, [] { umbilic_verdict(UmbilicSpec::make(4, 1.0, {0}), 2, true); });
  expect_error(ErrorKind::validation, [] { UmbilicSpec::make(4, -1.0, {0, 0}); });
  expect_error(ErrorKind::validation, [] { UmbilicSpec::make(4, 1.0, {1, 0}); });
}

TEST_CASE("first eigenvalue weight") {
  const auto w = first_eigenvalue_weight(1.0);
  CHECK(w.rho == 1.0);
  CHECK(w.hypotheses.flags().weighted_poincare);
  CHECK(w.hypotheses.flags().liminf_rho_positive);
  CHECK(w.hypotheses.flags().nonparabolic);
  expect_error(ErrorKind::hypothesis_violation, [] { first_eigenvalue_weight(0.0); });
  expect_error(ErrorKind::hypothesis_violation, [] { first_eigenvalue_weight(-1.0); });

  AnalyticHypotheses::Flags f;
  f.complete_noncompact = true;
  f.connected = true;
  const auto spec = HypersurfaceSpec::make({1, 1, 1, 1}, 0);
  const auto v = submanifold_form_verdict(spec, 1, 1, 2, 0.1, first_eigenvalue_weight(2.0), AnalyticHypotheses(f));
  CHECK(v.theorem_id == "submanifold_weighted_form");
  CHECK(v.conclusion == Conclusion::vanishes);
  CHECK(v.degrees == std::vector<int>{1, 3});
  CHECK(submanifold_form_verdict(spec, 1, 1, 2, 0.5, first_eigenvalue_weight(2.0), AnalyticHypotheses(f))
            .conclusion == Conclusion::not_applicable);

  // curvature average -(1 + 1 + 1)/3 = -1 against -kappa*lambda1 = -0.2
  const auto neg = HypersurfaceSpec::make({1, 1, 1, -1}, 0);
  const auto bad = submanifold_form_verdict(neg, 1, 1, 2, 0.1, first_eigenvalue_weight(2.0), AnalyticHypotheses(f));
  CHECK(bad.conclusion == Conclusion::not_applicable);
  CHECK(has_note(bad, "curvature average bound"));
}

TEST_CASE("property: verdicts only conclude when every hypothesis holds") {
  Rng rng(53);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 4 + rng.below(4);
    AnalyticHypotheses::Flags f;
    f.complete_noncompact = rng.below(2) == 1;
    f.connected = rng.below(2) == 1;
    f.weighted_poincare = rng.below(2) == 1;
    f.liminf_rho_positive = rng.below(2) == 1;
    f.nonparabolic = rng.below(2) == 1;
    f.divergence_free_weyl = rng.below(2) == 1;
    f.einstein = rng.below(2) == 1;
    const AnalyticHypotheses hyp(f);
    const double kappa = rng.uniform(0, 1);
    const double Q = 2 + rng.uniform(0, 4);
    const auto rep = spectrum(to_operator(random_curvature(SpaceContext(n), rng)));
    const std::vector<TheoremVerdict> verdicts{
        harmonic_tensor_verdict(rep, n, Q, hyp),
        weighted_tensor_verdict(kappa, Q, 1, KatoConstant::generic(), hyp),
        form_vanishing_verdict(rep, n, 1, Q, hyp),
        weighted_form_verdict(n, 1, 1, Q, kappa, hyp),
        weyl_verdict(n, Q, kappa, WeylVariant::generic, hyp),
        weyl_verdict(n, Q, kappa, WeylVariant::einstein, hyp),
    };
    for (const auto& v : verdicts) {
      if (v.conclusion != Conclusion::not_applicable) CHECK(v.all_satisfied());
      else CHECK_FALSE(v.all_satisfied());
    }
  }
}

TEST_CASE("conclusion names") {
  CHECK(to_string(Conclusion::betti_range_zero) == "betti_range_zero");
  CHECK(to_string(Conclusion::locally_conformally_flat) == "locally_conformally_flat");
  CHECK(to_string(WeylVariant::einstein) == "einstein");
}
