#include "curvlab/curvature_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace curvlab {

namespace {

double symmetric_tolerance(const Eigen::MatrixXd& m) {
  return 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff());
}

void require_same_space(const SpaceContext& a, const SpaceContext& b, const char* what) {
  if (a != b)
    throw Error(ErrorKind::dimension_mismatch,
                std::string(what) + ": n=" + std::to_string(a.dim()) + " vs n=" +
                    std::to_string(b.dim()));
}

std::string fmt_residual(double r, double tol) {
  return "residual " + format_number(r) + " exceeds tolerance " + format_number(tol);
}

}  // namespace

// SymmetricBilinear ----------------------------------------------------------

SymmetricBilinear SymmetricBilinear::from_matrix(SpaceContext ctx, Eigen::MatrixXd matrix) {
  if (matrix.rows() != ctx.dim() || matrix.cols() != ctx.dim())
    throw Error(ErrorKind::dimension_mismatch, "symmetric bilinear form must be n x n");
  if (!matrix.allFinite()) throw Error(ErrorKind::validation, "bilinear form has non-finite entries");
  const double residual = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
  if (residual > symmetric_tolerance(matrix))
    throw Error(ErrorKind::validation, "bilinear form is not symmetric: " +
                                           fmt_residual(residual, symmetric_tolerance(matrix)));
  return SymmetricBilinear(ctx, std::move(matrix));
}

SymmetricBilinear SymmetricBilinear::identity(SpaceContext ctx) {
  return SymmetricBilinear(ctx, Eigen::MatrixXd::Identity(ctx.dim(), ctx.dim()));
}

SymmetricBilinear SymmetricBilinear::diagonal(SpaceContext ctx, std::span<const double> entries) {
  if (static_cast<int>(entries.size()) != ctx.dim())
    throw Error(ErrorKind::dimension_mismatch, "diagonal needs n entries");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(ctx.dim(), ctx.dim());
  for (int i = 0; i < ctx.dim(); ++i) m(i, i) = entries[static_cast<std::size_t>(i)];
  return from_matrix(ctx, std::move(m));
}

// CurvatureTensor ------------------------------------------------------------

double CurvatureResiduals::max() const {
  return std::max({first_pair, second_pair, pair_swap, bianchi});
}

CurvatureResiduals curvature_residuals(const DenseTensor& t) {
  if (t.arity() != 4) throw Error(ErrorKind::invalid_argument, "curvature tensors have arity 4");
  CurvatureResiduals r;
  const int n = t.dim();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int w = 0; w < n; ++w) {
          const double v = t(x, y, z, w);
          r.first_pair = std::max(r.first_pair, std::abs(v + t(y, x, z, w)));
          r.second_pair = std::max(r.second_pair, std::abs(v + t(x, y, w, z)));
          r.pair_swap = std::max(r.pair_swap, std::abs(v - t(z, w, x, y)));
          r.bianchi = std::max(r.bianchi, std::abs(v + t(y, z, x, w) + t(z, x, y, w)));
        }
  return r;
}

CurvatureTensor::CurvatureTensor(SpaceContext ctx) : tensor_(ctx, 4) {}

CurvatureTensor CurvatureTensor::from_tensor(DenseTensor t) {
  if (t.arity() != 4) throw Error(ErrorKind::invalid_argument, "curvature tensors have arity 4");
  const CurvatureResiduals r = curvature_residuals(t);
  const double tol = kRelTol * t.norm();
  if (r.first_pair > tol)
    throw Error(ErrorKind::validation,
                "antisymmetry in the first index pair fails: " + fmt_residual(r.first_pair, tol));
  if (r.second_pair > tol)
    throw Error(ErrorKind::validation,
                "antisymmetry in the second index pair fails: " + fmt_residual(r.second_pair, tol));
  if (r.pair_swap > tol)
    throw Error(ErrorKind::validation,
                "symmetry under exchange of index pairs fails: " + fmt_residual(r.pair_swap, tol));
  if (r.bianchi > tol)
    throw Error(ErrorKind::validation,
                "first Bianchi identity fails: " + fmt_residual(r.bianchi, tol));
  return CurvatureTensor(std::move(t));
}

CurvatureTensor CurvatureTensor::from_pair_values(
    SpaceContext ctx, const std::function<double(int, int, int, int)>& value) {
  DenseTensor t(ctx, 4);
  const auto pairs = ctx.pairs();
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    const auto [i, j] = pairs[a];
    for (std::size_t b = a; b < pairs.size(); ++b) {
      const auto [k, l] = pairs[b];
      const double v = value(i, j, k, l);
      t(i, j, k, l) = v;
      t(j, i, k, l) = -v;
      t(i, j, l, k) = -v;
      t(j, i, l, k) = v;
      t(k, l, i, j) = v;
      t(l, k, i, j) = -v;
      t(k, l, j, i) = -v;
      t(l, k, j, i) = v;
    }
  }
  return CurvatureTensor(std::move(t));
}

CurvatureTensor CurvatureTensor::project(const DenseTensor& t) {
  if (t.arity() != 4) throw Error(ErrorKind::invalid_argument, "curvature tensors have arity 4");
  const SpaceContext ctx = t.context();
  // Sym^2(Lambda^2) part: antisymmetrize each pair, then symmetrize the pairs.
  const auto alt = [&](int x, int y, int z, int w) {
    return 0.25 * (t(x, y, z, w) - t(y, x, z, w) - t(x, y, w, z) + t(y, x, w, z));
  };
  const CurvatureTensor sym = from_pair_values(ctx, [&](int x, int y, int z, int w) {
    return 0.5 * (alt(x, y, z, w) + alt(z, w, x, y));
  });
  // Remove the Lambda^4 component (the cyclic Bianchi sum).
  return from_pair_values(ctx, [&](int x, int y, int z, int w) {
    const double b = (sym(x, y, z, w) + sym(y, z, x, w) + sym(z, x, y, w)) / 3.0;
    return sym(x, y, z, w) - b;
  });
}

// CurvatureOperator ----------------------------------------------------------

CurvatureOperator CurvatureOperator::from_matrix(SpaceContext ctx, Eigen::MatrixXd matrix) {
  const int N = ctx.bivector_dim();
  if (matrix.rows() != N || matrix.cols() != N)
    throw Error(ErrorKind::dimension_mismatch,
                "curvature operator must be " + std::to_string(N) + " x " + std::to_string(N));
  if (!matrix.allFinite())
    throw Error(ErrorKind::invalid_operator, "operator has non-finite entries");
  const double residual = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
  if (residual > symmetric_tolerance(matrix))
    throw Error(ErrorKind::invalid_operator,
                "operator is not symmetric: " + fmt_residual(residual, symmetric_tolerance(matrix)));
  return CurvatureOperator(ctx, std::move(matrix));
}

CurvatureOperator CurvatureOperator::identity(SpaceContext ctx) {
  const int N = ctx.bivector_dim();
  return CurvatureOperator(ctx, Eigen::MatrixXd::Identity(N, N));
}

CurvatureOperator CurvatureOperator::diagonal(SpaceContext ctx, std::span<const double> entries) {
  const int N = ctx.bivector_dim();
  if (static_cast<int>(entries.size()) != N)
    throw Error(ErrorKind::dimension_mismatch, "diagonal operator needs n(n-1)/2 entries");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(N, N);
  for (int a = 0; a < N; ++a) m(a, a) = entries[static_cast<std::size_t>(a)];
  return from_matrix(ctx, std::move(m));
}

// HatTensor ------------------------------------------------------------------

HatTensor::HatTensor(SpaceContext ctx, int arity, std::vector<DenseTensor> slices)
    : ctx_(ctx), arity_(arity), slices_(std::move(slices)) {
  if (static_cast<int>(slices_.size()) != ctx.bivector_dim())
    throw Error(ErrorKind::dimension_mismatch, "hat tensor needs one slice per bivector");
  for (const auto& s : slices_)
    if (s.context() != ctx || s.arity() != arity)
      throw Error(ErrorKind::dimension_mismatch, "hat tensor slices must share shape");
}

double HatTensor::norm_squared() const noexcept {
  double sum = 0.0;
  for (const auto& s : slices_) sum += s.norm_squared();
  return sum;
}

Eigen::MatrixXd HatTensor::gram() const {
  const auto N = static_cast<Eigen::Index>(slices_.size());
  Eigen::MatrixXd g(N, N);
  for (Eigen::Index a = 0; a < N; ++a)
    for (Eigen::Index b = a; b < N; ++b) {
      g(a, b) = inner(slices_[static_cast<std::size_t>(a)], slices_[static_cast<std::size_t>(b)]);
      g(b, a) = g(a, b);
    }
  return g;
}

// Products and contractions --------------------------------------------------

CurvatureTensor kulkarni_nomizu(const SymmetricBilinear& S, const SymmetricBilinear& T) {
  require_same_space(S.context(), T.context(), "Kulkarni-Nomizu product");
  return CurvatureTensor::from_pair_values(S.context(), [&](int x, int y, int z, int w) {
    // grouped so that swapping S and T only commutes the additions
    return (S(x, z) * T(y, w) + T(x, z) * S(y, w)) - (S(x, w) * T(y, z) + T(x, w) * S(y, z));
  });
}

CurvatureTensor constant_curvature(SpaceContext ctx, double kappa) {
  const auto g = SymmetricBilinear::identity(ctx);
  return (0.5 * kappa) * kulkarni_nomizu(g, g);
}

SymmetricBilinear ricci_contraction(const CurvatureTensor& rm) {
  const int n = rm.dim();
  Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int j = 0; j < n; ++j) ric(x, y) += rm(x, j, y, j);
  Eigen::MatrixXd sym = 0.5 * (ric + ric.transpose());
  return SymmetricBilinear::from_matrix(rm.context(), std::move(sym));
}

double scalar_curvature(const CurvatureTensor& rm) { return ricci_contraction(rm).trace(); }

SymmetricBilinear traceless_ricci(const CurvatureTensor& rm) {
  const auto ric = ricci_contraction(rm);
  const int n = rm.dim();
  Eigen::MatrixXd m = ric.matrix() - (ric.trace() / n) * Eigen::MatrixXd::Identity(n, n);
  return SymmetricBilinear::from_matrix(rm.context(), std::move(m));
}

CurvatureTensor traceless_part(const CurvatureTensor& rm) {
  const int n = rm.dim();
  const auto g = SymmetricBilinear::identity(rm.context());
  const double scal = scalar_curvature(rm);
  return rm - (scal / (2.0 * n * (n - 1))) * kulkarni_nomizu(g, g);
}

DecompositionParts decompose(const CurvatureTensor& rm) {
  const int n = rm.dim();
  if (n < 3)
    throw Error(ErrorKind::unsupported_dimension, "decomposition needs n >= 3, got n=" +
                                                      std::to_string(n));
  const auto g = SymmetricBilinear::identity(rm.context());
  const auto ric = ricci_contraction(rm);
  const double scal = ric.trace();
  Eigen::MatrixXd ric0 = ric.matrix() - (scal / n) * Eigen::MatrixXd::Identity(n, n);

  CurvatureTensor scal_part = (scal / (2.0 * n * (n - 1))) * kulkarni_nomizu(g, g);
  CurvatureTensor ricci_part =
      (1.0 / (n - 2)) * kulkarni_nomizu(g, SymmetricBilinear::from_matrix(rm.context(), ric0));
  CurvatureTensor weyl = rm - scal_part - ricci_part;

  // The Weyl part vanishes identically in dimension three.
  if (n == 3 && weyl.norm() > 1e-6 * std::max(rm.norm(), 1e-300))
    throw Error(ErrorKind::validation, "nonzero Weyl residual in dimension 3");
  return DecompositionParts{scal, std::move(scal_part), std::move(ricci_part), std::move(weyl)};
}

CurvatureOperator to_operator(const CurvatureTensor& rm) {
  const SpaceContext ctx = rm.context();
  const auto pairs = ctx.pairs();
  const auto N = static_cast<Eigen::Index>(pairs.size());
  Eigen::MatrixXd m(N, N);
  for (Eigen::Index a = 0; a < N; ++a)
    for (Eigen::Index b = 0; b < N; ++b) {
      const auto [i, j] = pairs[static_cast<std::size_t>(a)];
      const auto [k, l] = pairs[static_cast<std::size_t>(b)];
      m(a, b) = rm(i, j, k, l);
    }
  return CurvatureOperator::from_matrix(ctx, std::move(m));
}

CurvatureTensor from_operator(const CurvatureOperator& op) {
  const SpaceContext ctx = op.context();
  CurvatureTensor rm = CurvatureTensor::from_pair_values(ctx, [&](int i, int j, int k, int l) {
    return op(ctx.pair_index(i, j), ctx.pair_index(k, l));
  });
  const double bianchi = curvature_residuals(rm.tensor()).bianchi;
  const double tol = kRelTol * rm.norm();
  if (bianchi > tol)
    throw Error(ErrorKind::validation,
                "operator violates the first Bianchi identity: " + fmt_residual(bianchi, tol));
  return rm;
}

// Hat map and Weitzenboeck term ----------------------------------------------

HatTensor hat(const DenseTensor& t) {
  const SpaceContext ctx = t.context();
  std::vector<DenseTensor> slices;
  slices.reserve(static_cast<std::size_t>(ctx.bivector_dim()));
  for (const auto& [i, j] : ctx.pairs()) slices.push_back(lt_action(wedge_to_skew(i, j, ctx), t));
  return HatTensor(ctx, t.arity(), std::move(slices));
}

double hat_norm_squared(const DenseTensor& t) {
  const SpaceContext ctx = t.context();
  DenseTensor slice(ctx, t.arity());
  double sum = 0.0;
  for (const auto& [i, j] : ctx.pairs()) {
    endomorphism_action(wedge_to_skew(i, j, ctx).matrix(), t, slice);
    sum += slice.norm_squared();
  }
  return sum;
}

Eigen::MatrixXd curvature_endomorphism(const CurvatureTensor& rm, int x, int y) {
  const int n = rm.dim();
  Eigen::MatrixXd a(n, n);
  // R(e_x, e_y) e_z = sum_w Rm(x, y, z, w) e_w
  for (int z = 0; z < n; ++z)
    for (int w = 0; w < n; ++w) a(w, z) = rm(x, y, z, w);
  return a;
}

DenseTensor weitzenboeck(const CurvatureTensor& rm, const DenseTensor& t) {
  require_same_space(rm.context(), t.context(), "Weitzenboeck operator");
  const int n = t.dim();
  const int k = t.arity();
  DenseTensor out(t.context(), k);
  if (k == 0) return out;

  // acted[x * n + j] = R(e_x, e_j) T
  std::vector<DenseTensor> acted;
  acted.reserve(static_cast<std::size_t>(n * n));
  for (int x = 0; x < n; ++x)
    for (int j = 0; j < n; ++j)
      acted.push_back(x == j ? DenseTensor(t.context(), k)
                             : endomorphism_action(curvature_endomorphism(rm, x, j), t));

  for_each_index(n, k, [&](const MultiIndex& idx) {
    double sum = 0.0;
    for (int s = 0; s < k; ++s) {
      MultiIndex moved = idx;
      for (int j = 0; j < n; ++j) {
        moved[s] = j;
        sum += acted[static_cast<std::size_t>(idx[s] * n + j)][moved];
      }
    }
    out[idx] = sum;
  });
  return out;
}

double curvature_pairing(const CurvatureOperator& op, const HatTensor& s, const HatTensor& t) {
  require_same_space(op.context(), s.context(), "curvature pairing");
  require_same_space(op.context(), t.context(), "curvature pairing");
  if (s.arity() != t.arity())
    throw Error(ErrorKind::dimension_mismatch, "curvature pairing of tensors with different arity");
  const int N = op.context().bivector_dim();
  double sum = 0.0;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      const double r = op(a, b);
      if (r != 0.0) sum += r * inner(s.slice(a), t.slice(b));
    }
  return sum;
}

double curvature_quadratic(const CurvatureOperator& op, const HatTensor& t_hat) {
  require_same_space(op.context(), t_hat.context(), "curvature quadratic form");
  return (op.matrix().cwiseProduct(t_hat.gram())).sum();
}

double curvature_quadratic(const CurvatureOperator& op, const DenseTensor& t) {
  require_same_space(op.context(), t.context(), "curvature quadratic form");
  return curvature_quadratic(op, hat(t));
}

}  // namespace curvlab
