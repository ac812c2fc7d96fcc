#pragma once

// Algebraic curvature tensors on R^n and the maps built from them: the
// Kulkarni-Nomizu product, Ricci contraction, the scalar / traceless-Ricci /
// Weyl decomposition, the curvature operator on bivectors, the hat map and
// the Weitzenboeck curvature term.
//
// Sign convention for the (1,3) curvature: g(R(X,Y)Z, W) = Rm(X,Y,Z,W), and
// R(X,Y) acts on tensors as a derivation. With this choice the round sphere
// Rm = (1/2) g.g gives Ric(omega) = (n-1) omega on 1-forms.

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "curvlab/tensor_core.hpp"

namespace curvlab {

/// Symmetric (0,2)-tensor, e.g. a metric, Ricci tensor or second fundamental form.
class SymmetricBilinear {
 public:
  /// Rejects |M - M^T| > 1e-12 * max(1, max|M|).
  static SymmetricBilinear from_matrix(SpaceContext ctx, Eigen::MatrixXd matrix);
  static SymmetricBilinear identity(SpaceContext ctx);
  static SymmetricBilinear diagonal(SpaceContext ctx, std::span<const double> entries);

  const SpaceContext& context() const noexcept { return ctx_; }
  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }
  double operator()(int i, int j) const { return matrix_(i, j); }
  double trace() const { return matrix_.trace(); }
  double norm() const { return matrix_.norm(); }

 private:
  SymmetricBilinear(SpaceContext ctx, Eigen::MatrixXd matrix)
      : ctx_(ctx), matrix_(std::move(matrix)) {}

  SpaceContext ctx_;
  Eigen::MatrixXd matrix_;
};

/// Residuals of the algebraic curvature symmetries of a (0,4)-tensor.
struct CurvatureResiduals {
  double first_pair = 0.0;   // Rm(x,y,z,w) + Rm(y,x,z,w)
  double second_pair = 0.0;  // Rm(x,y,z,w) + Rm(x,y,w,z)
  double pair_swap = 0.0;    // Rm(x,y,z,w) - Rm(z,w,x,y)
  double bianchi = 0.0;      // Rm(x,y,z,w) + Rm(y,z,x,w) + Rm(z,x,y,w)

  double max() const;
};

CurvatureResiduals curvature_residuals(const DenseTensor& t);

/// A (0,4)-tensor with the pair symmetries and the first Bianchi identity.
class CurvatureTensor {
 public:
  /// Zero curvature tensor.
  explicit CurvatureTensor(SpaceContext ctx);

  /// Validates every symmetry to 1e-9 * |t|; the error names the failing one.
  static CurvatureTensor from_tensor(DenseTensor t);
  /// Orthogonal projection of an arbitrary (0,4)-tensor onto algebraic
  /// curvature tensors. The result satisfies the pair symmetries exactly.
  static CurvatureTensor project(const DenseTensor& t);

  const SpaceContext& context() const noexcept { return tensor_.context(); }
  int dim() const noexcept { return tensor_.dim(); }
  const DenseTensor& tensor() const noexcept { return tensor_; }
  double operator()(int x, int y, int z, int w) const { return tensor_(x, y, z, w); }
  double norm() const noexcept { return tensor_.norm(); }
  double norm_squared() const noexcept { return tensor_.norm_squared(); }

  CurvatureTensor& operator+=(const CurvatureTensor& o) {
    tensor_ += o.tensor_;
    return *this;
  }
  CurvatureTensor& operator-=(const CurvatureTensor& o) {
    tensor_ -= o.tensor_;
    return *this;
  }
  CurvatureTensor& operator*=(double s) noexcept {
    tensor_ *= s;
    return *this;
  }
  friend CurvatureTensor operator+(CurvatureTensor a, const CurvatureTensor& b) { return a += b; }
  friend CurvatureTensor operator-(CurvatureTensor a, const CurvatureTensor& b) { return a -= b; }
  friend CurvatureTensor operator*(double s, CurvatureTensor a) { return a *= s; }
  friend CurvatureTensor operator*(CurvatureTensor a, double s) { return a *= s; }

  /// Builds a tensor from its values on (i<j, k<l) pairs with pair(i,j) <=
  /// pair(k,l) and fills the remaining entries by symmetry, bit-exactly.
  /// No Bianchi check is made.
  static CurvatureTensor from_pair_values(SpaceContext ctx,
                                          const std::function<double(int, int, int, int)>& value);

 private:
  explicit CurvatureTensor(DenseTensor t) : tensor_(std::move(t)) {}

  DenseTensor tensor_;
};

/// The curvature operator on bivectors: entry (pair(i,j), pair(k,l)) is
/// Rm(e_i, e_j, e_k, e_l).
class CurvatureOperator {
 public:
  /// Rejects non-symmetric input with an invalid-operator error.
  static CurvatureOperator from_matrix(SpaceContext ctx, Eigen::MatrixXd matrix);
  static CurvatureOperator identity(SpaceContext ctx);
  static CurvatureOperator diagonal(SpaceContext ctx, std::span<const double> entries);

  const SpaceContext& context() const noexcept { return ctx_; }
  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }
  double operator()(int a, int b) const { return matrix_(a, b); }

 private:
  CurvatureOperator(SpaceContext ctx, Eigen::MatrixXd matrix)
      : ctx_(ctx), matrix_(std::move(matrix)) {}

  SpaceContext ctx_;
  Eigen::MatrixXd matrix_;
};

/// T^ in Lambda^2 (x) T^(0,k): slice a is L_a T for the orthonormal bivector
/// basis element L_a.
class HatTensor {
 public:
  HatTensor(SpaceContext ctx, int arity, std::vector<DenseTensor> slices);

  const SpaceContext& context() const noexcept { return ctx_; }
  int arity() const noexcept { return arity_; }
  const std::vector<DenseTensor>& slices() const noexcept { return slices_; }
  const DenseTensor& slice(int a) const { return slices_.at(static_cast<std::size_t>(a)); }

  double norm_squared() const noexcept;
  /// N x N matrix of slice inner products.
  Eigen::MatrixXd gram() const;

 private:
  SpaceContext ctx_;
  int arity_;
  std::vector<DenseTensor> slices_;
};

struct DecompositionParts {
  double scal = 0.0;
  CurvatureTensor scal_part;
  CurvatureTensor ricci_part;
  CurvatureTensor weyl;
};

CurvatureTensor kulkarni_nomizu(const SymmetricBilinear& S, const SymmetricBilinear& T);

/// (kappa/2) g.g, the curvature of the space form with sectional curvature kappa.
CurvatureTensor constant_curvature(SpaceContext ctx, double kappa);

/// Ric(x, y) = sum_j Rm(x, e_j, y, e_j).
SymmetricBilinear ricci_contraction(const CurvatureTensor& rm);
double scalar_curvature(const CurvatureTensor& rm);
/// Ric - (Scal/n) g.
SymmetricBilinear traceless_ricci(const CurvatureTensor& rm);
/// Rm - Scal / (2 n (n-1)) g.g.
CurvatureTensor traceless_part(const CurvatureTensor& rm);

/// Scal/(2n(n-1)) g.g + 1/(n-2) g.Ric0 + W. Requires n >= 3.
DecompositionParts decompose(const CurvatureTensor& rm);

CurvatureOperator to_operator(const CurvatureTensor& rm);
/// Inverse of to_operator; throws a validation error if the operator does
/// not satisfy the first Bianchi identity.
CurvatureTensor from_operator(const CurvatureOperator& op);

HatTensor hat(const DenseTensor& t);
/// |T^|^2 without materialising the slices.
double hat_norm_squared(const DenseTensor& t);
inline HatTensor hat(const CurvatureTensor& rm) { return hat(rm.tensor()); }
inline HatTensor hat(const AlternatingForm& w) { return hat(w.tensor()); }

/// The (1,3) curvature R(e_x, e_y) as an n x n matrix (column convention).
Eigen::MatrixXd curvature_endomorphism(const CurvatureTensor& rm, int x, int y);

/// Ric(T)(X_1..X_k) = sum_i sum_j (R(X_i, e_j) T)(X_1, .., e_j, .., X_k).
DenseTensor weitzenboeck(const CurvatureTensor& rm, const DenseTensor& t);

/// sum_{a,b} R[a,b] <S^_a, T^_b>.
double curvature_pairing(const CurvatureOperator& op, const HatTensor& s, const HatTensor& t);
/// g(R(T^), T^).
double curvature_quadratic(const CurvatureOperator& op, const DenseTensor& t);
double curvature_quadratic(const CurvatureOperator& op, const HatTensor& t_hat);

}  // namespace curvlab
