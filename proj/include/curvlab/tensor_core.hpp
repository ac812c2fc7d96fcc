#pragma once

// Dense multilinear algebra on R^n with the standard (orthonormal) basis.
//
// Conventions used throughout the library:
//  - indices are 0-based; documents and the CLI use 1-based indices
//  - components are stored row-major: T(a0, ..., a_{k-1}) sits at
//    sum_s a_s * n^(k-1-s)
//  - the bivector basis {e_i ^ e_j : i < j} is ordered lexicographically and
//    declared orthonormal, so |L|^2 = sum_{i<j} <L e_i, e_j>^2, which is half
//    the Frobenius norm of the skew matrix
//  - e_i ^ e_j acts as the skew map e_i -> e_j, e_j -> -e_i

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "curvlab/error.hpp"

namespace curvlab {

inline constexpr int kMinDimension = 2;
inline constexpr int kMaxDimension = 8;
inline constexpr int kMaxArity = 8;
inline constexpr std::size_t kMaxComponents = std::size_t{1} << 21;  // 8^7

/// Default relative tolerance for floating-point identity checks.
inline constexpr double kRelTol = 1e-9;

struct IndexPair {
  int i;
  int j;
  bool operator==(const IndexPair&) const = default;
};

/// The vector space R^n together with its lexicographic bivector basis.
class SpaceContext {
 public:
  explicit SpaceContext(int n);

  int dim() const noexcept { return n_; }
  /// N = n(n-1)/2.
  int bivector_dim() const noexcept { return n_ * (n_ - 1) / 2; }
  std::span<const IndexPair> pairs() const noexcept;
  /// Position of (i, j), i < j, in pairs().
  int pair_index(int i, int j) const;

  bool operator==(const SpaceContext&) const = default;

 private:
  int n_;
};

using MultiIndex = std::array<int, kMaxArity>;

/// Calls fn(const MultiIndex&) for every index tuple in row-major order.
template <typename Fn>
void for_each_index(int n, int arity, Fn&& fn) {
  MultiIndex idx{};
  for (;;) {
    fn(static_cast<const MultiIndex&>(idx));
    int s = arity - 1;
    while (s >= 0 && ++idx[s] == n) idx[s--] = 0;
    if (s < 0) return;
  }
}

/// Calls fn(const MultiIndex&) for every strictly increasing k-tuple in
/// lexicographic order.
template <typename Fn>
void for_each_increasing(int n, int k, Fn&& fn) {
  if (k > n) return;
  MultiIndex idx{};
  for (int s = 0; s < k; ++s) idx[s] = s;
  for (;;) {
    fn(static_cast<const MultiIndex&>(idx));
    int s = k - 1;
    while (s >= 0 && idx[s] == n - k + s) --s;
    if (s < 0) return;
    ++idx[s];
    for (int t = s + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
}

/// A (0,k)-tensor with dense n^k storage.
class DenseTensor {
 public:
  /// Zero tensor.
  DenseTensor(SpaceContext ctx, int arity);

  /// Validates the component count and that every entry is finite.
  static DenseTensor from_components(SpaceContext ctx, int arity, std::vector<double> components);
  /// The dual basis covector e^i.
  static DenseTensor basis_covector(SpaceContext ctx, int i);
  static DenseTensor scalar(SpaceContext ctx, double value);

  const SpaceContext& context() const noexcept { return ctx_; }
  int dim() const noexcept { return ctx_.dim(); }
  int arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return data_.size(); }

  std::span<const double> components() const noexcept { return data_; }
  std::span<double> components() noexcept { return data_; }

  std::size_t offset(const MultiIndex& idx) const noexcept {
    std::size_t off = 0;
    for (int s = 0; s < arity_; ++s) off = off * static_cast<std::size_t>(dim()) + idx[s];
    return off;
  }
  /// Distance in storage between T(.., a, ..) and T(.., a+1, ..) in `slot`.
  std::size_t stride(int slot) const noexcept;

  double operator[](const MultiIndex& idx) const noexcept { return data_[offset(idx)]; }
  double& operator[](const MultiIndex& idx) noexcept { return data_[offset(idx)]; }

  template <typename... I>
  double operator()(I... idx) const {
    return (*this)[make_index(idx...)];
  }
  template <typename... I>
  double& operator()(I... idx) {
    return (*this)[make_index(idx...)];
  }

  double norm_squared() const noexcept;
  double norm() const noexcept;
  bool is_zero() const noexcept;

  DenseTensor& operator+=(const DenseTensor& other);
  DenseTensor& operator-=(const DenseTensor& other);
  DenseTensor& operator*=(double s) noexcept;

  friend DenseTensor operator+(DenseTensor a, const DenseTensor& b) { return a += b; }
  friend DenseTensor operator-(DenseTensor a, const DenseTensor& b) { return a -= b; }
  friend DenseTensor operator*(DenseTensor a, double s) { return a *= s; }
  friend DenseTensor operator*(double s, DenseTensor a) { return a *= s; }

 private:
  template <typename... I>
  MultiIndex make_index(I... idx) const {
    static_assert(sizeof...(I) <= kMaxArity);
    if (static_cast<int>(sizeof...(I)) != arity_)
      throw Error(ErrorKind::dimension_mismatch, "index count does not match tensor arity");
    MultiIndex m{};
    int s = 0;
    ((m[s++] = static_cast<int>(idx)), ...);
    return m;
  }

  SpaceContext ctx_;
  int arity_;
  std::vector<double> data_;
};

/// Sum of componentwise products; requires equal context and arity.
double inner(const DenseTensor& a, const DenseTensor& b);
/// (a (x) b)(x, y) = a(x) b(y).
DenseTensor outer(const DenseTensor& a, const DenseTensor& b);

/// An element of so(n), stored as an n x n antisymmetric matrix acting on
/// column vectors.
class SkewEndomorphism {
 public:
  /// Rejects matrices with |M + M^T| > 1e-12 in any entry.
  static SkewEndomorphism from_matrix(SpaceContext ctx, Eigen::MatrixXd matrix);
  static SkewEndomorphism zero(SpaceContext ctx);

  const SpaceContext& context() const noexcept { return ctx_; }
  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }

  /// sum_{i<j} <L e_i, e_j>^2
  double norm_squared() const noexcept;
  double norm() const noexcept;

  /// Coordinates in the orthonormal bivector basis.
  Eigen::VectorXd bivector_coordinates() const;
  /// Inverse of bivector_coordinates().
  static SkewEndomorphism from_bivector(SpaceContext ctx, const Eigen::VectorXd& coords);

 private:
  SkewEndomorphism(SpaceContext ctx, Eigen::MatrixXd matrix)
      : ctx_(ctx), matrix_(std::move(matrix)) {}

  SpaceContext ctx_;
  Eigen::MatrixXd matrix_;
};

/// e_i ^ e_j as the skew map e_i -> e_j, e_j -> -e_i. Requires i < j.
SkewEndomorphism wedge_to_skew(int i, int j, SpaceContext ctx);

/// (LT)(X_1..X_k) = -sum_s T(X_1, .., L X_s, .., X_k).
DenseTensor lt_action(const SkewEndomorphism& L, const DenseTensor& T);

/// Derivation action of an arbitrary endomorphism A (column convention, A e_a
/// = sum_b A(b, a) e_b). lt_action is the skew special case.
DenseTensor endomorphism_action(const Eigen::MatrixXd& A, const DenseTensor& T);
/// Same, writing into `out`, which must have the shape of T and is overwritten.
void endomorphism_action(const Eigen::MatrixXd& A, const DenseTensor& T, DenseTensor& out);

/// A fully antisymmetric tensor of degree 1 <= ell <= n-1.
class AlternatingForm {
 public:
  /// Checks every transposition of slots negates the value (to 1e-9 |T|).
  static AlternatingForm from_tensor(DenseTensor tensor);

  /// Builds the form from coefficients on strictly increasing index sets,
  /// taken in lexicographic order: omega(I) = coefficient for increasing I.
  static AlternatingForm from_increasing(SpaceContext ctx, int degree,
                                         std::span<const double> coefficients);

  const SpaceContext& context() const noexcept { return tensor_.context(); }
  int degree() const noexcept { return tensor_.arity(); }
  const DenseTensor& tensor() const noexcept { return tensor_; }

 private:
  explicit AlternatingForm(DenseTensor tensor) : tensor_(std::move(tensor)) {}
  friend AlternatingForm antisymmetrize(const DenseTensor& T);

  DenseTensor tensor_;
};

/// (1/k!) sum_sigma sign(sigma) T o sigma. Requires 1 <= arity <= n-1.
AlternatingForm antisymmetrize(const DenseTensor& T);

/// Number of strictly increasing index sets of size k in {0..n-1}.
std::size_t binomial(int n, int k) noexcept;

/// Residual max |T(..a..b..) + T(..b..a..)| over all slot transpositions.
double antisymmetry_residual(const DenseTensor& T);

}  // namespace curvlab
