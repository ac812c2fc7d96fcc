#include "curvlab/tensor_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace curvlab {

namespace {

std::vector<IndexPair> make_pairs(int n) {
  std::vector<IndexPair> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
  return pairs;
}

const std::array<std::vector<IndexPair>, kMaxDimension + 1>& pair_tables() {
  static const auto tables = [] {
    std::array<std::vector<IndexPair>, kMaxDimension + 1> t;
    for (int n = 0; n <= kMaxDimension; ++n) t[n] = make_pairs(n);
    return t;
  }();
  return tables;
}

std::size_t checked_size(int n, int arity) {
  if (arity < 0 || arity > kMaxArity)
    throw Error(ErrorKind::invalid_argument,
                "tensor arity " + std::to_string(arity) + " outside [0, " +
                    std::to_string(kMaxArity) + "]");
  std::size_t size = 1;
  for (int s = 0; s < arity; ++s) size *= static_cast<std::size_t>(n);
  if (size > kMaxComponents)
    throw Error(ErrorKind::invalid_argument, "tensor with " + std::to_string(size) +
                                                 " components exceeds dense storage bound");
  return size;
}

void require_same_shape(const DenseTensor& a, const DenseTensor& b) {
  if (a.context() != b.context() || a.arity() != b.arity())
    throw Error(ErrorKind::dimension_mismatch,
                "tensors of shape (n=" + std::to_string(a.dim()) + ", k=" +
                    std::to_string(a.arity()) + ") and (n=" + std::to_string(b.dim()) +
                    ", k=" + std::to_string(b.arity()) + ")");
}

struct SignedPermutation {
  MultiIndex perm;
  int sign;
};

std::vector<SignedPermutation> permutations_of(int k) {
  std::vector<SignedPermutation> out;
  MultiIndex p{};
  std::iota(p.begin(), p.begin() + k, 0);
  do {
    int inversions = 0;
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b)
        if (p[a] > p[b]) ++inversions;
    out.push_back({p, inversions % 2 == 0 ? 1 : -1});
  } while (std::next_permutation(p.begin(), p.begin() + k));
  return out;
}

}  // namespace

// SpaceContext ---------------------------------------------------------------

SpaceContext::SpaceContext(int n) : n_(n) {
  if (n < kMinDimension || n > kMaxDimension)
    throw Error(ErrorKind::unsupported_dimension,
                "dimension " + std::to_string(n) + " outside [" + std::to_string(kMinDimension) +
                    ", " + std::to_string(kMaxDimension) + "]");
}

std::span<const IndexPair> SpaceContext::pairs() const noexcept { return pair_tables()[n_]; }

int SpaceContext::pair_index(int i, int j) const {
  if (i < 0 || j >= n_ || i >= j)
    throw Error(ErrorKind::invalid_pair,
                "(" + std::to_string(i) + ", " + std::to_string(j) + ") is not an ordered pair");
  // pairs before row i: sum_{r<i} (n-1-r)
  return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
}

// DenseTensor ----------------------------------------------------------------

DenseTensor::DenseTensor(SpaceContext ctx, int arity)
    : ctx_(ctx), arity_(arity), data_(checked_size(ctx.dim(), arity), 0.0) {}

DenseTensor DenseTensor::from_components(SpaceContext ctx, int arity,
                                         std::vector<double> components) {
  DenseTensor t(ctx, arity);
  if (components.size() != t.size())
    throw Error(ErrorKind::dimension_mismatch,
                "expected " + std::to_string(t.size()) + " components, got " +
                    std::to_string(components.size()));
  for (std::size_t i = 0; i < components.size(); ++i)
    if (!std::isfinite(components[i]))
      throw Error(ErrorKind::validation, "component " + std::to_string(i) + " is not finite");
  t.data_ = std::move(components);
  return t;
}

DenseTensor DenseTensor::basis_covector(SpaceContext ctx, int i) {
  if (i < 0 || i >= ctx.dim())
    throw Error(ErrorKind::invalid_argument, "basis index " + std::to_string(i) + " out of range");
  DenseTensor t(ctx, 1);
  t.data_[static_cast<std::size_t>(i)] = 1.0;
  return t;
}

DenseTensor DenseTensor::scalar(SpaceContext ctx, double value) {
  DenseTensor t(ctx, 0);
  t.data_[0] = value;
  return t;
}

std::size_t DenseTensor::stride(int slot) const noexcept {
  std::size_t st = 1;
  for (int s = slot + 1; s < arity_; ++s) st *= static_cast<std::size_t>(dim());
  return st;
}

double DenseTensor::norm_squared() const noexcept {
  double sum = 0.0;
  for (double v : data_) sum += v * v;
  return sum;
}

double DenseTensor::norm() const noexcept { return std::sqrt(norm_squared()); }

bool DenseTensor::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return v == 0.0; });
}

DenseTensor& DenseTensor::operator+=(const DenseTensor& other) {
  require_same_shape(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

DenseTensor& DenseTensor::operator-=(const DenseTensor& other) {
  require_same_shape(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

DenseTensor& DenseTensor::operator*=(double s) noexcept {
  for (double& v : data_) v *= s;
  return *this;
}

double inner(const DenseTensor& a, const DenseTensor& b) {
  require_same_shape(a, b);
  const auto x = a.components();
  const auto y = b.components();
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
  return sum;
}

DenseTensor outer(const DenseTensor& a, const DenseTensor& b) {
  if (a.context() != b.context())
    throw Error(ErrorKind::dimension_mismatch, "outer product across different spaces");
  DenseTensor out(a.context(), a.arity() + b.arity());
  auto dst = out.components();
  const auto x = a.components();
  const auto y = b.components();
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) dst[i * y.size() + j] = x[i] * y[j];
  return out;
}

// SkewEndomorphism -----------------------------------------------------------

SkewEndomorphism SkewEndomorphism::from_matrix(SpaceContext ctx, Eigen::MatrixXd matrix) {
  const int n = ctx.dim();
  if (matrix.rows() != n || matrix.cols() != n)
    throw Error(ErrorKind::dimension_mismatch, "skew endomorphism must be n x n");
  if (!matrix.allFinite()) throw Error(ErrorKind::validation, "skew matrix has non-finite entries");
  const double residual = (matrix + matrix.transpose()).cwiseAbs().maxCoeff();
  if (residual > 1e-12)
    throw Error(ErrorKind::validation,
                "matrix is not antisymmetric (residual " + format_number(residual) + ")");
  return SkewEndomorphism(ctx, std::move(matrix));
}

SkewEndomorphism SkewEndomorphism::zero(SpaceContext ctx) {
  return SkewEndomorphism(ctx, Eigen::MatrixXd::Zero(ctx.dim(), ctx.dim()));
}

double SkewEndomorphism::norm_squared() const noexcept {
  double sum = 0.0;
  const int n = ctx_.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) sum += matrix_(j, i) * matrix_(j, i);
  return sum;
}

double SkewEndomorphism::norm() const noexcept { return std::sqrt(norm_squared()); }

Eigen::VectorXd SkewEndomorphism::bivector_coordinates() const {
  Eigen::VectorXd c(ctx_.bivector_dim());
  int a = 0;
  for (const auto& [i, j] : ctx_.pairs()) c[a++] = matrix_(j, i);
  return c;
}

SkewEndomorphism SkewEndomorphism::from_bivector(SpaceContext ctx, const Eigen::VectorXd& coords) {
  if (coords.size() != ctx.bivector_dim())
    throw Error(ErrorKind::dimension_mismatch, "bivector coordinate count must be n(n-1)/2");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(ctx.dim(), ctx.dim());
  int a = 0;
  for (const auto& [i, j] : ctx.pairs()) {
    m(j, i) = coords[a];
    m(i, j) = -coords[a];
    ++a;
  }
  return SkewEndomorphism(ctx, std::move(m));
}

SkewEndomorphism wedge_to_skew(int i, int j, SpaceContext ctx) {
  if (i < 0 || j >= ctx.dim() || i >= j)
    throw Error(ErrorKind::invalid_pair,
                "wedge requires 0 <= i < j < n, got (" + std::to_string(i) + ", " +
                    std::to_string(j) + ")");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(ctx.dim(), ctx.dim());
  m(j, i) = 1.0;
  m(i, j) = -1.0;
  return SkewEndomorphism::from_matrix(ctx, std::move(m));
}

// Actions --------------------------------------------------------------------

DenseTensor endomorphism_action(const Eigen::MatrixXd& A, const DenseTensor& T) {
  DenseTensor out(T.context(), T.arity());
  endomorphism_action(A, T, out);
  return out;
}

void endomorphism_action(const Eigen::MatrixXd& A, const DenseTensor& T, DenseTensor& out) {
  const int n = T.dim();
  if (A.rows() != n || A.cols() != n)
    throw Error(ErrorKind::dimension_mismatch, "endomorphism and tensor live in different spaces");
  if (out.context() != T.context() || out.arity() != T.arity())
    throw Error(ErrorKind::dimension_mismatch, "output tensor has the wrong shape");

  struct Entry {
    int target;
    int source;
    double value;
  };
  // (AT)[..a..] = -sum_b A(b, a) T[..b..]; only the nonzero entries matter,
  // which makes basis bivectors (two entries) cheap.
  std::vector<Entry> entries;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (A(b, a) != 0.0) entries.push_back({a, b, A(b, a)});

  auto dst = out.components();
  std::fill(dst.begin(), dst.end(), 0.0);
  const auto src = T.components();
  for (int s = 0; s < T.arity(); ++s) {
    const std::size_t st = T.stride(s);
    const std::size_t block = st * static_cast<std::size_t>(n);
    for (std::size_t base = 0; base < src.size(); base += block) {
      for (const auto& e : entries) {
        double* d = dst.data() + base + static_cast<std::size_t>(e.target) * st;
        const double* x = src.data() + base + static_cast<std::size_t>(e.source) * st;
        for (std::size_t t = 0; t < st; ++t) d[t] -= e.value * x[t];
      }
    }
  }
}

DenseTensor lt_action(const SkewEndomorphism& L, const DenseTensor& T) {
  if (L.context() != T.context())
    throw Error(ErrorKind::dimension_mismatch, "skew endomorphism and tensor live in different spaces");
  return endomorphism_action(L.matrix(), T);
}

// Alternating forms ----------------------------------------------------------

std::size_t binomial(int n, int k) noexcept {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

double antisymmetry_residual(const DenseTensor& T) {
  const int k = T.arity();
  double worst = 0.0;
  for_each_index(T.dim(), k, [&](const MultiIndex& idx) {
    const double v = T[idx];
    for (int s = 0; s < k; ++s)
      for (int t = s + 1; t < k; ++t) {
        MultiIndex sw = idx;
        std::swap(sw[s], sw[t]);
        worst = std::max(worst, std::abs(v + T[sw]));
      }
  });
  return worst;
}

namespace {

void check_degree(SpaceContext ctx, int degree) {
  if (degree < 1 || degree > ctx.dim() - 1)
    throw Error(ErrorKind::invalid_argument, "form degree " + std::to_string(degree) +
                                                 " outside [1, " + std::to_string(ctx.dim() - 1) +
                                                 "]");
}

}  // namespace

AlternatingForm AlternatingForm::from_tensor(DenseTensor tensor) {
  check_degree(tensor.context(), tensor.arity());
  const double residual = antisymmetry_residual(tensor);
  if (residual > kRelTol * tensor.norm())
    throw Error(ErrorKind::validation,
                "tensor is not alternating (transposition residual " + format_number(residual) +
                    ")");
  return AlternatingForm(std::move(tensor));
}

AlternatingForm AlternatingForm::from_increasing(SpaceContext ctx, int degree,
                                                 std::span<const double> coefficients) {
  check_degree(ctx, degree);
  if (coefficients.size() != binomial(ctx.dim(), degree))
    throw Error(ErrorKind::dimension_mismatch,
                "expected " + std::to_string(binomial(ctx.dim(), degree)) + " coefficients");
  DenseTensor t(ctx, degree);
  const auto perms = permutations_of(degree);
  std::size_t c = 0;
  for_each_increasing(ctx.dim(), degree, [&](const MultiIndex& inc) {
    const double value = coefficients[c++];
    if (!std::isfinite(value)) throw Error(ErrorKind::validation, "form coefficient is not finite");
    for (const auto& [perm, sign] : perms) {
      MultiIndex idx{};
      for (int s = 0; s < degree; ++s) idx[s] = inc[perm[s]];
      t[idx] = sign * value;
    }
  });
  return AlternatingForm(std::move(t));
}

AlternatingForm antisymmetrize(const DenseTensor& T) {
  const int k = T.arity();
  check_degree(T.context(), k);
  const auto perms = permutations_of(k);
  const double norm = 1.0 / static_cast<double>(perms.size());
  DenseTensor out(T.context(), k);
  // Entries with a repeated index vanish; every other entry is a signed copy
  // of the entry at its sorted index set.
  for_each_increasing(T.dim(), k, [&](const MultiIndex& inc) {
    double sum = 0.0;
    for (const auto& [perm, sign] : perms) {
      MultiIndex idx{};
      for (int s = 0; s < k; ++s) idx[s] = inc[perm[s]];
      sum += sign * T[idx];
    }
    sum *= norm;
    for (const auto& [perm, sign] : perms) {
      MultiIndex idx{};
      for (int s = 0; s < k; ++s) idx[s] = inc[perm[s]];
      out[idx] = sign * sum;
    }
  });
  return AlternatingForm(std::move(out));
}

}  // namespace curvlab
