#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace isocone {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Absolute tolerance on unit-normalized constraints.
inline constexpr double kDefaultTol = 1e-9;

/// Generator matrices with sigma_min < kIndependenceRatio * sigma_max are rejected.
inline constexpr double kIndependenceRatio = 1e-8;

/// Normals or generators closer than this in cosine distance are merged.
inline constexpr double kDuplicateCosine = 1e-9;

/// An element of {-1, +1}^m selecting the reflected cone K_eps.
class SignVector {
 public:
  explicit SignVector(std::vector<int> signs);

  static SignVector ones(int dim);

  int dim() const noexcept { return static_cast<int>(signs_.size()); }
  int operator[](int i) const { return signs_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& signs() const noexcept { return signs_; }
  Vector asVector() const;
  bool isAllPositive() const noexcept;

  /// Indices carrying +1.
  std::vector<int> positiveIndices() const;

  friend bool operator==(const SignVector&, const SignVector&) = default;

 private:
  std::vector<int> signs_;
};

/// Square matrix whose columns e_1..e_m are the unit generators of a
/// simplicial cone. Construction normalizes the columns and rejects
/// numerically dependent sets.
class GeneratorMatrix {
 public:
  explicit GeneratorMatrix(Matrix columns);

  int dim() const noexcept { return static_cast<int>(columns_.cols()); }
  const Matrix& columns() const noexcept { return columns_; }
  Vector column(int j) const { return columns_.col(j); }

  /// E^{-1}; row i is the functional f_i with f_i^T e_j = delta_ij.
  const Matrix& inverse() const noexcept { return inverse_; }

 private:
  Matrix columns_;
  Matrix inverse_;
};

/// G_ij = <e_i, e_j>.
class GramMatrix {
 public:
  explicit GramMatrix(Matrix entries);

  int dim() const noexcept { return static_cast<int>(entries_.rows()); }
  double operator()(int i, int j) const { return entries_(i, j); }
  const Matrix& matrix() const noexcept { return entries_; }

 private:
  Matrix entries_;
};

/// H(u, a) = {x : <u, x> = <u, a>} with unit normal u.
struct Hyperplane {
  Vector normal;
  Vector anchor;

  /// Normalizes `normal`; throws InvalidInput on a zero normal.
  static Hyperplane make(Vector normal, Vector anchor);
  static Hyperplane throughOrigin(Vector normal);
};

/// Throws InvalidInput if any entry is NaN or infinite.
void requireFinite(const Vector& v, const char* what);
void requireFinite(const Matrix& m, const char* what);

/// Smallest over largest singular value; 0 for an empty matrix.
double inverseConditionNumber(const Matrix& m);

/// Numerical rank with singular values below ratio * sigma_max treated as zero.
int numericalRank(const Matrix& m, double ratio = kIndependenceRatio);

}  // namespace isocone
