#include "isocone/types.hpp"

#include <cmath>
#include <string>

#include "isocone/errors.hpp"

namespace isocone {

SignVector::SignVector(std::vector<int> signs) : signs_(std::move(signs)) {
  if (signs_.empty()) {
    throw InvalidInput("sign vector must be nonempty");
  }
  for (int s : signs_) {
    if (s != 1 && s != -1) {
      throw InvalidInput("sign vector entries must be +1 or -1, got " + std::to_string(s));
    }
  }
}

SignVector SignVector::ones(int dim) {
  return SignVector(std::vector<int>(static_cast<std::size_t>(dim), 1));
}

Vector SignVector::asVector() const {
  Vector v(dim());
  for (int i = 0; i < dim(); ++i) {
    v(i) = signs_[static_cast<std::size_t>(i)];
  }
  return v;
}

bool SignVector::isAllPositive() const noexcept {
  for (int s : signs_) {
    if (s != 1) return false;
  }
  return true;
}

std::vector<int> SignVector::positiveIndices() const {
  std::vector<int> out;
  for (int i = 0; i < dim(); ++i) {
    if (signs_[static_cast<std::size_t>(i)] == 1) out.push_back(i);
  }
  return out;
}

void requireFinite(const Vector& v, const char* what) {
  if (!v.allFinite()) {
    throw InvalidInput(std::string(what) + " has non-finite entries");
  }
}

void requireFinite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw InvalidInput(std::string(what) + " has non-finite entries");
  }
}

double inverseConditionNumber(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0.0;
  return s(s.size() - 1) / s(0);
}

int numericalRank(const Matrix& m, double ratio) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) >= ratio * s(0)) ++rank;
  }
  return rank;
}

GeneratorMatrix::GeneratorMatrix(Matrix columns) : columns_(std::move(columns)) {
  if (columns_.rows() == 0 || columns_.rows() != columns_.cols()) {
    throw InvalidInput("generator matrix must be square and nonempty");
  }
  requireFinite(columns_, "generator matrix");
  for (Eigen::Index j = 0; j < columns_.cols(); ++j) {
    const double n = columns_.col(j).norm();
    if (n == 0.0) {
      throw InvalidInput("generator matrix has a zero column");
    }
    columns_.col(j) /= n;
  }
  if (inverseConditionNumber(columns_) < kIndependenceRatio) {
    throw SingularMatrix("generator columns are not linearly independent");
  }
  inverse_ = columns_.partialPivLu().inverse();
}

GramMatrix::GramMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw InvalidInput("Gram matrix must be square");
  }
  requireFinite(entries_, "Gram matrix");
  if ((entries_ - entries_.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw InvalidInput("Gram matrix must be symmetric");
  }
}

Hyperplane Hyperplane::make(Vector normal, Vector anchor) {
  if (normal.size() != anchor.size()) {
    throw DimensionMismatch("hyperplane normal and anchor differ in dimension");
  }
  requireFinite(normal, "hyperplane normal");
  requireFinite(anchor, "hyperplane anchor");
  const double n = normal.norm();
  if (n == 0.0) {
    throw InvalidInput("hyperplane normal must be nonzero");
  }
  return Hyperplane{normal / n, std::move(anchor)};
}

Hyperplane Hyperplane::throughOrigin(Vector normal) {
  Vector anchor = Vector::Zero(normal.size());
  return make(std::move(normal), std::move(anchor));
}

}  // namespace isocone
