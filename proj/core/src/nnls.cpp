#include <algorithm>
#include <cmath>
#include <string>

#include "internal.hpp"
#include "isocone/errors.hpp"
#include "isocone/opt_kernels.hpp"

namespace isocone {
namespace detail {

NnlsResult nnlsUnchecked(const Matrix& a, const Vector& b, double tol) {
  const Eigen::Index n = a.cols();
  NnlsResult result;
  result.coefficients = Vector::Zero(n);
  if (n == 0) {
    result.residualNorm = b.norm();
    return result;
  }

  const double colScale = std::max(1.0, a.colwise().norm().maxCoeff());
  const double threshold = tol * std::max(1.0, b.norm()) * colScale;
  const int cap = 10 * static_cast<int>(n);

  Vector& x = result.coefficients;
  std::vector<char> passive(static_cast<std::size_t>(n), 0);
  std::vector<char> excluded(static_cast<std::size_t>(n), 0);
  std::vector<Eigen::Index> cols;
  cols.reserve(static_cast<std::size_t>(n));

  Vector w = a.transpose() * b;
  int outer = 0;
  while (true) {
    Eigen::Index enter = -1;
    double best = threshold;
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      if (passive[ju] || excluded[ju]) continue;
      if (w(j) > best) {
        best = w(j);
        enter = j;
      }
    }
    if (enter < 0) break;
    if (++outer > cap) {
      throw Indeterminate("nnls: iteration cap of " + std::to_string(cap) + " exceeded");
    }
    passive[static_cast<std::size_t>(enter)] = 1;

    bool firstInner = true;
    bool moved = false;
    while (true) {
      cols.clear();
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)]) cols.push_back(j);
      }
      const auto k = static_cast<Eigen::Index>(cols.size());
      Matrix ap(a.rows(), k);
      for (Eigen::Index c = 0; c < k; ++c) ap.col(c) = a.col(cols[static_cast<std::size_t>(c)]);
      Eigen::ColPivHouseholderQR<Matrix> qr(ap);
      qr.setThreshold(kIndependenceRatio);
      if (qr.rank() < k) {
        // The entering column is dependent on the passive set.
        passive[static_cast<std::size_t>(enter)] = 0;
        excluded[static_cast<std::size_t>(enter)] = 1;
        break;
      }
      const Vector z = qr.solve(b);

      if (firstInner) {
        firstInner = false;
        const auto pos = std::find(cols.begin(), cols.end(), enter) - cols.begin();
        if (z(pos) <= 0.0) {
          passive[static_cast<std::size_t>(enter)] = 0;
          excluded[static_cast<std::size_t>(enter)] = 1;
          break;
        }
      }

      bool allPositive = true;
      for (Eigen::Index c = 0; c < k; ++c) {
        if (z(c) <= 0.0) {
          allPositive = false;
          break;
        }
      }
      if (allPositive) {
        for (Eigen::Index c = 0; c < k; ++c) x(cols[static_cast<std::size_t>(c)]) = z(c);
        moved = true;
        break;
      }

      double alpha = 1.0;
      Eigen::Index blocking = -1;
      for (Eigen::Index c = 0; c < k; ++c) {
        if (z(c) > 0.0) continue;
        const Eigen::Index j = cols[static_cast<std::size_t>(c)];
        const double step = x(j) / (x(j) - z(c));
        if (step < alpha) {
          alpha = step;
          blocking = j;
        }
      }
      for (Eigen::Index c = 0; c < k; ++c) {
        const Eigen::Index j = cols[static_cast<std::size_t>(c)];
        x(j) += alpha * (z(c) - x(j));
      }
      for (Eigen::Index c = 0; c < k; ++c) {
        const Eigen::Index j = cols[static_cast<std::size_t>(c)];
        if (j == blocking || x(j) <= 0.0) {
          x(j) = 0.0;
          passive[static_cast<std::size_t>(j)] = 0;
        }
      }
      moved = true;
    }
    if (moved) std::fill(excluded.begin(), excluded.end(), 0);
    w = a.transpose() * (b - a * x);
  }

  result.iterations = outer;
  result.residualNorm = (a * x - b).norm();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (x(j) == 0.0) result.activeSet.push_back(static_cast<int>(j));
  }
  return result;
}

}  // namespace detail

NnlsResult nnls(const Matrix& a, const Vector& b, double tol) {
  if (a.rows() != b.size()) {
    throw DimensionMismatch("nnls: matrix has " + std::to_string(a.rows()) +
                            " rows but right-hand side has " + std::to_string(b.size()));
  }
  if (!(tol > 0.0)) throw InvalidInput("nnls: tolerance must be positive");
  requireFinite(a, "nnls matrix");
  requireFinite(b, "nnls right-hand side");
  if (a.cols() <= a.rows() && a.cols() > 0) {
    Eigen::ColPivHouseholderQR<Matrix> qr(a);
    qr.setThreshold(kIndependenceRatio);
    if (qr.rank() < a.cols()) {
      throw SingularMatrix("nnls: matrix does not have full column rank");
    }
  }
  return detail::nnlsUnchecked(a, b, tol);
}

}  // namespace isocone
