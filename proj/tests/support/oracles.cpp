#include "support/oracles.hpp"

#include <bit>
#include <limits>

namespace isocone::testing {

BruteNnls bruteNnls(const Matrix& a, const Vector& b) {
  const auto n = static_cast<int>(a.cols());
  BruteNnls best{Vector::Zero(n), b.norm()};
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const int k = std::popcount(mask);
    Matrix as(a.rows(), k);
    std::vector<int> idx;
    for (int j = 0; j < n; ++j) {
      if (mask & (1u << j)) {
        as.col(static_cast<Eigen::Index>(idx.size())) = a.col(j);
        idx.push_back(j);
      }
    }
    const Vector c = as.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
    if (c.minCoeff() < 0.0) continue;
    const double r = (as * c - b).norm();
    if (r < best.residualNorm) {
      best.residualNorm = r;
      best.coefficients = Vector::Zero(n);
      for (int t = 0; t < k; ++t) best.coefficients(idx[static_cast<std::size_t>(t)]) = c(t);
    }
  }
  return best;
}

std::vector<std::vector<int>> bruteSubdualSigns(const Matrix& g, double tol) {
  const auto m = static_cast<int>(g.rows());
  std::vector<std::vector<int>> out;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<int> eps(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) eps[static_cast<std::size_t>(i)] = (mask & (1u << i)) ? -1 : 1;
    bool ok = true;
    for (int i = 0; i < m && ok; ++i) {
      for (int j = 0; j < m && ok; ++j) {
        ok = eps[static_cast<std::size_t>(i)] * eps[static_cast<std::size_t>(j)] * g(i, j) >= -tol;
      }
    }
    if (ok) out.push_back(std::move(eps));
  }
  return out;
}

double smallestEigenvalue(const Matrix& g) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double distanceToRay(const Vector& x, const Vector& r) {
  const Vector u = r.normalized();
  const double along = std::max(0.0, x.dot(u));
  return (x - along * u).norm();
}

}  // namespace isocone::testing
