#include <string>

#include "isocone/errors.hpp"
#include "isocone/opt_kernels.hpp"

namespace isocone {

Vector solveLinear(const Matrix& a, const Vector& b) {
  if (a.rows() != a.cols()) throw InvalidInput("solveLinear: matrix must be square");
  if (a.rows() != b.size()) {
    throw DimensionMismatch("solveLinear: matrix is " + std::to_string(a.rows()) +
                            "x" + std::to_string(a.cols()) + ", right-hand side has " +
                            std::to_string(b.size()) + " entries");
  }
  requireFinite(a, "solveLinear matrix");
  requireFinite(b, "solveLinear right-hand side");
  if (a.rows() == 0) return Vector();
  if (inverseConditionNumber(a) < kIndependenceRatio) {
    throw SingularMatrix("solveLinear: matrix is singular to working precision");
  }
  const Eigen::PartialPivLU<Matrix> lu(a);
  Vector x = lu.solve(b);
  // One step of iterative refinement.
  x += lu.solve(b - a * x);
  return x;
}

}  // namespace isocone
