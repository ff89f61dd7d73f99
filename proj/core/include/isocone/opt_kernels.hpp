#pragma once

#include <span>
#include <vector>

#include "isocone/types.hpp"

namespace isocone {

// ---------------------------------------------------------------------------
// Nonnegative least squares
// ---------------------------------------------------------------------------

struct NnlsResult {
  Vector coefficients;         ///< lambda >= 0
  double residualNorm = 0.0;   ///< ||A lambda - b||
  std::vector<int> activeSet;  ///< indices with lambda_i == 0, ascending
  int iterations = 0;
};

/// Active-set (Lawson-Hanson) solution of min ||A lambda - b|| s.t. lambda >= 0.
///
/// Tall or square `a` must have full column rank (SingularMatrix otherwise).
/// Wide matrices are accepted; the passive set is kept linearly independent.
/// Ties in the entering index go to the lowest index. Throws Indeterminate
/// when the outer loop exceeds 10 * cols iterations.
NnlsResult nnls(const Matrix& a, const Vector& b, double tol = 1e-10);

// ---------------------------------------------------------------------------
// Dense linear programming
// ---------------------------------------------------------------------------

enum class Sense { LessEqual, GreaterEqual, Equal };

/// <normal, x> (sense) offset
struct LinearConstraint {
  Vector normal;
  double offset = 0.0;
  Sense sense = Sense::LessEqual;
};

enum class LpStatus { Feasible, Infeasible, Indeterminate };

struct LpResult {
  LpStatus status = LpStatus::Indeterminate;
  Vector witness;      ///< set when feasible
  double margin = 0.0; ///< largest common slack found (capped at 1)
};

inline constexpr double kDefaultLpBox = 1e3;
inline constexpr double kDefaultLpMargin = 1e-7;

/// Maximizes the common slack s of all inequality constraints inside the box
/// ||x||_inf <= box (equalities carry no slack). Feasible when s >= margin,
/// infeasible when s <= 1e-3 * margin, indeterminate in between or when the
/// simplex stalls. Empty constraint lists are rejected.
LpResult lpFeasible(std::span<const LinearConstraint> constraints,
                    double box = kDefaultLpBox, double margin = kDefaultLpMargin);

struct LpOptimum {
  LpStatus status = LpStatus::Indeterminate;  ///< Feasible means optimal
  Vector x;
  double value = 0.0;
};

/// max <objective, x> s.t. constraints, ||x||_inf <= box. Phase-1/phase-2
/// tableau simplex with Bland's rule.
LpOptimum lpMaximize(const Vector& objective, std::span<const LinearConstraint> constraints,
                     double box = kDefaultLpBox);

// ---------------------------------------------------------------------------
// Linear solves
// ---------------------------------------------------------------------------

/// Partial-pivoting solve of a square system; throws SingularMatrix when
/// `a` fails the independence threshold.
Vector solveLinear(const Matrix& a, const Vector& b);

}  // namespace isocone
