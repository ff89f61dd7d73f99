#pragma once

// Helpers shared between translation units; not installed.

#include <optional>

#include "isocone/cone_model.hpp"
#include "isocone/opt_kernels.hpp"

namespace isocone::detail {

/// nnls() without argument validation or the upfront rank check.
NnlsResult nnlsUnchecked(const Matrix& a, const Vector& b, double tol);

/// Finite descriptions of a polyhedral cone. Either side may be missing.
struct PolyhedralView {
  int dim = 0;
  std::optional<Matrix> generators;  ///< unit columns
  std::optional<Matrix> normals;     ///< unit columns, K = {x : N^T x <= 0}
};

/// Throws Unsupported for Lorentz cones of dimension >= 3.
PolyhedralView polyhedralView(const ConeSpec& cone);

/// Normalizes columns, rejects zero/non-finite columns, merges near-duplicates.
Matrix canonicalColumns(const Matrix& columns, const char* what);

/// Stacks a vector list as matrix columns; all must have length dim.
Matrix columnsFrom(int dim, const std::vector<Vector>& vectors, const char* what);

void requireDim(const ConeSpec& cone, const Vector& x, const char* op);

}  // namespace isocone::detail
