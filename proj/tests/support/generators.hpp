#pragma once

#include <random>
#include <vector>

#include "isocone/cone_model.hpp"

namespace isocone::testing {

using Rng = std::mt19937_64;

Vector gaussian(Rng& rng, int m, double scale = 1.0);

/// Square matrix with inverse condition number >= 1e-2 (rejection sampled).
Matrix wellConditioned(Rng& rng, int m);

/// Haar-ish orthogonal matrix from the QR factor of a Gaussian matrix.
Matrix randomOrthogonal(Rng& rng, int m);

/// Simplicial cone whose generators have the given Gram matrix (columns of
/// the upper Cholesky factor).
ConeSpec coneFromGram(const Matrix& g);

/// The m = 3 cone with all off-diagonal Gram entries equal to -0.4.
ConeSpec negativeTriangleCone();

/// Random proper simplicial cone.
ConeSpec randomSimplicial(Rng& rng, int m);

/// Random Gram sign pattern: unit diagonal, off-diagonal entries drawn from
/// {-0.3, 0, +0.3} (scaled to stay positive definite).
Matrix randomSignPatternGram(Rng& rng, int m);

/// Normals of a random proper cone in which every normal has at most two
/// nonzero entries of opposite signs. All returned normals are facets.
/// With `insideOrthant` the cone is also required to lie in R^m_+.
std::vector<Vector> randomTwoSupportNormals(Rng& rng, int m, bool insideOrthant = false);

/// Uniformly random point on the nonzero boundary of Lorentz{m}.
Vector lorentzBoundaryPoint(Rng& rng, int m);

}  // namespace isocone::testing
