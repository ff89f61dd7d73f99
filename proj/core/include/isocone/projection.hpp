#pragma once

#include <cstdint>
#include <vector>

#include "isocone/cone_model.hpp"

namespace isocone {

/// P_K x together with its Moreau companion P_{K*}(-x) = P_K x - x.
struct ProjectionResult {
  Vector point;
  Vector dualPoint;
  double residual = 0.0;          ///< ||x - P_K x||
  std::vector<int> activeFacets;  ///< indices into facetNormals(cone), when defined
  int iterations = 0;             ///< 0 for closed forms
};

/// Metric projection onto the cone. Closed forms for orthants and the
/// Lorentz cone, NNLS for generator descriptions, PAVA plus clamp for the
/// monotone nonnegative cone, and Dykstra with an exact active-set finish
/// for halfspace descriptions. The dual point is checked to lie in K*.
/// Throws NonConvergence (with the best iterate) when no KKT-verified point
/// is reached.
ProjectionResult project(const ConeSpec& cone, const Vector& x);

struct MoreauPair {
  Vector p;  ///< P_K x
  Vector q;  ///< P_{K*}(-x), computed by an independent projection onto K*
};

MoreauPair moreau(const ConeSpec& cone, const Vector& x);

/// Exact projection by exhaustive enumeration of active sets. Intended as a
/// validation oracle: exponential in the number of facets (or generators),
/// limited to 20. Lorentz cones reduce to a planar problem first.
Vector projectOracle(const ConeSpec& cone, const Vector& x);

/// Pool-adjacent-violators: the projection of y onto {x : x_1 >= ... >= x_m}.
Vector pava(const Vector& y);

/// Projection onto {x_1 >= ... >= x_m >= 0}: PAVA followed by a clamp at 0.
Vector projectMonotoneNonneg(const Vector& y);

/// x - (<u, x> - <u, a>) u for the unit normal u.
Vector projectHyperplane(const Hyperplane& h, const Vector& x);

/// Outward unit normal of the supporting hyperplane of a Lorentz cone at a
/// nonzero boundary point x.
Vector lorentzSupportNormal(const Vector& x);

/// Samples the plane span{x, u} through a nonzero boundary point x of a
/// Lorentz cone (u its outward unit supporting normal) and checks that
///   (a) alpha x + beta u with beta >= 0 projects to max(alpha, 0) x,
///   (b) points with beta < 0 land off the ray R_+ x,
///   (c) points off the plane and outside -K land off the ray.
/// Throws InvalidInput if x is not a nonzero boundary point or u is not
/// its supporting normal.
bool boundaryRayPreimageCheck(const ConeSpec& lorentz, const Vector& x, const Vector& u, int samples,
                              std::uint64_t seed = 0x5eedULL);

}  // namespace isocone
