#include "isocone/isotonicity.hpp"

#include <cmath>
#include <string>

#include "internal.hpp"
#include "isocone/errors.hpp"
#include "isocone/opt_kernels.hpp"
#include "isocone/projection.hpp"

namespace isocone {
namespace {

// Constraints for "y lies in the interior of this cone", over the variable
// block [y | lambda_0 | lambda_1 ...]. Facet descriptions give <n, y> <= 0
// with slack; generator descriptions give y = G lambda with lambda >= slack.
void appendInteriorConstraints(const detail::PolyhedralView& view, Eigen::Index totalVars,
                               Eigen::Index& nextLambda, std::vector<LinearConstraint>& out) {
  const Eigen::Index m = view.dim;
  if (view.normals) {
    for (Eigen::Index j = 0; j < view.normals->cols(); ++j) {
      Vector a = Vector::Zero(totalVars);
      a.head(m) = view.normals->col(j);
      out.push_back({std::move(a), 0.0, Sense::LessEqual});
    }
    return;
  }
  const Matrix& g = *view.generators;
  const Eigen::Index k = g.cols();
  for (Eigen::Index r = 0; r < m; ++r) {
    Vector a = Vector::Zero(totalVars);
    a(r) = 1.0;
    a.segment(nextLambda, k) = -g.row(r).transpose();
    out.push_back({std::move(a), 0.0, Sense::Equal});
  }
  for (Eigen::Index j = 0; j < k; ++j) {
    Vector a = Vector::Zero(totalVars);
    a(nextLambda + j) = 1.0;
    out.push_back({std::move(a), 0.0, Sense::GreaterEqual});
  }
  nextLambda += k;
}

/// int(A) meets int(B). For proper cones this is the same as int(A) meeting B.
bool interiorsIntersect(const ConeSpec& a, const ConeSpec& b) {
  const auto va = detail::polyhedralView(a);
  const auto vb = detail::polyhedralView(b);
  const Eigen::Index m = a.dim();
  const auto lambdaCount = [](const detail::PolyhedralView& v) -> Eigen::Index {
    return v.normals ? 0 : v.generators->cols();
  };
  const Eigen::Index total = m + lambdaCount(va) + lambdaCount(vb);
  std::vector<LinearConstraint> cs;
  Eigen::Index next = m;
  appendInteriorConstraints(va, total, next, cs);
  appendInteriorConstraints(vb, total, next, cs);
  const LpResult r = lpFeasible(cs);
  if (r.status == LpStatus::Indeterminate) {
    throw Indeterminate("interior intersection LP could not decide (margin " + std::to_string(r.margin) + ")");
  }
  return r.status == LpStatus::Feasible;
}

/// A is contained in B within tol.
bool contained(const ConeSpec& a, const ConeSpec& b, double tol) {
  if (const auto rays = extremeRays(a)) {
    for (Eigen::Index j = 0; j < rays->cols(); ++j) {
      if (!membership(b, rays->col(j), tol)) return false;
    }
    return true;
  }
  // A has only facets: maximize each facet functional of B over A in the unit box.
  const Matrix na = facetNormals(a);
  const auto vb = detail::polyhedralView(b);
  if (!vb.normals) {
    throw Unsupported("containment test needs generators of the inner cone or facets of the outer cone");
  }
  std::vector<LinearConstraint> cs;
  for (Eigen::Index j = 0; j < na.cols(); ++j) cs.push_back({na.col(j), 0.0, Sense::LessEqual});
  for (Eigen::Index j = 0; j < vb.normals->cols(); ++j) {
    const LpOptimum opt = lpMaximize(vb.normals->col(j), cs, 1.0);
    if (opt.status != LpStatus::Feasible) throw Indeterminate("containment LP could not decide");
    if (opt.value > tol) return false;
  }
  return true;
}

void requireProper(const ConeSpec& c, const char* which) {
  if (!isProper(c)) throw InvalidInput(std::string(which) + " is not a proper cone");
}

}  // namespace

void FalsifierConfig::validate() const {
  if (trials < 1) throw InvalidInput("falsifier: trials must be at least 1");
  if (!(tol > 0.0)) throw InvalidInput("falsifier: tol must be positive");
  if (!(scale > 0.0)) throw InvalidInput("falsifier: scale must be positive");
}

bool leq(const ConeSpec& L, const Vector& x, const Vector& y, double tol) {
  if (x.size() != y.size()) throw DimensionMismatch("leq: x and y differ in dimension");
  return membership(L, y - x, tol);
}

bool hyperplaneIsotone(const ConeSpec& K, const Vector& u, double tol) {
  detail::requireDim(K, u, "hyperplaneIsotone");
  if (std::abs(u.norm() - 1.0) > 1e-9) throw InvalidInput("hyperplaneIsotone: normal must have unit length");
  const auto rays = extremeRays(K);
  if (!rays) throw Unsupported("hyperplaneIsotone: cone has no generator description");
  const Hyperplane h = Hyperplane::throughOrigin(u);
  for (Eigen::Index j = 0; j < rays->cols(); ++j) {
    if (!membership(K, projectHyperplane(h, rays->col(j)), tol)) return false;
  }
  return true;
}

ContainmentReport certifyNecessary(const ConeSpec& K, const ConeSpec& L, double tol) {
  if (K.dim() != L.dim()) throw DimensionMismatch("certifyNecessary: K and L differ in dimension");
  requireProper(K, "K");
  requireProper(L, "L");
  const ConeSpec kStar = dual(K);
  const ConeSpec lStar = dual(L);

  ContainmentReport r;
  r.interiorKstarL = interiorsIntersect(kStar, L);
  r.interiorKstarLstar = interiorsIntersect(kStar, lStar);
  r.kInL = contained(K, L, tol);
  r.lInKstar = contained(L, kStar, tol);
  if (K.get<Simplicial>() != nullptr) {
    r.kSubdualOk = checkSubdual(K, tol);
  } else {
    r.kSubdualOk = contained(K, kStar, tol);
  }
  return r;
}

OrthantIsotoneReport orthantIsotoneRecognize(const ConeSpec& K, double tol) {
  const Matrix normals = facetNormals(K);
  const int m = K.dim();
  OrthantIsotoneReport r;
  r.facetCount = static_cast<int>(normals.cols());
  r.isotone = true;
  for (Eigen::Index j = 0; j < normals.cols(); ++j) {
    const Vector a = normals.col(j);
    std::vector<Eigen::Index> support;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      if (std::abs(a(i)) > tol) support.push_back(i);
    }
    const bool ok = support.size() <= 1 ||
                    (support.size() == 2 && a(support[0]) * a(support[1]) <= tol * tol);
    if (!ok) {
      r.isotone = false;
      r.offendingNormal = a;
      return r;
    }
  }
  if (m >= 2 && r.facetCount > m * (m - 1)) r.isotone = false;
  return r;
}

Alternatives alternativesCheck(const ConeSpec& K, double tol) {
  requireProper(K, "K");
  if (!orthantIsotoneRecognize(K, tol).isotone) {
    throw InvalidInput("alternativesCheck: K is not recognized as R^m_+-isotone");
  }
  const ConeSpec orthant = ConeSpec::orthant(K.dim());
  Alternatives a;
  a.inOrthant = contained(K, orthant, tol);
  a.interiorDisjoint = !interiorsIntersect(dual(K), orthant);
  return a;
}

}  // namespace isocone
