#include "isocone/projection.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "internal.hpp"
#include "isocone/errors.hpp"
#include "isocone/opt_kernels.hpp"

namespace isocone {
namespace {

constexpr double kNnlsTol = 1e-13;
constexpr double kDykstraChange = 1e-10;
constexpr long kDykstraVisitCap = 100000;
constexpr int kOracleLimit = 20;

double scaleOf(const Vector& x) { return std::max(1.0, x.norm()); }

ProjectionResult finish(const Vector& x, Vector p) {
  ProjectionResult r;
  r.dualPoint = p - x;
  r.residual = r.dualPoint.norm();
  r.point = std::move(p);
  return r;
}

Vector lorentzProject(const Vector& x) {
  const Eigen::Index n = x.size() - 1;
  const double t = x(n);
  const double r = x.head(n).norm();
  if (t >= r) return x;
  if (t <= -r) return Vector::Zero(x.size());
  const double c = 0.5 * (t + r);
  Vector p(x.size());
  p.head(n) = (c / r) * x.head(n);
  p(n) = c;
  return p;
}

// Exact projection onto {y : N^T y <= 0} by growing an active set. Each
// round solves x - P_{cone(N_A)} x with NNLS; the most violated constraint
// joins A until the point is feasible. KKT holds on exit.
struct PolishOutcome {
  Vector point;
  int rounds = 0;
  bool ok = false;
};

PolishOutcome polishActiveSet(const Matrix& normals, const Vector& x, std::vector<Eigen::Index> active) {
  const double tol = 1e-11 * scaleOf(x);
  PolishOutcome out;
  const Eigen::Index n = normals.cols();
  for (int round = 0; round <= n; ++round) {
    out.rounds = round + 1;
    Vector p = x;
    if (!active.empty()) {
      Matrix na(normals.rows(), static_cast<Eigen::Index>(active.size()));
      for (std::size_t j = 0; j < active.size(); ++j) na.col(static_cast<Eigen::Index>(j)) = normals.col(active[j]);
      const NnlsResult mu = detail::nnlsUnchecked(na, x, kNnlsTol);
      p = x - na * mu.coefficients;
    }
    const Vector slack = normals.transpose() * p;
    Eigen::Index worst = -1;
    double worstValue = tol;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (slack(i) > worstValue && std::find(active.begin(), active.end(), i) == active.end()) {
        worstValue = slack(i);
        worst = i;
      }
    }
    if (worst < 0) {
      out.ok = slack.maxCoeff() <= tol;
      out.point = std::move(p);
      return out;
    }
    active.push_back(worst);
    std::sort(active.begin(), active.end());
    out.point = std::move(p);
  }
  return out;
}

ProjectionResult projectHalfspaces(const ConeSpec& cone, const PolyhedralH& h, const Vector& x) {
  const Matrix& u = h.normals;
  const Eigen::Index n = u.cols();
  const double scale = scaleOf(x);

  // Dykstra's cyclic projections; halfspaces through the origin.
  Vector y = x;
  Matrix increments = Matrix::Zero(x.size(), n);
  long visits = 0;
  bool converged = false;
  while (visits < kDykstraVisitCap) {
    const Vector cycleStart = y;
    for (Eigen::Index i = 0; i < n; ++i, ++visits) {
      const Vector z = y + increments.col(i);
      const double s = u.col(i).dot(z);
      y = s > 0.0 ? Vector(z - s * u.col(i)) : z;
      increments.col(i) = z - y;
    }
    if ((y - cycleStart).norm() < kDykstraChange * scale) {
      converged = true;
      break;
    }
  }

  std::vector<Eigen::Index> guess;
  const Vector slack = u.transpose() * y;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (slack(i) > -1e-6 * scale) guess.push_back(i);
  }

  PolishOutcome polished;
  try {
    polished = polishActiveSet(u, x, guess);
  } catch (const Indeterminate&) {
    polished.ok = false;
  }
  Vector p;
  if (polished.ok) {
    p = std::move(polished.point);
  } else if (n <= kOracleLimit) {
    p = projectOracle(cone, x);
  } else {
    throw NonConvergence(std::string("halfspace projection failed KKT verification") +
                             (converged ? "" : " after the Dykstra visit cap"),
                         y);
  }

  ProjectionResult r = finish(x, std::move(p));
  r.iterations = static_cast<int>(std::min<long>(visits, std::numeric_limits<int>::max())) + polished.rounds;
  const Vector finalSlack = u.transpose() * r.point;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (finalSlack(i) >= -1e-9 * scale) r.activeFacets.push_back(static_cast<int>(i));
  }
  return r;
}

void verifyDualPoint(const ConeSpec& cone, const ProjectionResult& r, const Vector& x) {
  const double tol = 1e-8 * scaleOf(x);
  double margin = 0.0;
  if (cone.get<PolyhedralH>() != nullptr) {
    return;  // KKT already verified by the active-set finish.
  }
  if (cone.get<Lorentz>() != nullptr || cone.get<Orthant>() != nullptr || cone.get<SignedOrthant>() != nullptr) {
    margin = membershipMargin(cone, r.dualPoint);  // self-dual
  } else {
    const Matrix g = extremeRays(cone).value();
    margin = (g.transpose() * r.dualPoint).minCoeff();
  }
  if (margin < -tol) {
    throw NonConvergence("projection: dual point violates K* by " + std::to_string(-margin), r.point);
  }
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

ProjectionResult project(const ConeSpec& cone, const Vector& x) {
  detail::requireDim(cone, x, "project");
  requireFinite(x, "projection input");

  ProjectionResult r = std::visit(
      Overloaded{
          [&](const Orthant&) {
            ProjectionResult out = finish(x, x.cwiseMax(0.0));
            for (Eigen::Index i = 0; i < x.size(); ++i) {
              if (x(i) <= 0.0) out.activeFacets.push_back(static_cast<int>(i));
            }
            return out;
          },
          [&](const SignedOrthant& c) {
            Vector p = x;
            ProjectionResult out;
            for (Eigen::Index i = 0; i < x.size(); ++i) {
              const int e = c.epsilon[static_cast<int>(i)];
              if (e * x(i) <= 0.0) {
                p(i) = 0.0;
                out.activeFacets.push_back(static_cast<int>(i));
              }
            }
            ProjectionResult done = finish(x, std::move(p));
            done.activeFacets = std::move(out.activeFacets);
            return done;
          },
          [&](const Simplicial& c) {
            const NnlsResult lam = detail::nnlsUnchecked(c.generators.columns(), x, kNnlsTol);
            ProjectionResult out = finish(x, c.generators.columns() * lam.coefficients);
            out.activeFacets = lam.activeSet;
            out.iterations = lam.iterations;
            return out;
          },
          [&](const PolyhedralH& h) { return projectHalfspaces(cone, h, x); },
          [&](const PolyhedralV& v) {
            const NnlsResult lam = detail::nnlsUnchecked(v.generators, x, kNnlsTol);
            ProjectionResult out = finish(x, v.generators * lam.coefficients);
            out.iterations = lam.iterations;
            return out;
          },
          [&](const Lorentz&) { return finish(x, lorentzProject(x)); },
          [&](const MonotoneNonneg& c) {
            ProjectionResult out = finish(x, projectMonotoneNonneg(x));
            for (int i = 0; i + 1 < c.dim; ++i) {
              if (out.point(i) <= out.point(i + 1)) out.activeFacets.push_back(i);
            }
            if (out.point(c.dim - 1) <= 0.0) out.activeFacets.push_back(c.dim - 1);
            return out;
          },
      },
      cone.variant());

  verifyDualPoint(cone, r, x);
  return r;
}

MoreauPair moreau(const ConeSpec& cone, const Vector& x) {
  const ConeSpec d = dual(cone);
  MoreauPair pair;
  pair.p = project(cone, x).point;
  pair.q = project(d, -x).point;
  return pair;
}

namespace {

Vector oracleFromNormals(const Matrix& normals, const Vector& x) {
  const auto nf = static_cast<int>(normals.cols());
  const auto m = static_cast<int>(normals.rows());
  const double tol = 1e-10 * scaleOf(x);
  Vector best = Vector::Zero(x.size());
  double bestDist = x.norm();
  for (std::uint32_t mask = 0; mask < (1u << nf); ++mask) {
    const int k = std::popcount(mask);
    if (k > m) continue;
    Vector p = x;
    if (k > 0) {
      Matrix us(m, k);
      int c = 0;
      for (int i = 0; i < nf; ++i) {
        if (mask & (1u << i)) us.col(c++) = normals.col(i);
      }
      Eigen::ColPivHouseholderQR<Matrix> qr(us);
      qr.setThreshold(1e-10);
      if (qr.rank() < k) continue;  // the same subspace comes from a smaller subset
      const Matrix q = qr.householderQ() * Matrix::Identity(m, k);
      p = x - q * (q.transpose() * x);
    }
    if ((normals.transpose() * p).maxCoeff() > tol) continue;
    const double d = (x - p).norm();
    if (d < bestDist) {
      bestDist = d;
      best = p;
    }
  }
  return best;
}

Vector oracleFromGenerators(const Matrix& gens, const Vector& x) {
  const auto ng = static_cast<int>(gens.cols());
  const auto m = static_cast<int>(gens.rows());
  Vector best = Vector::Zero(x.size());
  double bestDist = x.norm();
  for (std::uint32_t mask = 1; mask < (1u << ng); ++mask) {
    const int k = std::popcount(mask);
    if (k > m) continue;
    Matrix vs(m, k);
    int c = 0;
    for (int i = 0; i < ng; ++i) {
      if (mask & (1u << i)) vs.col(c++) = gens.col(i);
    }
    Eigen::ColPivHouseholderQR<Matrix> qr(vs);
    qr.setThreshold(1e-10);
    if (qr.rank() < k) continue;
    const Vector coef = qr.solve(x);
    if (coef.minCoeff() < -1e-12 * scaleOf(x)) continue;
    const Vector p = vs * coef.cwiseMax(0.0);
    const double d = (x - p).norm();
    if (d < bestDist) {
      bestDist = d;
      best = p;
    }
  }
  return best;
}

}  // namespace

Vector projectOracle(const ConeSpec& cone, const Vector& x) {
  detail::requireDim(cone, x, "projectOracle");
  requireFinite(x, "oracle input");
  if (const auto* l = cone.get<Lorentz>(); l != nullptr && l->dim > 2) {
    // The projection stays in the plane spanned by the axis and xbar, where
    // the cone is the planar cone {(a, b) : b >= |a|}.
    const Eigen::Index n = x.size() - 1;
    const double r = x.head(n).norm();
    Vector w = Vector::Zero(n);
    if (r > 0.0) {
      w = x.head(n) / r;
    } else {
      w(0) = 1.0;
    }
    Vector planar(2);
    planar << r, x(n);
    const Vector q = projectOracle(ConeSpec::lorentz(2), planar);
    Vector p(x.size());
    p.head(n) = q(0) * w;
    p(n) = q(1);
    return p;
  }
  if (const auto* v = cone.get<PolyhedralV>()) {
    if (v->generators.cols() > kOracleLimit) throw Unsupported("projectOracle: more than 20 generators");
    return oracleFromGenerators(v->generators, x);
  }
  const Matrix normals = facetNormals(cone);
  if (normals.cols() > kOracleLimit) throw Unsupported("projectOracle: more than 20 facets");
  return oracleFromNormals(normals, x);
}

Vector projectHyperplane(const Hyperplane& h, const Vector& x) {
  if (h.normal.size() != x.size() || h.anchor.size() != x.size()) {
    throw DimensionMismatch("projectHyperplane: dimension mismatch");
  }
  if (std::abs(h.normal.norm() - 1.0) > 1e-12) {
    throw InvalidInput("projectHyperplane: normal must have unit length");
  }
  return x - (h.normal.dot(x) - h.normal.dot(h.anchor)) * h.normal;
}

Vector lorentzSupportNormal(const Vector& x) {
  const Eigen::Index n = x.size() - 1;
  if (n < 1) throw InvalidInput("lorentzSupportNormal: dimension must be at least 2");
  const double r = x.head(n).norm();
  if (r == 0.0) throw InvalidInput("lorentzSupportNormal: point must be a nonzero boundary point");
  Vector u(x.size());
  u.head(n) = x.head(n) / r;
  u(n) = -1.0;
  return u / std::sqrt(2.0);
}

bool boundaryRayPreimageCheck(const ConeSpec& lorentz, const Vector& x, const Vector& u, int samples,
                              std::uint64_t seed) {
  if (lorentz.get<Lorentz>() == nullptr) {
    throw InvalidInput("boundaryRayPreimageCheck: cone must be a Lorentz cone");
  }
  detail::requireDim(lorentz, x, "boundaryRayPreimageCheck");
  detail::requireDim(lorentz, u, "boundaryRayPreimageCheck");
  if (samples < 1) throw InvalidInput("boundaryRayPreimageCheck: samples must be positive");
  const Eigen::Index n = x.size() - 1;
  const double xn = x.norm();
  if (xn == 0.0 || std::abs(x(n) - x.head(n).norm()) > 1e-9 * xn) {
    throw InvalidInput("boundaryRayPreimageCheck: x is not a nonzero boundary point");
  }
  if (std::abs(u.norm() - 1.0) > 1e-9 || std::abs(u.dot(x)) > 1e-9 * xn ||
      !membership(lorentz, -u, 1e-9)) {
    throw InvalidInput("boundaryRayPreimageCheck: u is not the unit supporting normal at x");
  }

  const double tol = 1e-8;
  const Vector xhat = x / xn;
  const auto offRay = [&](const Vector& p) {
    const double along = std::max(0.0, p.dot(xhat));
    return (p - along * xhat).norm() > tol * std::max(1.0, p.norm());
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_real_distribution<double> pos(0.0, 2.0);
  std::uniform_real_distribution<double> off(0.1, 2.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  for (int s = 0; s < samples; ++s) {
    // (a) the closed half-plane beta >= 0 maps onto the ray.
    const double alpha = coef(rng);
    const double beta = pos(rng);
    const Vector z = alpha * xhat + beta * u;
    const Vector expected = std::max(alpha, 0.0) * xhat;
    if ((project(lorentz, z).point - expected).norm() > tol * std::max(1.0, z.norm())) return false;

    // (b) the open half-plane beta < 0 maps off the ray.
    const Vector zb = coef(rng) * xhat - off(rng) * u;
    if (!offRay(project(lorentz, zb).point)) return false;

    // (c) points off the plane, outside -K, map off the ray.
    if (x.size() > 2) {
      Vector w(x.size());
      for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = gauss(rng);
      w -= w.dot(xhat) * xhat + w.dot(u) * u;
      if (w.norm() < 1e-6) continue;
      w.normalize();
      const double sign = (rng() & 1u) ? 1.0 : -1.0;
      const Vector zc = coef(rng) * xhat + coef(rng) * u + sign * off(rng) * w;
      if (membership(lorentz, -zc, 0.0)) continue;
      if (!offRay(project(lorentz, zc).point)) return false;
    }
  }
  return true;
}

}  // namespace isocone
