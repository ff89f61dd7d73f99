#include "isocone/cone_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "internal.hpp"
#include "isocone/errors.hpp"

namespace isocone {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

namespace detail {

Matrix canonicalColumns(const Matrix& columns, const char* what) {
  requireFinite(columns, what);
  std::vector<Vector> kept;
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    const double n = columns.col(j).norm();
    if (n == 0.0) throw InvalidInput(std::string(what) + " contains a zero vector");
    Vector u = columns.col(j) / n;
    const bool duplicate = std::any_of(kept.begin(), kept.end(), [&](const Vector& k) {
      return 1.0 - k.dot(u) < kDuplicateCosine;
    });
    if (!duplicate) kept.push_back(std::move(u));
  }
  Matrix out(columns.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t j = 0; j < kept.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = kept[j];
  return out;
}

Matrix columnsFrom(int dim, const std::vector<Vector>& vectors, const char* what) {
  Matrix m(dim, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != dim) {
      throw DimensionMismatch(std::string(what) + " vector " + std::to_string(j) + " has length " +
                              std::to_string(vectors[j].size()) + ", expected " + std::to_string(dim));
    }
    m.col(static_cast<Eigen::Index>(j)) = vectors[j];
  }
  return m;
}

void requireDim(const ConeSpec& cone, const Vector& x, const char* op) {
  if (x.size() != cone.dim()) {
    throw DimensionMismatch(std::string(op) + ": point has dimension " + std::to_string(x.size()) +
                            ", cone has dimension " + std::to_string(cone.dim()));
  }
}

namespace {

Matrix simplicialNormals(const GeneratorMatrix& e) {
  // K = {y : E^{-1} y >= 0}; facet normals are the negated rows of E^{-1}.
  Matrix n = -e.inverse().transpose();
  for (Eigen::Index j = 0; j < n.cols(); ++j) n.col(j).normalize();
  return n;
}

Matrix monotoneNonnegNormals(int m) {
  Matrix n = Matrix::Zero(m, m);
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i + 1 < m; ++i) {
    n(i, i) = -r;
    n(i + 1, i) = r;
  }
  n(m - 1, m - 1) = -1.0;
  return n;
}

}  // namespace

PolyhedralView polyhedralView(const ConeSpec& cone) {
  PolyhedralView view;
  view.dim = cone.dim();
  std::visit(Overloaded{
                 [&](const Orthant& c) {
                   view.generators = Matrix::Identity(c.dim, c.dim);
                   view.normals = -Matrix::Identity(c.dim, c.dim);
                 },
                 [&](const SignedOrthant& c) {
                   const Matrix d = c.epsilon.asVector().asDiagonal();
                   view.generators = d;
                   view.normals = -d;
                 },
                 [&](const Simplicial& c) {
                   view.generators = c.generators.columns();
                   view.normals = simplicialNormals(c.generators);
                 },
                 [&](const PolyhedralH& c) { view.normals = c.normals; },
                 [&](const PolyhedralV& c) { view.generators = c.generators; },
                 [&](const Lorentz& c) {
                   if (c.dim != 2) {
                     throw Unsupported("Lorentz cone of dimension " + std::to_string(c.dim) +
                                       " is not polyhedral");
                   }
                   const double r = 1.0 / std::sqrt(2.0);
                   Matrix g(2, 2);
                   g << r, -r, r, r;
                   Matrix n(2, 2);
                   n << r, -r, -r, -r;
                   view.generators = g;
                   view.normals = n;
                 },
                 [&](const MonotoneNonneg& c) {
                   view.generators = monotoneNonnegGenerators(c.dim);
                   view.normals = monotoneNonnegNormals(c.dim);
                 },
             },
             cone.variant());
  return view;
}

}  // namespace detail

std::string_view kindName(ConeKind kind) {
  switch (kind) {
    case ConeKind::Orthant: return "orthant";
    case ConeKind::SignedOrthant: return "signed_orthant";
    case ConeKind::Simplicial: return "simplicial";
    case ConeKind::PolyhedralH: return "halfspaces";
    case ConeKind::PolyhedralV: return "generators";
    case ConeKind::Lorentz: return "lorentz";
    case ConeKind::MonotoneNonneg: return "monotone_nonneg";
  }
  return "unknown";
}

namespace {

void requirePositiveDim(int dim, const char* what) {
  if (dim < 1) throw InvalidInput(std::string(what) + ": dimension must be positive");
}

}  // namespace

ConeSpec ConeSpec::orthant(int dim) {
  requirePositiveDim(dim, "orthant");
  return ConeSpec(Orthant{dim});
}

ConeSpec ConeSpec::signedOrthant(SignVector epsilon) { return ConeSpec(SignedOrthant{std::move(epsilon)}); }

ConeSpec ConeSpec::simplicial(GeneratorMatrix generators) {
  return ConeSpec(Simplicial{std::move(generators)});
}

ConeSpec ConeSpec::simplicial(Matrix columns) { return simplicial(GeneratorMatrix(std::move(columns))); }

ConeSpec ConeSpec::halfspaces(int dim, const Matrix& normals) {
  requirePositiveDim(dim, "halfspaces");
  if (normals.rows() != dim) throw DimensionMismatch("halfspaces: normal length differs from dim");
  if (normals.cols() == 0) throw InvalidInput("halfspaces: at least one normal is required");
  return ConeSpec(PolyhedralH{dim, detail::canonicalColumns(normals, "halfspace normals")});
}

ConeSpec ConeSpec::halfspaces(int dim, const std::vector<Vector>& normals) {
  return halfspaces(dim, detail::columnsFrom(dim, normals, "halfspace normal"));
}

ConeSpec ConeSpec::generators(int dim, const Matrix& generators) {
  requirePositiveDim(dim, "generators");
  if (generators.rows() != dim) throw DimensionMismatch("generators: vector length differs from dim");
  if (generators.cols() == 0) throw InvalidInput("generators: at least one generator is required");
  return ConeSpec(PolyhedralV{dim, detail::canonicalColumns(generators, "cone generators")});
}

ConeSpec ConeSpec::generators(int dim, const std::vector<Vector>& generators) {
  return ConeSpec::generators(dim, detail::columnsFrom(dim, generators, "generator"));
}

ConeSpec ConeSpec::lorentz(int dim) {
  if (dim < 2) throw InvalidInput("lorentz: dimension must be at least 2");
  return ConeSpec(Lorentz{dim});
}

ConeSpec ConeSpec::monotoneNonneg(int dim) {
  requirePositiveDim(dim, "monotone_nonneg");
  return ConeSpec(MonotoneNonneg{dim});
}

int ConeSpec::dim() const {
  return std::visit(Overloaded{
                        [](const Orthant& c) { return c.dim; },
                        [](const SignedOrthant& c) { return c.epsilon.dim(); },
                        [](const Simplicial& c) { return c.generators.dim(); },
                        [](const PolyhedralH& c) { return c.dim; },
                        [](const PolyhedralV& c) { return c.dim; },
                        [](const Lorentz& c) { return c.dim; },
                        [](const MonotoneNonneg& c) { return c.dim; },
                    },
                    variant_);
}

ConeKind ConeSpec::kind() const { return static_cast<ConeKind>(variant_.index()); }

Matrix monotoneNonnegGenerators(int dim) {
  Matrix g = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    g.col(k).head(k + 1).setConstant(1.0 / std::sqrt(static_cast<double>(k + 1)));
  }
  return g;
}

double membershipMargin(const ConeSpec& cone, const Vector& x) {
  detail::requireDim(cone, x, "membership");
  return std::visit(
      Overloaded{
          [&](const Orthant&) { return x.minCoeff(); },
          [&](const SignedOrthant& c) { return x.cwiseProduct(c.epsilon.asVector()).minCoeff(); },
          [&](const Simplicial& c) {
            const Matrix& inv = c.generators.inverse();
            double margin = std::numeric_limits<double>::infinity();
            for (Eigen::Index i = 0; i < inv.rows(); ++i) {
              margin = std::min(margin, inv.row(i).dot(x) / inv.row(i).norm());
            }
            return margin;
          },
          [&](const PolyhedralH& c) { return -(c.normals.transpose() * x).maxCoeff(); },
          [&](const PolyhedralV& c) { return -detail::nnlsUnchecked(c.generators, x, 1e-12).residualNorm; },
          [&](const Lorentz& c) { return x(c.dim - 1) - x.head(c.dim - 1).norm(); },
          [&](const MonotoneNonneg& c) {
            double margin = x(c.dim - 1);
            const double r = 1.0 / std::sqrt(2.0);
            for (int i = 0; i + 1 < c.dim; ++i) margin = std::min(margin, (x(i) - x(i + 1)) * r);
            return margin;
          },
      },
      cone.variant());
}

bool membership(const ConeSpec& cone, const Vector& x, double tol) {
  if (!(tol >= 0.0)) throw InvalidInput("membership: tolerance must be nonnegative");
  return membershipMargin(cone, x) >= -tol;
}

ConeSpec dual(const ConeSpec& cone) {
  return std::visit(Overloaded{
                        [&](const Orthant&) { return cone; },
                        [&](const SignedOrthant&) { return cone; },
                        [&](const Simplicial& c) {
                          return ConeSpec::simplicial(Matrix(c.generators.inverse().transpose()));
                        },
                        [&](const PolyhedralH& c) { return ConeSpec::generators(c.dim, Matrix(-c.normals)); },
                        [&](const PolyhedralV& c) { return ConeSpec::halfspaces(c.dim, Matrix(-c.generators)); },
                        [&](const Lorentz&) { return cone; },
                        [&](const MonotoneNonneg&) {
                          return ConeSpec::simplicial(Matrix(-detail::polyhedralView(cone).normals.value()));
                        },
                    },
                    cone.variant());
}

ConeSpec signFlip(const ConeSpec& cone, const SignVector& eps) {
  if (eps.dim() != cone.dim()) {
    throw DimensionMismatch("signFlip: sign vector has dimension " + std::to_string(eps.dim()) +
                            ", cone has dimension " + std::to_string(cone.dim()));
  }
  if (eps.isAllPositive()) return cone;
  const Matrix d = eps.asVector().asDiagonal();
  return std::visit(
      Overloaded{
          [&](const Orthant&) { return ConeSpec::signedOrthant(eps); },
          [&](const SignedOrthant& c) {
            std::vector<int> s(c.epsilon.signs());
            for (int i = 0; i < eps.dim(); ++i) s[static_cast<std::size_t>(i)] *= eps[i];
            return ConeSpec::signedOrthant(SignVector(std::move(s)));
          },
          [&](const Simplicial& c) { return ConeSpec::simplicial(Matrix(c.generators.columns() * d)); },
          [&](const MonotoneNonneg& c) { return ConeSpec::simplicial(Matrix(monotoneNonnegGenerators(c.dim) * d)); },
          [&](const auto&) -> ConeSpec {
            throw Unsupported(std::string("signFlip: unsupported cone type ") +
                              std::string(kindName(cone.kind())));
          },
      },
      cone.variant());
}

GramMatrix gram(const GeneratorMatrix& e) {
  Matrix g = e.columns().transpose() * e.columns();
  // Exact symmetry.
  g = 0.5 * (g + g.transpose()).eval();
  return GramMatrix(std::move(g));
}

Properness properness(const ConeSpec& cone, double margin) {
  const auto decide = [&](const Matrix& vectors, Sense sense) {
    if (numericalRank(vectors) < cone.dim()) return Properness::NotProper;
    std::vector<LinearConstraint> cs;
    cs.reserve(static_cast<std::size_t>(vectors.cols()));
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) cs.push_back({vectors.col(j), 0.0, sense});
    switch (lpFeasible(cs, kDefaultLpBox, margin).status) {
      case LpStatus::Feasible: return Properness::Proper;
      case LpStatus::Infeasible: return Properness::NotProper;
      case LpStatus::Indeterminate: return Properness::Indeterminate;
    }
    return Properness::Indeterminate;
  };
  if (const auto* v = cone.get<PolyhedralV>()) {
    // Generating: the generators span. Pointed: a functional is positive on all of them.
    return decide(v->generators, Sense::GreaterEqual);
  }
  if (const auto* h = cone.get<PolyhedralH>()) {
    // Nonempty interior: a point strictly inside every halfspace. Pointed: the normals span.
    return decide(h->normals, Sense::LessEqual);
  }
  return Properness::Proper;
}

bool isProper(const ConeSpec& cone, double margin) {
  const Properness p = properness(cone, margin);
  if (p == Properness::Indeterminate) {
    throw Indeterminate("isProper: LP could not decide properness");
  }
  return p == Properness::Proper;
}

Matrix facetNormals(const ConeSpec& cone) {
  if (cone.get<PolyhedralV>() != nullptr) {
    throw Unsupported("facets: generator-form cones have no facet description");
  }
  Matrix normals = detail::polyhedralView(cone).normals.value();
  if (cone.get<PolyhedralH>() == nullptr) return normals;

  // Drop normals implied by the others (u_i in cone of the rest, by Farkas).
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < normals.cols(); ++i) keep.push_back(i);
  for (Eigen::Index i = normals.cols() - 1; i >= 0 && keep.size() > 1; --i) {
    Matrix others(normals.rows(), static_cast<Eigen::Index>(keep.size()) - 1);
    Eigen::Index c = 0;
    for (Eigen::Index k : keep) {
      if (k != i) others.col(c++) = normals.col(k);
    }
    const auto res = detail::nnlsUnchecked(others, normals.col(i), 1e-12);
    if (res.residualNorm <= 1e-9) keep.erase(std::find(keep.begin(), keep.end(), i));
  }
  Matrix out(normals.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = normals.col(keep[j]);
  return out;
}

std::vector<Hyperplane> facets(const ConeSpec& cone) {
  const Matrix n = facetNormals(cone);
  std::vector<Hyperplane> out;
  out.reserve(static_cast<std::size_t>(n.cols()));
  for (Eigen::Index j = 0; j < n.cols(); ++j) out.push_back(Hyperplane::throughOrigin(n.col(j)));
  return out;
}

std::optional<Matrix> extremeRays(const ConeSpec& cone) {
  if (const auto* l = cone.get<Lorentz>(); l != nullptr && l->dim != 2) return std::nullopt;
  return detail::polyhedralView(cone).generators;
}

namespace {

bool sameColumnSet(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  std::vector<char> used(static_cast<std::size_t>(b.cols()), 0);
  for (Eigen::Index i = 0; i < a.cols(); ++i) {
    bool found = false;
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      if (!used[static_cast<std::size_t>(j)] && (a.col(i) - b.col(j)).cwiseAbs().maxCoeff() <= tol) {
        used[static_cast<std::size_t>(j)] = 1;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

bool sameCone(const ConeSpec& a, const ConeSpec& b, double tol) {
  if (a.dim() != b.dim()) return false;
  if (a.kind() == b.kind() &&
      (a.kind() == ConeKind::Orthant || a.kind() == ConeKind::Lorentz || a.kind() == ConeKind::MonotoneNonneg)) {
    return true;
  }
  const bool aLorentz = a.get<Lorentz>() != nullptr && a.dim() > 2;
  const bool bLorentz = b.get<Lorentz>() != nullptr && b.dim() > 2;
  if (aLorentz || bLorentz) return aLorentz && bLorentz;
  const auto va = detail::polyhedralView(a);
  const auto vb = detail::polyhedralView(b);
  if (va.generators && vb.generators) return sameColumnSet(*va.generators, *vb.generators, tol);
  if (va.normals && vb.normals) return sameColumnSet(facetNormals(a), facetNormals(b), tol);
  throw Unsupported("sameCone: representations cannot be compared without conversion");
}

}  // namespace isocone
