#pragma once

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "isocone/types.hpp"

namespace isocone {

/// The nonnegative orthant R^m_+.
struct Orthant {
  int dim;
};

/// D R^m_+ with D = diag(epsilon).
struct SignedOrthant {
  SignVector epsilon;
};

/// cone{e_1, ..., e_m} for linearly independent unit e_i.
struct Simplicial {
  GeneratorMatrix generators;
};

/// {x : <u_i, x> <= 0 for all i}; columns of `normals` are the unit u_i.
struct PolyhedralH {
  int dim;
  Matrix normals;
};

/// Nonnegative combinations of the unit columns of `generators`.
struct PolyhedralV {
  int dim;
  Matrix generators;
};

/// {(xbar, t) : t >= ||xbar||}; t is the last coordinate.
struct Lorentz {
  int dim;
};

/// {x : x_1 >= x_2 >= ... >= x_m >= 0}.
struct MonotoneNonneg {
  int dim;
};

enum class ConeKind {
  Orthant,
  SignedOrthant,
  Simplicial,
  PolyhedralH,
  PolyhedralV,
  Lorentz,
  MonotoneNonneg,
};

/// File-format name of a cone family ("orthant", "halfspaces", ...).
std::string_view kindName(ConeKind kind);

/// Tagged description of a closed convex cone in R^dim. Factories validate
/// and canonicalize: vectors are unit length, near-duplicates are merged.
class ConeSpec {
 public:
  using Variant =
      std::variant<Orthant, SignedOrthant, Simplicial, PolyhedralH, PolyhedralV, Lorentz, MonotoneNonneg>;

  static ConeSpec orthant(int dim);
  static ConeSpec signedOrthant(SignVector epsilon);
  static ConeSpec simplicial(GeneratorMatrix generators);
  static ConeSpec simplicial(Matrix columns);
  static ConeSpec halfspaces(int dim, const Matrix& normals);
  static ConeSpec halfspaces(int dim, const std::vector<Vector>& normals);
  static ConeSpec generators(int dim, const Matrix& generators);
  static ConeSpec generators(int dim, const std::vector<Vector>& generators);
  static ConeSpec lorentz(int dim);
  static ConeSpec monotoneNonneg(int dim);

  int dim() const;
  ConeKind kind() const;
  const Variant& variant() const noexcept { return variant_; }

  template <class T>
  const T* get() const noexcept {
    return std::get_if<T>(&variant_);
  }

 private:
  explicit ConeSpec(Variant v) : variant_(std::move(v)) {}

  Variant variant_;
};

/// Signed distance-like margin: >= 0 inside the cone, < 0 outside.
/// Facet families: -max <u_i, x> over unit normals. Generator form: minus
/// the NNLS residual. Lorentz: t - ||xbar||.
double membershipMargin(const ConeSpec& cone, const Vector& x);

bool membership(const ConeSpec& cone, const Vector& x, double tol = kDefaultTol);

/// K* = {y : <x, y> >= 0 for all x in K}.
ConeSpec dual(const ConeSpec& cone);

/// K_eps = cone{eps^1 e_1, ..., eps^m e_m}. Accepts simplicial cones and the
/// families that are simplicial in disguise (orthants, monotone nonnegative).
ConeSpec signFlip(const ConeSpec& cone, const SignVector& eps);

GramMatrix gram(const GeneratorMatrix& e);

enum class Properness { Proper, NotProper, Indeterminate };

/// Three-valued properness test; LP checks use `margin` as strictness.
Properness properness(const ConeSpec& cone, double margin = 1e-7);

/// Throws Indeterminate when the LP cannot decide.
bool isProper(const ConeSpec& cone, double margin = 1e-7);

/// Minimal facet list K = intersection of H_-(u_i, 0). Throws Unsupported
/// for the generator form and Lorentz cones of dimension >= 3.
std::vector<Hyperplane> facets(const ConeSpec& cone);

/// Unit facet normals as columns (minimal, same order as facets()).
Matrix facetNormals(const ConeSpec& cone);

/// Unit generators as columns, when a finite generator description is
/// available without facet enumeration.
std::optional<Matrix> extremeRays(const ConeSpec& cone);

/// Generators of the monotone nonnegative cone: (1,..,1,0,..,0)/sqrt(k).
Matrix monotoneNonnegGenerators(int dim);

/// True when both descriptions denote the same cone: identical closed-form
/// family, or equal unit generator (or normal) sets up to permutation.
bool sameCone(const ConeSpec& a, const ConeSpec& b, double tol = 1e-9);

}  // namespace isocone
