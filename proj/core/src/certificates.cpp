#include <cmath>
#include <set>

#include "isocone/errors.hpp"
#include "isocone/isotonicity.hpp"
#include "isocone/projection.hpp"

namespace isocone {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

GramMatrix gramOf(const ConeSpec& K) {
  if (const auto* s = K.get<Simplicial>()) return gram(s->generators);
  const auto rays = extremeRays(K);
  if (!rays || rays->cols() != rays->rows()) throw Unsupported("certificate needs a simplicial cone");
  return gram(GeneratorMatrix(*rays));
}

bool verifyWitness(const SubdualWitness& w, const ConeSpec& K, double tol) {
  if (w.epsilon.dim() != K.dim()) return false;
  if (w.epsilon.positiveIndices() != w.indexSet) return false;
  const Matrix g = gramOf(K).matrix();
  const Vector e = w.epsilon.asVector();
  const Matrix flipped = e.asDiagonal() * g * e.asDiagonal();
  return flipped.minCoeff() >= -tol;
}

bool verifyObstruction(const Obstruction& o, const ConeSpec& K, double tol) {
  const GramMatrix g = gramOf(K);
  const auto& c = o.cycle;
  if (c.size() < 3) return false;
  if (std::set<int>(c.begin(), c.end()).size() != c.size()) return false;
  int negatives = 0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const int i = c[k];
    const int j = c[(k + 1) % c.size()];
    if (i < 0 || j < 0 || i >= g.dim() || j >= g.dim()) return false;
    const double gij = g(i, j);
    if (std::abs(gij) <= tol) return false;
    if (gij < 0.0) ++negatives;
  }
  return negatives % 2 == 1;
}

bool verifyCounterexample(const Counterexample& ce, const ConeSpec& K, const ConeSpec& L, double tol) {
  if (!leq(L, ce.x, ce.y, tol)) return false;
  const Vector px = project(K, ce.x).point;
  const Vector py = project(K, ce.y).point;
  const double scale = std::max({1.0, ce.x.norm(), ce.y.norm()});
  if ((px - ce.px).norm() > 1e-8 * scale || (py - ce.py).norm() > 1e-8 * scale) return false;
  return membershipMargin(L, py - px) < -10.0 * tol;
}

bool verifyRecognizer(const OrthantIsotoneReport& r, const ConeSpec& K, double tol) {
  const OrthantIsotoneReport fresh = orthantIsotoneRecognize(K, tol);
  if (fresh.isotone != r.isotone || fresh.facetCount != r.facetCount) return false;
  if (fresh.offendingNormal.has_value() != r.offendingNormal.has_value()) return false;
  if (fresh.offendingNormal && (*fresh.offendingNormal - *r.offendingNormal).norm() > 1e-12) return false;
  return true;
}

}  // namespace

bool verifyCertificate(const Certificate& cert, const ConeSpec& K, const ConeSpec* L, double tol) {
  try {
    return std::visit(Overloaded{
                          [&](const SubdualWitness& w) { return verifyWitness(w, K, tol); },
                          [&](const Obstruction& o) { return verifyObstruction(o, K, tol); },
                          [&](const ContainmentReport& r) {
                            return L != nullptr && certifyNecessary(K, *L, tol) == r;
                          },
                          [&](const Counterexample& ce) {
                            return L != nullptr && verifyCounterexample(ce, K, *L, tol);
                          },
                          [&](const OrthantIsotoneReport& r) { return verifyRecognizer(r, K, tol); },
                      },
                      cert);
  } catch (const Error&) {
    return false;
  }
}

}  // namespace isocone
