#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "isocone/cone_model.hpp"

namespace isocone {

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

/// K_eps is subdual; `indexSet` holds the indices with eps_i = +1 (I), the
/// rest form the complement I^c. Indices are 0-based.
struct SubdualWitness {
  SignVector epsilon;
  std::vector<int> indexSet;
};

/// A cycle i_0 -> i_1 -> ... -> i_{k-1} -> i_0 of nonzero Gram entries
/// carrying an odd number of negative entries. No index set I can separate
/// it, so no K_eps is subdual.
struct Obstruction {
  std::vector<int> cycle;
};

/// Structural necessary conditions for "P_K is L-isotone" between proper
/// cones. When an interior flag holds, K in L, L in K* and K subdual must all
/// hold as well; otherwise isotonicity is refuted.
struct ContainmentReport {
  bool kInL = false;
  bool lInKstar = false;
  bool kSubdualOk = false;
  bool interiorKstarL = false;
  bool interiorKstarLstar = false;

  bool interiorConditionHolds() const noexcept { return interiorKstarL || interiorKstarLstar; }
  bool containmentsHold() const noexcept { return kInL && lInKstar && kSubdualOk; }
  bool refutes() const noexcept { return interiorConditionHolds() && !containmentsHold(); }

  friend bool operator==(const ContainmentReport&, const ContainmentReport&) = default;
};

/// x <=_L y but P_K y - P_K x is outside L by `margin` (negative).
struct Counterexample {
  Vector x;
  Vector y;
  Vector px;
  Vector py;
  Vector violation;
  double margin = 0.0;
  std::int64_t trial = 0;
};

struct OrthantIsotoneReport {
  bool isotone = false;
  std::optional<Vector> offendingNormal;
  int facetCount = 0;
};

using Certificate = std::variant<SubdualWitness, Obstruction, ContainmentReport, Counterexample, OrthantIsotoneReport>;

using SignFlipResult = std::variant<SubdualWitness, Obstruction>;

struct FalsifierConfig {
  std::int64_t trials = 10000;
  std::uint64_t seed = 42;
  double tol = kDefaultTol;
  double scale = 10.0;

  /// Throws InvalidInput unless trials >= 1, tol > 0, scale > 0.
  void validate() const;
};

// ---------------------------------------------------------------------------
// Orderings and structural tests
// ---------------------------------------------------------------------------

/// x <=_L y, i.e. y - x in L.
bool leq(const ConeSpec& L, const Vector& x, const Vector& y, double tol = kDefaultTol);

/// Whether the hyperplane H(u, 0) is K-isotone: the map x -> x - <u, x> u
/// sends every generator of K back into K. Needs generators of K.
bool hyperplaneIsotone(const ConeSpec& K, const Vector& u, double tol = kDefaultTol);

/// All Gram entries >= -tol.
bool checkSubdual(const GeneratorMatrix& e, double tol = kDefaultTol);

/// Same test on any cone with a square generator description.
bool checkSubdual(const ConeSpec& K, double tol = kDefaultTol);

/// Two-colors the sign graph of G (edge "same side" for G_ij > tol,
/// "opposite side" for G_ij < -tol) by breadth-first search. Succeeds with
/// the eps whose K_eps is subdual, or returns the odd cycle found.
SignFlipResult signFlipSearch(const GramMatrix& g, double tol = kDefaultTol);
SignFlipResult signFlipSearch(const ConeSpec& K, double tol = kDefaultTol);

/// Lexicographically first i < j < k with all three Gram entries < -tol.
std::optional<std::array<int, 3>> tripleObstruction(const GramMatrix& g, double tol = kDefaultTol);
std::optional<std::array<int, 3>> tripleObstruction(const ConeSpec& K, double tol = kDefaultTol);

/// Interior-intersection and containment flags for proper K and L. LPs run
/// with the default strictness margin; an undecided LP throws Indeterminate.
ContainmentReport certifyNecessary(const ConeSpec& K, const ConeSpec& L, double tol = kDefaultTol);

/// Recognizes cones whose projection is R^m_+-isotone from their facet
/// normals: at most two nonzero entries, of opposite signs when two, and at
/// most m(m-1) facets.
OrthantIsotoneReport orthantIsotoneRecognize(const ConeSpec& K, double tol = kDefaultTol);

struct Alternatives {
  bool inOrthant = false;         ///< K in R^m_+
  bool interiorDisjoint = false;  ///< int(K*) and R^m_+ do not meet
};

/// For proper, R^m_+-isotone K exactly one flag is expected to hold.
/// Throws InvalidInput when K is not proper or not recognized as isotone.
Alternatives alternativesCheck(const ConeSpec& K, double tol = kDefaultTol);

// ---------------------------------------------------------------------------
// Randomized refutation
// ---------------------------------------------------------------------------

/// Searches for x <=_L y with P_K x not <=_L P_K y. Trial t draws from a
/// generator seeded only by (cfg.seed, t), and the lowest failing trial is
/// returned, so results are reproducible. Finding nothing proves nothing.
std::optional<Counterexample> falsify(const ConeSpec& K, const ConeSpec& L, const FalsifierConfig& cfg);

/// Independent re-check of a certificate against the cones it speaks about.
/// `L` is required for counterexamples and containment reports. Never
/// throws; any failure yields false.
bool verifyCertificate(const Certificate& cert, const ConeSpec& K, const ConeSpec* L = nullptr,
                       double tol = kDefaultTol);

}  // namespace isocone
