#include <doctest.h>

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "isocone/cone_io.hpp"
#include "isocone/errors.hpp"
#include "isocone/isotonicity.hpp"
#include "isocone/opt_kernels.hpp"
#include "isocone/projection.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace isocone;
using namespace isocone::testing;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double d : v) out(i++) = d;
  return out;
}

Matrix gram3(double g01, double g02, double g12) {
  Matrix g = Matrix::Identity(3, 3);
  g(0, 1) = g(1, 0) = g01;
  g(0, 2) = g(2, 0) = g02;
  g(1, 2) = g(2, 1) = g12;
  return g;
}

FalsifierConfig config(std::int64_t trials, std::uint64_t seed = 42) {
  FalsifierConfig cfg;
  cfg.trials = trials;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("leq examples") {
  const auto q = ConeSpec::orthant(2);
  CHECK(leq(q, vec({0, 0}), vec({1, 2})));
  CHECK_FALSE(leq(q, vec({0, 0}), vec({1, -1})));
  const Vector x = vec({0.3, -2, 7});
  CHECK(leq(ConeSpec::lorentz(3), x, x));
  CHECK_THROWS_AS(leq(q, vec({0, 0}), vec({1, 2, 3})), DimensionMismatch);
}

TEST_CASE("hyperplaneIsotone examples") {
  const auto q = ConeSpec::orthant(2);
  CHECK(hyperplaneIsotone(q, vec({1, -1}) / std::sqrt(2.0)));
  CHECK_FALSE(hyperplaneIsotone(q, vec({1, 1}) / std::sqrt(2.0)));
  CHECK(hyperplaneIsotone(q, vec({1, 0})));
  CHECK_THROWS_AS(hyperplaneIsotone(ConeSpec::lorentz(3), vec({1, 0, 0})), Unsupported);
  CHECK_THROWS_AS(hyperplaneIsotone(q, vec({1, 1})), InvalidInput);
}

TEST_CASE("checkSubdual examples") {
  CHECK(checkSubdual(GeneratorMatrix(Matrix::Identity(3, 3))));
  CHECK_FALSE(checkSubdual(coneFromGram(gram3(-0.3, 0, 0))));
  CHECK(checkSubdual(ConeSpec::monotoneNonneg(3)));
  CHECK_THROWS_AS(checkSubdual(ConeSpec::lorentz(3)), Unsupported);
}

TEST_CASE("signFlipSearch examples") {
  const auto id = signFlipSearch(GramMatrix(Matrix::Identity(4, 4)));
  REQUIRE(std::holds_alternative<SubdualWitness>(id));
  CHECK(std::get<SubdualWitness>(id).epsilon == SignVector::ones(4));
  CHECK(std::get<SubdualWitness>(id).indexSet == std::vector<int>{0, 1, 2, 3});

  const auto mixed = signFlipSearch(GramMatrix(gram3(-0.3, 0.2, -0.1)));
  REQUIRE(std::holds_alternative<SubdualWitness>(mixed));
  const auto& w = std::get<SubdualWitness>(mixed);
  CHECK(w.epsilon == SignVector({1, -1, 1}));
  CHECK(w.indexSet == std::vector<int>{0, 2});
  // Brute force finds exactly this witness and its negation.
  const auto all = bruteSubdualSigns(gram3(-0.3, 0.2, -0.1), kDefaultTol);
  CHECK(all.size() == 2);
  CHECK(std::find(all.begin(), all.end(), w.epsilon.signs()) != all.end());

  const auto tri = signFlipSearch(GramMatrix(gram3(-0.4, -0.4, -0.4)));
  REQUIRE(std::holds_alternative<Obstruction>(tri));
  auto cycle = std::get<Obstruction>(tri).cycle;
  std::sort(cycle.begin(), cycle.end());
  CHECK(cycle == std::vector<int>{0, 1, 2});
}

TEST_CASE("signFlipSearch matches brute force on small patterns") {
  Rng rng(301);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 2 + trial % 7;
    const Matrix g = randomSignPatternGram(rng, m);
    const bool feasible = !bruteSubdualSigns(g, kDefaultTol).empty();
    const auto r = signFlipSearch(GramMatrix(g));
    CHECK(std::holds_alternative<SubdualWitness>(r) == feasible);
    const auto k = coneFromGram(g);
    if (const auto* w = std::get_if<SubdualWitness>(&r)) {
      CHECK(verifyCertificate(*w, k));
      CHECK(checkSubdual(signFlip(k, w->epsilon)));
    } else {
      CHECK(verifyCertificate(std::get<Obstruction>(r), k));
    }
  }
}

TEST_CASE("tripleObstruction examples") {
  CHECK_FALSE(tripleObstruction(GramMatrix(Matrix::Identity(3, 3))).has_value());
  const auto t = tripleObstruction(GramMatrix(gram3(-0.4, -0.4, -0.4)));
  REQUIRE(t.has_value());
  CHECK(*t == std::array<int, 3>{0, 1, 2});
  CHECK_FALSE(tripleObstruction(GramMatrix(gram3(-0.4, 0, 0))).has_value());
  CHECK(tripleObstruction(negativeTriangleCone()).has_value());
}

TEST_CASE("a negative triple always yields an obstruction") {
  Rng rng(303);
  int triples = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Matrix g = randomSignPatternGram(rng, 3 + trial % 5);
    if (tripleObstruction(GramMatrix(g))) {
      ++triples;
      CHECK(std::holds_alternative<Obstruction>(signFlipSearch(GramMatrix(g))));
    }
  }
  CHECK(triples > 0);
}

TEST_CASE("certifyNecessary examples") {
  for (int m = 1; m <= 4; ++m) {
    const auto r = certifyNecessary(ConeSpec::orthant(m), ConeSpec::orthant(m));
    CHECK(r.kInL);
    CHECK(r.lInKstar);
    CHECK(r.kSubdualOk);
    CHECK(r.interiorKstarL);
    CHECK(r.interiorKstarLstar);
    CHECK_FALSE(r.refutes());
  }

  const auto lor = certifyNecessary(ConeSpec::orthant(2), ConeSpec::lorentz(2));
  CHECK(lor.interiorConditionHolds());
  CHECK_FALSE(lor.kInL);
  CHECK(lor.refutes());
  CHECK(verifyCertificate(lor, ConeSpec::orthant(2), nullptr) == false);  // L missing
  const auto l2 = ConeSpec::lorentz(2);
  CHECK(verifyCertificate(lor, ConeSpec::orthant(2), &l2));

  const auto mono = ConeSpec::monotoneNonneg(3);
  const auto sub = certifyNecessary(mono, dual(mono));
  CHECK(sub.kInL);
  CHECK(sub.lInKstar);
  CHECK(sub.kSubdualOk);
}

TEST_CASE("certifyNecessary on self-dual cones") {
  for (const auto& k : {ConeSpec::orthant(3), ConeSpec::lorentz(2),
                        ConeSpec::signedOrthant(SignVector({1, -1, 1}))}) {
    const auto r = certifyNecessary(k, k);
    CHECK(r.containmentsHold());
  }
}

TEST_CASE("certifyNecessary errors") {
  CHECK_THROWS_AS(certifyNecessary(ConeSpec::orthant(2), ConeSpec::orthant(3)), DimensionMismatch);
  Matrix flat(3, 2);
  flat << 1, 0, 0, 1, 0, 0;
  CHECK_THROWS_AS(certifyNecessary(ConeSpec::orthant(3), ConeSpec::generators(3, flat)), InvalidInput);
  CHECK_THROWS_AS(certifyNecessary(ConeSpec::lorentz(3), ConeSpec::orthant(3)), Unsupported);
}

TEST_CASE("orthantIsotoneRecognize examples") {
  const auto mono = orthantIsotoneRecognize(ConeSpec::monotoneNonneg(3));
  CHECK(mono.isotone);
  CHECK(mono.facetCount == 3);
  CHECK(orthantIsotoneRecognize(ConeSpec::orthant(4)).isotone);

  const Vector bad = vec({1, 1, -1}) / std::sqrt(3.0);
  const auto k = ConeSpec::halfspaces(3, std::vector<Vector>{vec({-1, 0, 0}), vec({0, -1, 0}), bad});
  const auto r = orthantIsotoneRecognize(k);
  CHECK_FALSE(r.isotone);
  REQUIRE(r.offendingNormal.has_value());
  CHECK((*r.offendingNormal - bad).norm() < 1e-12);
  CHECK(verifyCertificate(r, k));

  // Two same-signed entries are not allowed either.
  const auto same = ConeSpec::halfspaces(2, std::vector<Vector>{vec({-1, 0}), vec({1, 1})});
  CHECK_FALSE(orthantIsotoneRecognize(same).isotone);
  CHECK_THROWS_AS(orthantIsotoneRecognize(ConeSpec::generators(2, Matrix::Identity(2, 2))), Unsupported);
}

TEST_CASE("recognized cones pass the falsifier against the orthant") {
  Rng rng(305);
  for (int trial = 0; trial < 5; ++trial) {
    const int m = 2 + trial % 3;
    const auto k = ConeSpec::halfspaces(m, randomTwoSupportNormals(rng, m));
    REQUIRE(orthantIsotoneRecognize(k).isotone);
    CHECK_FALSE(falsify(k, ConeSpec::orthant(m), config(500, 7 + trial)).has_value());
  }
}

TEST_CASE("alternativesCheck examples") {
  const auto a = alternativesCheck(ConeSpec::monotoneNonneg(3));
  CHECK(a.inOrthant);
  CHECK_FALSE(a.interiorDisjoint);

  // -R^m_+ is proper and R^m_+-isotone; it takes the second alternative.
  const auto neg = alternativesCheck(ConeSpec::signedOrthant(SignVector({-1, -1, -1})));
  CHECK_FALSE(neg.inOrthant);
  CHECK(neg.interiorDisjoint);

  Rng rng(307);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 2 + trial % 4;
    const auto alt = alternativesCheck(ConeSpec::halfspaces(m, randomTwoSupportNormals(rng, m)));
    CHECK(alt.inOrthant != alt.interiorDisjoint);
  }
}

TEST_CASE("alternativesCheck preconditions") {
  CHECK_THROWS_AS(alternativesCheck(ConeSpec::lorentz(3)), Unsupported);
  const Vector bad = vec({1, 1, -1}) / std::sqrt(3.0);
  const auto k = ConeSpec::halfspaces(3, std::vector<Vector>{vec({-1, 0, 0}), vec({0, -1, 0}), bad});
  CHECK_THROWS_AS(alternativesCheck(k), InvalidInput);
}

TEST_CASE("reflected orthants meet neither K nor K* in the interior of their duals") {
  // For K = R^m_+ and eps != 1: int(K_eps*) does not meet K (= K*).
  for (int m = 1; m <= 4; ++m) {
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
      std::vector<LinearConstraint> cs;
      for (int i = 0; i < m; ++i) {
        const double e = (mask & (1u << i)) ? -1.0 : 1.0;
        Vector a = Vector::Zero(m);
        a(i) = e;
        cs.push_back({a, 0.0, Sense::GreaterEqual});  // y in int(K_eps*) = int(K_eps)
        Vector b = Vector::Zero(m);
        b(i) = 1.0;
        cs.push_back({b, 0.0, Sense::GreaterEqual});  // y in K
      }
      CHECK(lpFeasible(cs).status == LpStatus::Infeasible);
    }
  }
}

TEST_CASE("falsify examples") {
  for (int m = 1; m <= 4; ++m) {
    CHECK_FALSE(falsify(ConeSpec::orthant(m), ConeSpec::orthant(m), config(10000)).has_value());
  }
  const auto k = ConeSpec::orthant(2);
  const auto l = ConeSpec::lorentz(2);
  const auto ce = falsify(k, l, config(10000));
  REQUIRE(ce.has_value());
  CHECK(leq(l, ce->x, ce->y));
  CHECK(ce->margin < -10 * kDefaultTol);
  CHECK(verifyCertificate(*ce, k, &l));

  for (std::uint32_t mask = 0; mask < 8; ++mask) {
    std::vector<int> s(3);
    for (int i = 0; i < 3; ++i) s[static_cast<std::size_t>(i)] = (mask & (1u << i)) ? -1 : 1;
    CHECK_FALSE(falsify(ConeSpec::orthant(3), ConeSpec::signedOrthant(SignVector(s)), config(2000)).has_value());
  }
}

TEST_CASE("falsify is deterministic") {
  const auto k = ConeSpec::lorentz(3);
  Rng rng(309);
  const auto l = randomSimplicial(rng, 3);
  const auto a = falsify(k, l, config(10000, 5));
  const auto b = falsify(k, l, config(10000, 5));
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  CHECK(a->trial == b->trial);
  CHECK(a->x == b->x);
  CHECK(a->y == b->y);
  CHECK(a->margin == b->margin);
}

TEST_CASE("falsify configuration and sampling errors") {
  auto cfg = config(0);
  CHECK_THROWS_AS(falsify(ConeSpec::orthant(2), ConeSpec::orthant(2), cfg), InvalidInput);
  cfg = config(10);
  cfg.tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidInput);
  cfg = config(10);
  cfg.scale = -1.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidInput);
  CHECK_THROWS_AS(falsify(ConeSpec::orthant(2), ConeSpec::orthant(3), config(10)), DimensionMismatch);

  // A very thin halfspace cone defeats rejection sampling in the box.
  const double t = 1e-5;
  const auto thin = ConeSpec::halfspaces(
      3, std::vector<Vector>{vec({-1, 0, 0}), vec({0, -1, 0}), vec({1, 0, -t}), vec({0, 1, -t})});
  CHECK_THROWS_AS(falsify(ConeSpec::orthant(3), thin, config(10)), SamplingFailure);
}

TEST_CASE("verifyCertificate rejects tampering") {
  const auto k = coneFromGram(gram3(-0.3, 0.2, -0.1));
  const auto r = signFlipSearch(k);
  REQUIRE(std::holds_alternative<SubdualWitness>(r));
  const auto w = std::get<SubdualWitness>(r);
  CHECK(verifyCertificate(w, k));

  SubdualWitness tampered{SignVector({1, 1, 1}), {0, 1, 2}};
  CHECK_FALSE(verifyCertificate(tampered, k));
  SubdualWitness mismatched{w.epsilon, {0}};
  CHECK_FALSE(verifyCertificate(mismatched, k));

  const auto tri = negativeTriangleCone();
  CHECK(verifyCertificate(Obstruction{{0, 1, 2}}, tri));
  CHECK_FALSE(verifyCertificate(Obstruction{{0, 1}}, tri));
  CHECK_FALSE(verifyCertificate(Obstruction{{0, 1, 2}}, ConeSpec::simplicial(Matrix::Identity(3, 3))));

  const auto q = ConeSpec::orthant(2);
  const auto l = ConeSpec::lorentz(2);
  auto ce = falsify(q, l, config(10000)).value();
  ce.py = ce.px;
  CHECK_FALSE(verifyCertificate(ce, q, &l));

  ContainmentReport forged = certifyNecessary(q, l);
  forged.kInL = true;
  CHECK_FALSE(verifyCertificate(forged, q, &l));
}

TEST_CASE("stored Lorentz counterexample fixture verifies") {
  std::ifstream in(std::string(ISOCONE_FIXTURE_DIR) + "/counterexample_orthant2_lorentz2.json");
  REQUIRE(in.good());
  const auto j = nlohmann::json::parse(in);
  const auto k = parseCone(j["K"].dump());
  const auto l = parseCone(j["L"].dump());
  const auto v = [](const nlohmann::json& a) {
    Vector out(static_cast<Eigen::Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) out(static_cast<Eigen::Index>(i)) = a[i].get<double>();
    return out;
  };
  Counterexample fixed;
  fixed.x = v(j["x"]);
  fixed.y = v(j["y"]);
  fixed.px = v(j["px"]);
  fixed.py = v(j["py"]);
  fixed.violation = fixed.py - fixed.px;
  fixed.margin = j["margin"].get<double>();
  fixed.trial = j["trial"].get<std::int64_t>();
  CHECK(verifyCertificate(fixed, k, &l));

  // The seeded search still lands on the same witness.
  const auto again = falsify(k, l, config(10000, j["seed"].get<std::uint64_t>()));
  REQUIRE(again.has_value());
  CHECK(again->trial == fixed.trial);
  CHECK((again->x - fixed.x).norm() == 0.0);
  CHECK((again->y - fixed.y).norm() == 0.0);
}
