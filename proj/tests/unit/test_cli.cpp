#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "isocone/cli.hpp"
#include "isocone/cone_io.hpp"
#include "isocone/isotonicity.hpp"

using namespace isocone;
using nlohmann::json;

namespace {

const std::string kFix = ISOCONE_FIXTURE_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fix(const std::string& name) { return kFix + "/" + name; }

Vector vecOf(const json& arr) {
  Vector v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) v(static_cast<Eigen::Index>(i)) = arr[i].get<double>();
  return v;
}

Vector vec3(double a, double b, double c) {
  Vector v(3);
  v << a, b, c;
  return v;
}

// Report without the timing field.
std::string stable(const std::string& text) {
  json j = json::parse(text);
  j.erase("timing_ms");
  return j.dump();
}

}  // namespace

TEST_CASE("project command") {
  const auto r = invoke({"project", fix("orthant3.json"), "1,-2,3"});
  REQUIRE(r.code == 0);
  const json j = r.report();
  CHECK(j["command"] == "project");
  CHECK(j["verdict"] == "value");
  CHECK((vecOf(j["point"]) - vec3(1, 0, 3)).norm() < 1e-15);
  CHECK((vecOf(j["dual_point"]) - vec3(0, 2, 0)).norm() < 1e-15);
  CHECK(j["inputs"][0]["sha256"].get<std::string>().size() == 64);
  CHECK(j.contains("timing_ms"));

  const auto l = invoke({"project", fix("lorentz3.json"), "[0, 4, 3]"});
  REQUIRE(l.code == 0);
  const Vector p = vecOf(l.report()["point"]);
  CHECK(std::abs(p(0)) < 1e-12);
  CHECK(p(1) == doctest::Approx(3.5));
  CHECK(p(2) == doctest::Approx(3.5));
  CHECK(std::abs(l.report()["moreau_inner"].get<double>()) < 1e-9);

  // A point in -K* of the simplicial fixture projects to zero.
  const auto k = loadCone(fix("simplicial2.json"));
  const auto s = invoke({"project", fix("simplicial2.json"), "-1,-1"});
  REQUIRE(s.code == 0);
  CHECK(membership(dual(k), Vector::Ones(2)));
  CHECK(vecOf(s.report()["point"]).norm() < 1e-12);
}

TEST_CASE("project input errors") {
  CHECK(invoke({"project", fix("orthant3.json"), "1,2"}).code == 3);
  CHECK(invoke({"project", fix("orthant3.json"), "1,x,2"}).code == 3);
  CHECK(invoke({"project", fix("orthant3.json"), "1,,2"}).code == 3);
  CHECK(invoke({"project", fix("bad_extra_field.json"), "1,2"}).code == 3);
  CHECK(invoke({"project", "/nonexistent.json", "1,2"}).code == 3);
  CHECK(invoke({"project", fix("orthant3.json")}).code == 3);
  CHECK(invoke({"nonsense"}).code == 3);
  CHECK(invoke({}).code == 3);
  const auto bad = invoke({"project", fix("orthant3.json"), "1,2"});
  CHECK(bad.out.empty());
  CHECK_FALSE(bad.err.empty());
}

TEST_CASE("certify command") {
  const auto same = invoke({"certify", fix("orthant2.json"), fix("orthant2.json")});
  CHECK(same.code == 0);
  const json s = same.report();
  CHECK(s["verdict"] == "inconclusive");
  for (const char* flag : {"k_in_l", "l_in_kstar", "k_subdual_ok", "interior_kstar_l", "interior_kstar_lstar"}) {
    CHECK(s["certificate"][flag] == true);
  }

  const auto lor = invoke({"certify", fix("orthant2.json"), fix("lorentz2.json")});
  CHECK(lor.code == 1);
  CHECK(lor.report()["verdict"] == "refuted");
  CHECK(lor.report()["certificate"]["k_in_l"] == false);

  const auto tri = invoke({"certify", fix("triangle3.json"), fix("orthant3.json")});
  CHECK(tri.code == 1);
  CHECK(tri.report()["certificate"]["kind"] == "obstruction");
  CHECK(tri.report()["negative_triple"] == json::array({0, 1, 2}));

  CHECK(invoke({"certify", fix("orthant2.json"), fix("orthant3.json")}).code == 3);
  CHECK(invoke({"certify", fix("lorentz3.json"), fix("orthant3.json")}).code == 3);
}

TEST_CASE("sign-flip command") {
  const auto id = invoke({"sign-flip", fix("orthant3.json")});
  CHECK(id.code == 0);
  CHECK(id.report()["certificate"]["epsilon"] == json::array({1, 1, 1}));

  const auto mixed = invoke({"sign-flip", fix("mixed3.json")});
  CHECK(mixed.code == 0);
  CHECK(mixed.report()["verdict"] == "certified");
  CHECK(mixed.report()["certificate"]["epsilon"] == json::array({1, -1, 1}));
  CHECK(mixed.report()["certificate"]["index_set"] == json::array({0, 2}));

  const auto tri = invoke({"sign-flip", fix("triangle3.json")});
  CHECK(tri.code == 1);
  CHECK(tri.report()["certificate"]["kind"] == "obstruction");

  CHECK(invoke({"sign-flip", fix("lorentz3.json")}).code == 3);
}

TEST_CASE("falsify command") {
  const auto none = invoke({"falsify", fix("orthant2.json"), fix("orthant2.json"), "--trials", "10000"});
  CHECK(none.code == 0);
  CHECK(none.report()["verdict"] == "inconclusive");
  CHECK(none.report()["trials"] == 10000);
  CHECK(none.report()["seed"] == 42);

  const auto found = invoke({"falsify", fix("orthant2.json"), fix("lorentz2.json"), "--seed", "42"});
  CHECK(found.code == 1);
  const json c = found.report()["certificate"];
  CHECK(c["kind"] == "counterexample");
  CHECK(c["margin"].get<double>() < -1e-8);

  CHECK(invoke({"falsify", fix("lorentz3.json"), fix("simplicial2.json")}).code == 3);
  CHECK(invoke({"falsify", fix("orthant2.json"), fix("orthant2.json"), "--trials", "0"}).code == 3);
  CHECK(invoke({"falsify", fix("orthant2.json"), fix("orthant2.json"), "--scale", "-1"}).code == 3);
}

TEST_CASE("falsify against a random simplicial L refutes the Lorentz cone") {
  const auto path = std::filesystem::temp_directory_path() / "isocone_cli_l.json";
  Matrix e(3, 3);
  e << 1, 0.2, 0.1, 0.3, 1, -0.2, 0.1, 0.4, 1;
  saveCone(ConeSpec::simplicial(e), path);
  CHECK(invoke({"falsify", fix("lorentz3.json"), path.string()}).code == 1);
  std::filesystem::remove(path);
}

TEST_CASE("reports are reproducible apart from timing") {
  const std::vector<std::string> args{"falsify", fix("orthant3.json"), fix("lorentz3.json"), "--seed", "7"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  CHECK(a.code == b.code);
  CHECK(stable(a.out) == stable(b.out));
}

TEST_CASE("recognize-orthant-isotone command") {
  const auto mono = invoke({"recognize-orthant-isotone", fix("monotone3.json")});
  CHECK(mono.code == 0);
  CHECK(mono.report()["verdict"] == "certified");
  CHECK(mono.report()["alternatives"]["in_orthant"] == true);
  CHECK(mono.report()["alternatives"]["interior_disjoint"] == false);

  CHECK(invoke({"recognize-orthant-isotone", fix("orthant3.json")}).code == 0);

  const auto three = invoke({"recognize-orthant-isotone", fix("three_support3.json")});
  CHECK(three.code == 1);
  CHECK(three.report()["certificate"]["offending_normal"].size() == 3);

  CHECK(invoke({"recognize-orthant-isotone", fix("lorentz3.json")}).code == 3);
}

TEST_CASE("dual command") {
  const auto o = invoke({"dual", fix("orthant3.json")});
  CHECK(o.code == 0);
  CHECK(o.report()["dual_cone"]["type"] == "orthant");
  CHECK(invoke({"dual", fix("lorentz3.json")}).report()["dual_cone"]["type"] == "lorentz");

  const auto path = std::filesystem::temp_directory_path() / "isocone_cli_dual.json";
  CHECK(invoke({"dual", fix("simplicial2.json"), "--out", path.string()}).code == 0);
  const auto f = loadCone(path);
  const auto k = loadCone(fix("simplicial2.json"));
  Matrix fm = f.get<Simplicial>()->generators.columns();
  const Matrix em = k.get<Simplicial>()->generators.columns();
  for (int j = 0; j < 2; ++j) fm.col(j) /= fm.col(j).dot(em.col(j));
  CHECK((fm.transpose() * em - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  std::filesystem::remove(path);
}

TEST_CASE("--out writes the report to a file") {
  const auto path = std::filesystem::temp_directory_path() / "isocone_cli_report.json";
  const auto r = invoke({"project", fix("orthant2.json"), "-1,2", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  const json j = json::parse(in);
  CHECK(j["point"] == json::array({0.0, 2.0}));
  std::filesystem::remove(path);
}

TEST_CASE("help exits cleanly") {
  const auto h = invoke({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("project") != std::string::npos);
}
