#include "isocone/cli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "isocone/cone_io.hpp"
#include "isocone/errors.hpp"
#include "isocone/isotonicity.hpp"
#include "isocone/projection.hpp"
#include "report.hpp"

namespace isocone::cli {
namespace {

struct Flags {
  double tol = kDefaultTol;
  std::int64_t trials = 10000;
  std::uint64_t seed = 42;
  double scale = 10.0;
  std::string out;
};

struct Outcome {
  ordered_json report;
  int code = kPass;
};

class Session {
 public:
  explicit Session(std::string command) { report_["command"] = std::move(command); }

  ConeSpec load(const std::string& path) {
    ConeSpec cone = loadCone(path);
    inputs_.push_back({{"path", path}, {"sha256", sha256File(path)}});
    return cone;
  }

  ordered_json& report() { return report_; }

  Outcome finish(std::string verdict, int code) {
    ordered_json out;
    out["command"] = report_["command"];
    out["verdict"] = std::move(verdict);
    for (auto it = report_.begin(); it != report_.end(); ++it) {
      if (it.key() != "command") out[it.key()] = it.value();
    }
    out["inputs"] = inputs_;
    return {std::move(out), code};
  }

 private:
  ordered_json report_;
  ordered_json inputs_ = ordered_json::array();
};

void requireTol(const Flags& f) {
  if (!(f.tol > 0.0)) throw InvalidInput("--tol must be positive");
}

Outcome cmdProject(const std::string& coneFile, const std::string& pointSpec, const Flags& f) {
  requireTol(f);
  Session s("project");
  const ConeSpec k = s.load(coneFile);
  const Vector x = parsePoint(pointSpec);
  const ProjectionResult r = project(k, x);
  const Vector q = project(dual(k), Vector(-x)).point;
  auto& rep = s.report();
  rep["point"] = toJson(r.point);
  rep["dual_point"] = toJson(q);
  rep["residual"] = r.residual;
  rep["moreau_inner"] = r.point.dot(q);
  rep["moreau_gap"] = (x - (r.point - q)).norm();
  rep["in_cone"] = membership(k, r.point, f.tol);
  rep["active_facets"] = r.activeFacets;
  rep["iterations"] = r.iterations;
  return s.finish("value", kPass);
}

Outcome cmdCertify(const std::string& kFile, const std::string& lFile, const Flags& f) {
  requireTol(f);
  Session s("certify");
  const ConeSpec k = s.load(kFile);
  const ConeSpec l = s.load(lFile);
  if (k.dim() != l.dim()) throw DimensionMismatch("certify: K and L differ in dimension");
  if (!isProper(k)) throw InvalidInput("certify: K is not a proper cone");
  if (!isProper(l)) throw InvalidInput("certify: L is not a proper cone");
  auto& rep = s.report();

  // A simplicial K with no subdual reflection admits no proper L at all.
  if (k.get<Simplicial>() != nullptr) {
    const SignFlipResult flip = signFlipSearch(k, f.tol);
    if (const auto* o = std::get_if<Obstruction>(&flip)) {
      if (!verifyCertificate(*o, k, &l, f.tol)) throw Error("certify: obstruction failed verification");
      rep["certificate"] = toJson(Certificate(*o));
      if (const auto t = tripleObstruction(k, f.tol)) rep["negative_triple"] = *t;
      return s.finish("refuted", kRefuted);
    }
  }

  const ContainmentReport c = certifyNecessary(k, l, f.tol);
  if (!verifyCertificate(c, k, &l, f.tol)) throw Error("certify: containment report failed verification");
  rep["certificate"] = toJson(Certificate(c));
  if (c.refutes()) return s.finish("refuted", kRefuted);
  if (c.interiorConditionHolds()) {
    rep["necessary_conditions_hold"] = true;
    return s.finish("inconclusive", kPass);
  }
  rep["necessary_conditions_hold"] = nullptr;
  return s.finish("inconclusive", kInconclusive);
}

Outcome cmdSignFlip(const std::string& kFile, const Flags& f) {
  requireTol(f);
  Session s("sign-flip");
  const ConeSpec k = s.load(kFile);
  const SignFlipResult r = signFlipSearch(k, f.tol);
  const Certificate cert = std::visit([](const auto& v) { return Certificate(v); }, r);
  if (!verifyCertificate(cert, k, nullptr, f.tol)) throw Error("sign-flip: certificate failed verification");
  s.report()["certificate"] = toJson(cert);
  if (std::holds_alternative<SubdualWitness>(r)) return s.finish("certified", kPass);
  return s.finish("refuted", kRefuted);
}

Outcome cmdFalsify(const std::string& kFile, const std::string& lFile, const Flags& f) {
  Session s("falsify");
  const ConeSpec k = s.load(kFile);
  const ConeSpec l = s.load(lFile);
  FalsifierConfig cfg;
  cfg.trials = f.trials;
  cfg.seed = f.seed;
  cfg.tol = f.tol;
  cfg.scale = f.scale;
  cfg.validate();
  auto& rep = s.report();
  rep["trials"] = cfg.trials;
  rep["seed"] = cfg.seed;
  rep["scale"] = cfg.scale;
  const auto ce = falsify(k, l, cfg);
  if (!ce) {
    rep["message"] = "no violation in " + std::to_string(cfg.trials) + " trials (not a proof of isotonicity)";
    return s.finish("inconclusive", kPass);
  }
  rep["certificate"] = toJson(Certificate(*ce));
  if (!verifyCertificate(*ce, k, &l, cfg.tol)) {
    rep["message"] = "candidate counterexample did not survive verification";
    return s.finish("inconclusive", kInconclusive);
  }
  return s.finish("refuted", kRefuted);
}

Outcome cmdRecognize(const std::string& kFile, const Flags& f) {
  requireTol(f);
  Session s("recognize-orthant-isotone");
  const ConeSpec k = s.load(kFile);
  const OrthantIsotoneReport r = orthantIsotoneRecognize(k, f.tol);
  if (!verifyCertificate(r, k, nullptr, f.tol)) throw Error("recognize: report failed verification");
  auto& rep = s.report();
  rep["certificate"] = toJson(Certificate(r));
  rep["max_facets"] = k.dim() * (k.dim() - 1);
  if (!r.isotone) return s.finish("refuted", kRefuted);
  if (isProper(k)) {
    const Alternatives a = alternativesCheck(k, f.tol);
    rep["alternatives"] = {{"in_orthant", a.inOrthant}, {"interior_disjoint", a.interiorDisjoint}};
  } else {
    rep["alternatives"] = nullptr;
  }
  return s.finish("certified", kPass);
}

Outcome cmdDual(const std::string& kFile, const Flags& f) {
  Session s("dual");
  const ConeSpec k = s.load(kFile);
  const ConeSpec d = dual(k);
  s.report()["dual_cone"] = ordered_json::parse(serializeCone(d));
  if (!f.out.empty()) saveCone(d, f.out);
  return s.finish("value", kPass);
}

void addCommonFlags(CLI::App* sub, Flags& f, bool randomized) {
  sub->add_option("--tol", f.tol, "Absolute tolerance")->capture_default_str();
  if (randomized) {
    sub->add_option("--trials", f.trials, "Number of falsifier trials")->capture_default_str();
    sub->add_option("--seed", f.seed, "Falsifier seed")->capture_default_str();
    sub->add_option("--scale", f.scale, "Sampling radius")->capture_default_str();
  } else {
    // Hidden; accepted for uniform scripting.
    sub->add_option("--trials", f.trials)->group("");
    sub->add_option("--seed", f.seed)->group("");
    sub->add_option("--scale", f.scale)->group("");
  }
}

// Keeps points such as "-1,2" positional.
std::vector<std::string> protectNegativePoints(std::vector<std::string> args) {
  for (auto& a : args) {
    if (a.size() > 1 && a[0] == '-' && (std::isdigit(static_cast<unsigned char>(a[1])) || a[1] == '.') &&
        a.find(',') != std::string::npos) {
      a.insert(a.begin(), ' ');
    }
  }
  return args;
}

}  // namespace

int run(const std::vector<std::string>& rawArgs, std::ostream& out, std::ostream& err) {
  CLI::App app{"Metric projection onto convex cones and order-isotonicity checks", "isocone"};
  app.require_subcommand(1);
  Flags f;
  std::string kFile;
  std::string lFile;
  std::string point;

  auto* project = app.add_subcommand("project", "Project a point onto a cone");
  project->add_option("cone", kFile, "Cone file")->required();
  project->add_option("point", point, "Point, as 1,-2,3 or [1,-2,3]")->required();

  auto* certify = app.add_subcommand("certify", "Check necessary conditions for L-isotone projection onto K");
  certify->add_option("K", kFile, "Cone file for K")->required();
  certify->add_option("L", lFile, "Cone file for L")->required();

  auto* signFlip = app.add_subcommand("sign-flip", "Search for a subdual reflection of a simplicial cone");
  signFlip->add_option("K", kFile, "Simplicial cone file")->required();

  auto* falsifyCmd = app.add_subcommand("falsify", "Randomized search for isotonicity counterexamples");
  falsifyCmd->add_option("K", kFile, "Cone file for K")->required();
  falsifyCmd->add_option("L", lFile, "Cone file for L")->required();

  auto* recognize = app.add_subcommand("recognize-orthant-isotone", "Decide R^m_+-isotone projection from facets");
  recognize->add_option("K", kFile, "Cone file")->required();

  auto* dualCmd = app.add_subcommand("dual", "Write the dual cone");
  dualCmd->add_option("K", kFile, "Cone file")->required();

  for (auto* sub : {project, certify, signFlip, falsifyCmd, recognize, dualCmd}) {
    addCommonFlags(sub, f, sub == falsifyCmd);
    sub->add_option("--out", f.out,
                    sub == dualCmd ? "Write the dual cone file here" : "Write the report here instead of stdout");
  }

  std::vector<std::string> args = protectNegativePoints(rawArgs);
  std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kInputError;
  }

  const auto started = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    if (project->parsed()) outcome = cmdProject(kFile, point, f);
    else if (certify->parsed()) outcome = cmdCertify(kFile, lFile, f);
    else if (signFlip->parsed()) outcome = cmdSignFlip(kFile, f);
    else if (falsifyCmd->parsed()) outcome = cmdFalsify(kFile, lFile, f);
    else if (recognize->parsed()) outcome = cmdRecognize(kFile, f);
    else outcome = cmdDual(kFile, f);
  } catch (const InvalidInput& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const DimensionMismatch& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const SingularMatrix& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const Unsupported& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    // Non-convergence, undecided LPs, sampling failure, failed verification.
    err << "inconclusive: " << e.what() << '\n';
    return kInconclusive;
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  outcome.report["timing_ms"] = ms;

  const std::string text = outcome.report.dump(2) + "\n";
  const bool reportToFile = !f.out.empty() && !dualCmd->parsed();
  if (reportToFile) {
    std::ofstream file(f.out);
    if (!file) {
      err << "input error: cannot write " << f.out << '\n';
      return kInputError;
    }
    file << text;
  } else {
    out << text;
  }
  return outcome.code;
}

}  // namespace isocone::cli
