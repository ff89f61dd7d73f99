#include "isocone/cone_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "isocone/errors.hpp"

namespace isocone {
namespace {

using nlohmann::json;

Vector toVector(const json& arr, const char* what) {
  if (!arr.is_array() || arr.empty()) throw InvalidInput(std::string(what) + " must be a nonempty array");
  Vector v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) throw InvalidInput(std::string(what) + " entries must be numbers");
    v(static_cast<Eigen::Index>(i)) = arr[i].get<double>();
  }
  requireFinite(v, what);
  return v;
}

std::vector<Vector> toVectors(const json& arr, const char* what) {
  if (!arr.is_array() || arr.empty()) throw InvalidInput(std::string(what) + " must be a nonempty array of arrays");
  std::vector<Vector> out;
  out.reserve(arr.size());
  for (const auto& row : arr) out.push_back(toVector(row, what));
  const auto n = out.front().size();
  for (const auto& v : out) {
    if (v.size() != n) throw InvalidInput(std::string(what) + " vectors differ in length");
  }
  return out;
}

json fromColumns(const Matrix& m) {
  json arr = json::array();
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    json col = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) col.push_back(m(i, j));
    arr.push_back(std::move(col));
  }
  return arr;
}

int readDim(const json& obj, bool required, int inferred) {
  if (!obj.contains("dim")) {
    if (required) throw InvalidInput("cone file: missing \"dim\"");
    return inferred;
  }
  const json& d = obj.at("dim");
  if (!d.is_number_integer() || d.get<long long>() < 1) {
    throw InvalidInput("cone file: \"dim\" must be a positive integer");
  }
  const int dim = d.get<int>();
  if (inferred > 0 && dim != inferred) {
    throw InvalidInput("cone file: \"dim\" is " + std::to_string(dim) + " but the vectors have length " +
                       std::to_string(inferred));
  }
  return dim;
}

void requireFields(const json& obj, const std::set<std::string>& allowed, const std::string& type) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.contains(it.key())) {
      throw InvalidInput("cone file: field \"" + it.key() + "\" is not allowed for type \"" + type + "\"");
    }
  }
}

}  // namespace

ConeSpec parseCone(std::string_view text) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("cone file: invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) throw InvalidInput("cone file: top level must be an object");
  if (!obj.contains("type") || !obj.at("type").is_string()) {
    throw InvalidInput("cone file: missing string field \"type\"");
  }
  const std::string type = obj.at("type").get<std::string>();

  try {
    if (type == "orthant" || type == "lorentz" || type == "monotone_nonneg") {
      requireFields(obj, {"type", "dim"}, type);
      const int dim = readDim(obj, true, 0);
      if (type == "orthant") return ConeSpec::orthant(dim);
      if (type == "lorentz") return ConeSpec::lorentz(dim);
      return ConeSpec::monotoneNonneg(dim);
    }
    if (type == "signed_orthant") {
      requireFields(obj, {"type", "dim", "epsilon"}, type);
      if (!obj.contains("epsilon") || !obj.at("epsilon").is_array()) {
        throw InvalidInput("cone file: signed_orthant needs an \"epsilon\" array");
      }
      std::vector<int> signs;
      for (const auto& e : obj.at("epsilon")) {
        if (!e.is_number_integer()) throw InvalidInput("cone file: epsilon entries must be +1 or -1");
        signs.push_back(e.get<int>());
      }
      readDim(obj, false, static_cast<int>(signs.size()));
      return ConeSpec::signedOrthant(SignVector(std::move(signs)));
    }
    if (type == "simplicial") {
      requireFields(obj, {"type", "dim", "columns"}, type);
      if (!obj.contains("columns")) throw InvalidInput("cone file: simplicial needs \"columns\"");
      const auto cols = toVectors(obj.at("columns"), "columns");
      const int dim = readDim(obj, false, static_cast<int>(cols.front().size()));
      Matrix e(dim, static_cast<Eigen::Index>(cols.size()));
      for (std::size_t j = 0; j < cols.size(); ++j) e.col(static_cast<Eigen::Index>(j)) = cols[j];
      return ConeSpec::simplicial(std::move(e));
    }
    if (type == "halfspaces" || type == "generators") {
      const char* field = type == "halfspaces" ? "normals" : "generators";
      requireFields(obj, {"type", "dim", field}, type);
      if (!obj.contains(field)) throw InvalidInput("cone file: " + type + " needs \"" + field + "\"");
      const auto vecs = toVectors(obj.at(field), field);
      const int dim = readDim(obj, false, static_cast<int>(vecs.front().size()));
      return type == "halfspaces" ? ConeSpec::halfspaces(dim, vecs) : ConeSpec::generators(dim, vecs);
    }
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("cone file: ") + e.what());
  }
  throw InvalidInput("cone file: unknown type \"" + type + "\"");
}

ConeSpec loadCone(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open cone file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parseCone(buf.str());
}

std::string serializeCone(const ConeSpec& cone) {
  json obj;
  obj["type"] = std::string(kindName(cone.kind()));
  obj["dim"] = cone.dim();
  if (const auto* s = cone.get<SignedOrthant>()) obj["epsilon"] = s->epsilon.signs();
  if (const auto* s = cone.get<Simplicial>()) obj["columns"] = fromColumns(s->generators.columns());
  if (const auto* h = cone.get<PolyhedralH>()) obj["normals"] = fromColumns(h->normals);
  if (const auto* v = cone.get<PolyhedralV>()) obj["generators"] = fromColumns(v->generators);
  return obj.dump(2);
}

void saveCone(const ConeSpec& cone, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write cone file " + path.string());
  out << serializeCone(cone) << '\n';
}

}  // namespace isocone
