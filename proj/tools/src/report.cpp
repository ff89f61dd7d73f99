#include "report.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <iterator>
#include <memory>

#include <openssl/evp.h>

#include "isocone/errors.hpp"

namespace isocone::cli {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

ordered_json toJson(const Vector& v) {
  ordered_json arr = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

ordered_json toJson(const Certificate& cert) {
  return std::visit(
      Overloaded{
          [](const SubdualWitness& w) {
            return ordered_json{{"kind", "subdual_witness"}, {"epsilon", w.epsilon.signs()}, {"index_set", w.indexSet}};
          },
          [](const Obstruction& o) { return ordered_json{{"kind", "obstruction"}, {"cycle", o.cycle}}; },
          [](const ContainmentReport& r) {
            return ordered_json{{"kind", "containment_report"},
                                {"k_in_l", r.kInL},
                                {"l_in_kstar", r.lInKstar},
                                {"k_subdual_ok", r.kSubdualOk},
                                {"interior_kstar_l", r.interiorKstarL},
                                {"interior_kstar_lstar", r.interiorKstarLstar}};
          },
          [](const Counterexample& c) {
            return ordered_json{{"kind", "counterexample"}, {"x", toJson(c.x)},   {"y", toJson(c.y)},
                                {"px", toJson(c.px)},      {"py", toJson(c.py)}, {"violation", toJson(c.violation)},
                                {"margin", c.margin},      {"trial", c.trial}};
          },
          [](const OrthantIsotoneReport& r) {
            ordered_json j{{"kind", "orthant_isotone_report"}, {"isotone", r.isotone}, {"facet_count", r.facetCount}};
            j["offending_normal"] = r.offendingNormal ? toJson(*r.offendingNormal) : ordered_json(nullptr);
            return j;
          },
      },
      cert);
}

std::string sha256File(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[md[i] >> 4]);
    hex.push_back(kHex[md[i] & 0xf]);
  }
  return hex;
}

Vector parsePoint(const std::string& text) {
  const auto first = text.find_first_not_of(" \t");
  if (first == std::string::npos) throw InvalidInput("point is empty");
  std::vector<double> values;
  if (text[first] == '[') {
    ordered_json arr;
    try {
      arr = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
      throw InvalidInput(std::string("point: invalid JSON array: ") + e.what());
    }
    if (!arr.is_array()) throw InvalidInput("point must be a JSON array");
    for (const auto& v : arr) {
      if (!v.is_number()) throw InvalidInput("point entries must be numbers");
      values.push_back(v.get<double>());
    }
  } else {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto comma = std::min(text.find(',', pos), text.size());
      auto b = text.find_first_not_of(" \t", pos);
      auto e = text.find_last_not_of(" \t", comma == 0 ? 0 : comma - 1);
      if (b == std::string::npos || b >= comma || e == std::string::npos || e < b) {
        throw InvalidInput("point: empty entry in \"" + text + "\"");
      }
      double d = 0.0;
      const char* begin = text.data() + b;
      const char* end = text.data() + e + 1;
      if (*begin == '+') ++begin;
      const auto [ptr, ec] = std::from_chars(begin, end, d);
      if (ec != std::errc() || ptr != end) {
        throw InvalidInput("point: cannot parse \"" + text.substr(b, e + 1 - b) + "\" as a number");
      }
      values.push_back(d);
      pos = comma + 1;
    }
  }
  if (values.empty()) throw InvalidInput("point is empty");
  Vector v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<Eigen::Index>(i)) = values[i];
  requireFinite(v, "point");
  return v;
}

}  // namespace isocone::cli
