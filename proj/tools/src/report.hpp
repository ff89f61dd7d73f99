#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "isocone/isotonicity.hpp"

namespace isocone::cli {

using nlohmann::ordered_json;

ordered_json toJson(const Vector& v);
ordered_json toJson(const Certificate& cert);

/// Lowercase hex SHA-256 of the file contents.
std::string sha256File(const std::filesystem::path& path);

/// "1,-2,3" or "[1, -2, 3]".
Vector parsePoint(const std::string& text);

}  // namespace isocone::cli
