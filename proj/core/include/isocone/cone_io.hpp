#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "isocone/cone_model.hpp"

namespace isocone {

// Cone description files are UTF-8 JSON objects:
//
//   {"type": "orthant" | "signed_orthant" | "simplicial" | "halfspaces" |
//            "generators" | "lorentz" | "monotone_nonneg",
//    "dim": int, "epsilon": [+-1, ...], "columns": [[...], ...],
//    "normals": [[...], ...], "generators": [[...], ...]}
//
// Only the fields relevant to the type may appear. "dim" is required for
// orthant, lorentz and monotone_nonneg and optional (but checked) elsewhere.
// Simplicial "columns" lists the generators e_1..e_m, one array each.

/// Throws InvalidInput on malformed text, unknown or extra fields.
ConeSpec parseCone(std::string_view json);

ConeSpec loadCone(const std::filesystem::path& path);

/// Canonical JSON (two-space indent), including "dim".
std::string serializeCone(const ConeSpec& cone);

void saveCone(const ConeSpec& cone, const std::filesystem::path& path);

}  // namespace isocone
