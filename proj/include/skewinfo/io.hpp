#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "skewinfo/quantum_objects.hpp"

namespace skewinfo::io {

/// Decimal with 12 significant digits ("%.12g"); −0 prints as 0, NaN as "nan".
std::string format_number(double x);

/// Nested array of rows, each entry an [re, im] pair.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j, Eigen::Index dim);

/// {"dim": d, "matrix": [...]}
nlohmann::json state_to_json(const ComplexMatrix& rho);
/// {"dim": d, "kraus": [[...], ...], "convention": "row_sum" | "column_sum"}
nlohmann::json channel_to_json(const KrausChannel& channel);

/// Parse and validate. Structural problems raise ParseError; validation
/// failures propagate the quantum-objects errors.
DensityMatrix state_from_json(const nlohmann::json& j, double tol = kDefaultTol);
KrausChannel channel_from_json(const nlohmann::json& j, double tol = kDefaultTol);

DensityMatrix read_state(const std::filesystem::path& path, double tol = kDefaultTol);
KrausChannel read_channel(const std::filesystem::path& path, double tol = kDefaultTol);

std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file then renames over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace skewinfo::io
