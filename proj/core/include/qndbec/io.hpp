#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace qndbec {

/// Lowercase hex SHA-256 of a byte string / of a file's contents.
std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

/// Short stable hash of a JSON document (its compact dump), 16 hex chars.
std::string params_hash(const nlohmann::json& j);

/// Column-oriented CSV writer: '.' decimals, LF line endings, one header row.
/// All columns must have the same length. Values use 17 significant digits
/// so files round-trip exactly.
void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

/// UTC timestamp, ISO 8601.
std::string utc_timestamp();

}  // namespace qndbec
