#pragma once

// Content-addressed store of command results.

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

namespace hopfbound::app {

struct RunRecord {
  /// SHA-256 of the input text, command, parameters and tool version.
  std::string digest;
  std::string command;
  nlohmann::json parameters;
  nlohmann::json payload;
  std::string version;
  std::string timestamp;
  double wall_time_ms = 0.0;
};

std::string sha256_hex(const std::string& data);

/// Digest over the canonical serialization of (command, parameters, input, version).
std::string input_digest(const std::string& command, const nlohmann::json& parameters,
                         const std::string& input, const std::string& version);

class ResultCache {
 public:
  /// Creates the directory if needed; throws std::runtime_error with the path
  /// when that fails.
  explicit ResultCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path entry_path(const std::string& digest) const;

  /// Hit only when the stored digest, command, parameters and version all
  /// match. Unreadable or malformed entries are reported to `warn` and
  /// treated as a miss.
  std::optional<RunRecord> lookup(const std::string& digest, const std::string& command,
                                  const nlohmann::json& parameters, const std::string& version,
                                  std::ostream& warn) const;

  /// Writes a temporary file in the cache directory and renames it into place.
  void store(const RunRecord& record) const;

 private:
  std::filesystem::path dir_;
};

nlohmann::json record_to_json(const RunRecord& r);
RunRecord record_from_json(const nlohmann::json& j);

}  // namespace hopfbound::app
