#include "hopfbound/app/cache.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace hopfbound::app {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i)
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

std::string input_digest(const std::string& command, const nlohmann::json& parameters,
                         const std::string& input, const std::string& version) {
  const nlohmann::json key = {
      {"command", command}, {"parameters", parameters}, {"input", input}, {"version", version}};
  return sha256_hex(key.dump());
}

nlohmann::json record_to_json(const RunRecord& r) {
  return {{"digest", r.digest},       {"command", r.command},     {"parameters", r.parameters},
          {"payload", r.payload},     {"version", r.version},     {"timestamp", r.timestamp},
          {"wall_time_ms", r.wall_time_ms}};
}

RunRecord record_from_json(const nlohmann::json& j) {
  RunRecord r;
  r.digest = j.at("digest").get<std::string>();
  r.command = j.at("command").get<std::string>();
  r.parameters = j.at("parameters");
  r.payload = j.at("payload");
  r.version = j.at("version").get<std::string>();
  r.timestamp = j.at("timestamp").get<std::string>();
  r.wall_time_ms = j.at("wall_time_ms").get<double>();
  return r;
}

ResultCache::ResultCache(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec || !fs::is_directory(dir_))
    throw std::runtime_error("cannot create cache directory " + dir_.string() +
                             (ec ? ": " + ec.message() : ""));
}

fs::path ResultCache::entry_path(const std::string& digest) const {
  return dir_ / (digest + ".json");
}

std::optional<RunRecord> ResultCache::lookup(const std::string& digest, const std::string& command,
                                             const nlohmann::json& parameters,
                                             const std::string& version, std::ostream& warn) const {
  const fs::path path = entry_path(digest);
  std::error_code ec;
  if (!fs::exists(path, ec)) return std::nullopt;
  std::ifstream in(path);
  if (!in) {
    warn << "warning: cannot read cache entry " << path.string() << "; ignoring it\n";
    return std::nullopt;
  }
  try {
    RunRecord r = record_from_json(nlohmann::json::parse(in));
    if (r.digest != digest || r.command != command || r.parameters != parameters ||
        r.version != version)
      return std::nullopt;
    return r;
  } catch (const std::exception& e) {
    warn << "warning: corrupt cache entry " << path.string() << " (" << e.what()
         << "); ignoring it\n";
    return std::nullopt;
  }
}

void ResultCache::store(const RunRecord& record) const {
  static std::atomic<unsigned long> counter{0};
  const fs::path target = entry_path(record.digest);
  std::ostringstream tmp_name;
  tmp_name << ".tmp-" << record.digest << '-' << std::hash<std::thread::id>{}(std::this_thread::get_id())
           << '-' << counter++;
  const fs::path tmp = dir_ / tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    out << record_to_json(record).dump(2) << '\n';
    if (!out.flush()) throw std::runtime_error("cannot write cache file " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot move cache entry into place at " + target.string());
  }
}

}  // namespace hopfbound::app
