#include "fracheat/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace fracheat {

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("file_digest: cannot open " + path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  char out[32];
  std::snprintf(out, sizeof(out), "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return out;
}

RunManifest::RunManifest(std::string command, nlohmann::json resolved_config,
                         std::uint64_t master_seed)
    : command_(std::move(command)), config_(std::move(resolved_config)), seed_(master_seed) {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
  started_ = buf;
}

void RunManifest::add_output(const std::string& path) {
  outputs_.emplace_back(path, file_digest(path));
}

void RunManifest::set_elapsed(double seconds) { elapsed_ = seconds; }

void RunManifest::set_extra(const std::string& key, nlohmann::json value) {
  extra_[key] = std::move(value);
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["version"] = kVersion;
  j["command"] = command_;
  j["config"] = config_;
  j["master_seed"] = seed_;
  j["started_utc"] = started_;
  j["elapsed_seconds"] = elapsed_;
  nlohmann::json outs = nlohmann::json::object();
  for (const auto& [path, digest] : outputs_)
    outs[std::filesystem::path(path).filename().string()] = digest;
  j["outputs"] = outs;
  if (!extra_.empty()) j["extra"] = extra_;
  return j;
}

std::string RunManifest::write(const std::string& directory) const {
  namespace fs = std::filesystem;
  fs::create_directories(directory);
  const std::string path = (fs::path(directory) / "manifest.json").string();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("RunManifest: cannot write " + path);
  out << to_json().dump(2) << '\n';
  return path;
}

}  // namespace fracheat
