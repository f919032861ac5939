#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace fracheat {

inline constexpr const char* kVersion = "0.1.0";

/// FNV-1a 64-bit content digest, "fnv1a64:<hex>"; integrity marker for the
/// emitted files, not a cryptographic hash.
std::string file_digest(const std::string& path);

/// Run record: resolved config, version, wall clock, seeds, and one digest per
/// emitted file. The timing fields are the only non-deterministic outputs of a
/// run; everything the digests cover is byte-stable under replay.
class RunManifest {
 public:
  RunManifest(std::string command, nlohmann::json resolved_config,
              std::uint64_t master_seed);

  void add_output(const std::string& path);
  void set_elapsed(double seconds);
  void set_extra(const std::string& key, nlohmann::json value);

  nlohmann::json to_json() const;
  std::string write(const std::string& directory) const;  // returns the path

 private:
  std::string command_;
  nlohmann::json config_;
  std::uint64_t seed_;
  double elapsed_ = 0.0;
  std::string started_;
  std::vector<std::pair<std::string, std::string>> outputs_;  // (path, digest)
  nlohmann::json extra_ = nlohmann::json::object();
};

}  // namespace fracheat
