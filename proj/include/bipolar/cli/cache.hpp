#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bipolar::cli {

std::uint64_t fnv1a64(const std::string& bytes);

// Content-addressed store of serialized results. Entries carry the tool
// version, so a version change turns every old entry into a miss. Writes go
// through a temporary file and rename. An unusable directory disables caching
// with one warning instead of failing the computation.
class ResultCache {
 public:
  // Empty dir disables the cache.
  ResultCache(std::string dir, std::string version);

  bool enabled() const { return enabled_; }
  std::uint64_t key(const std::vector<std::string>& parts) const;

  std::optional<std::string> load(std::uint64_t key);
  void store(std::uint64_t key, const std::string& payload);
  // load, or compute and store.
  std::string get(const std::vector<std::string>& parts, const std::function<std::string()>& compute);

  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::string path_for(std::uint64_t key) const;
  void warn(const std::string& w);

  std::string dir_, version_;
  bool enabled_ = false;
  std::size_t hits_ = 0, misses_ = 0;
  std::vector<std::string> warnings_;
};

}  // namespace bipolar::cli
