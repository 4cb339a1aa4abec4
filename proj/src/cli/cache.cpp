#include <bipolar/cli/cache.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unistd.h>

namespace bipolar::cli {

namespace fs = std::filesystem;

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::string hex(std::uint64_t k) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << k;
  return os.str();
}

// Entry layout: header line, payload length line, payload, checksum line.
std::string header(const std::string& version, std::uint64_t key) { return "bipolar-cache " + version + " " + hex(key); }

}  // namespace

ResultCache::ResultCache(std::string dir, std::string version) : dir_(std::move(dir)), version_(std::move(version)) {
  if (dir_.empty()) return;
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec || !fs::is_directory(dir_)) {
    warn("cache directory '" + dir_ + "' is unusable, caching disabled");
    return;
  }
  if (::access(dir_.c_str(), W_OK) != 0) {
    warn("cache directory '" + dir_ + "' is not writable, caching disabled");
    return;
  }
  enabled_ = true;
}

void ResultCache::warn(const std::string& w) { warnings_.push_back(w); }

std::uint64_t ResultCache::key(const std::vector<std::string>& parts) const {
  std::string flat = version_;
  for (auto& p : parts) {
    flat += '\0';
    flat += std::to_string(p.size());
    flat += ':';
    flat += p;
  }
  return fnv1a64(flat);
}

std::string ResultCache::path_for(std::uint64_t key) const { return (fs::path(dir_) / (hex(key) + ".entry")).string(); }

std::optional<std::string> ResultCache::load(std::uint64_t key) {
  if (!enabled_) return std::nullopt;
  std::ifstream in(path_for(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::string head, len_line;
  if (!std::getline(in, head)) return std::nullopt;
  {
    std::istringstream hs(head);
    std::string magic, version, stored_key, extra;
    hs >> magic >> version >> stored_key;
    if (magic == "bipolar-cache" && stored_key == hex(key) && version != version_ && !(hs >> extra)) return std::nullopt;
  }
  bool ok = head == header(version_, key) && std::getline(in, len_line);
  std::string payload, sum;
  if (ok) {
    try {
      std::size_t n = std::stoull(len_line);
      payload.resize(n);
      in.read(payload.data(), static_cast<std::streamsize>(n));
      ok = static_cast<std::size_t>(in.gcount()) == n && std::getline(in, sum) && std::getline(in, sum) &&
           sum == hex(fnv1a64(payload));
    } catch (const std::exception&) {
      ok = false;
    }
  }
  if (!ok) {
    warn("corrupt cache entry " + path_for(key) + ", recomputing");
    return std::nullopt;
  }
  return payload;
}

void ResultCache::store(std::uint64_t key, const std::string& payload) {
  if (!enabled_) return;
  const std::string final_path = path_for(key);
  const std::string tmp = final_path + ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      warn("cannot write cache entry in '" + dir_ + "', caching disabled");
      enabled_ = false;
      return;
    }
    out << header(version_, key) << '\n' << payload.size() << '\n' << payload << '\n' << hex(fnv1a64(payload)) << '\n';
    if (!out) {
      warn("cache write failed, caching disabled");
      enabled_ = false;
      std::remove(tmp.c_str());
      return;
    }
  }
  std::error_code ec;
  fs::rename(tmp, final_path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    warn("cache rename failed: " + ec.message());
  }
}

std::string ResultCache::get(const std::vector<std::string>& parts, const std::function<std::string()>& compute) {
  std::uint64_t k = key(parts);
  if (auto hit = load(k)) {
    ++hits_;
    return *hit;
  }
  ++misses_;
  std::string out = compute();
  store(k, out);
  return out;
}

}  // namespace bipolar::cli
