#pragma once

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include "banach/io.hpp"

namespace banach::cache {

using nlohmann::json;

/// Append-only result store: one JSON record per line in
/// <dir>/runs.jsonl, keyed by (space, op, params, config digest). Appends
/// take an exclusive advisory lock so concurrent CLI runs interleave whole
/// lines; the newest matching record wins on lookup.
class RunCache {
 public:
  explicit RunCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
  }

  std::filesystem::path file() const { return dir_ / "runs.jsonl"; }

  static bool param_match(const json& rec, const char* key, std::optional<double> want) {
    auto it = rec.find(key);
    bool have = it != rec.end() && !it->is_null();
    if (!want) return !have;
    return have && it->get<double>() == *want;
  }

  std::optional<json> lookup(const std::string& space_id, const std::string& op,
                             std::optional<double> kappa, std::optional<double> tau,
                             std::optional<double> eps, const std::string& digest) const {
    std::ifstream in(file());
    if (!in) return std::nullopt;
    std::optional<json> hit;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json rec = json::parse(line, nullptr, false);
      if (rec.is_discarded()) continue;  // torn line; skip
      if (rec.value("space", "") != space_id || rec.value("op", "") != op ||
          rec.value("digest", "") != digest)
        continue;
      if (!param_match(rec, "kappa", kappa) || !param_match(rec, "tau", tau) ||
          !param_match(rec, "eps", eps))
        continue;
      hit = rec;
    }
    return hit;
  }

  void append(const json& record) const {
    std::string line = record.dump();
    line.push_back('\n');
    int fd = ::open(file().c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
    if (fd < 0) throw Error("cannot open cache file " + file().string());
    ::flock(fd, LOCK_EX);
    ssize_t off = 0;
    while (off < static_cast<ssize_t>(line.size())) {
      ssize_t n = ::write(fd, line.data() + off, line.size() - static_cast<std::size_t>(off));
      if (n < 0) {
        ::flock(fd, LOCK_UN);
        ::close(fd);
        throw Error("cache write failed");
      }
      off += n;
    }
    ::flock(fd, LOCK_UN);
    ::close(fd);
  }

  static std::filesystem::path default_dir() {
    if (const char* env = std::getenv("BANACH_DATA_DIR")) return env;
    return ".banach-cache";
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace banach::cache
