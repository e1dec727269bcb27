#pragma once

#include <cstddef>
#include <filesystem>
#include <list>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cpgscan/statement.hpp"

namespace cpgscan {

struct CacheCounters {
  std::size_t hits = 0;
  std::size_t misses = 0;
  std::size_t inserts = 0;
  std::size_t evictions = 0;
};

// LRU map from "<canonical predicate>@<graph version>" to a sorted uid list.
// Keys embed the version, so entries computed for an older graph can never be
// served for a newer one. Optionally mirrors every insert to a sidecar file
// (one JSON object per line) which is replayed on construction.
class QueryCache {
 public:
  explicit QueryCache(std::size_t capacity = 4096, std::optional<std::filesystem::path> sidecar = std::nullopt);

  std::optional<std::vector<Uid>> lookup(const std::string& key);
  void insert(const std::string& key, std::vector<Uid> value);
  void clear();

  std::size_t size() const;
  std::size_t capacity() const { return capacity_; }
  std::size_t hit_count(const std::string& key) const;
  CacheCounters counters() const;

  static std::string make_key(const std::string& predicate, const std::string& version) {
    return predicate + "@" + version;
  }

 private:
  struct Entry {
    std::string key;
    std::vector<Uid> value;
    std::size_t hits = 0;
  };
  void insert_locked(const std::string& key, std::vector<Uid> value);

  std::size_t capacity_;
  std::optional<std::filesystem::path> sidecar_;
  mutable std::mutex mu_;
  std::list<Entry> lru_;  // front = most recent
  std::unordered_map<std::string, std::list<Entry>::iterator> map_;
  CacheCounters counters_;
};

}  // namespace cpgscan
