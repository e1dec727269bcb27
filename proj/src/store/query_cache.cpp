#include "cpgscan/store/query_cache.hpp"

#include <fstream>

#include "cpgscan/error.hpp"

namespace cpgscan {

QueryCache::QueryCache(std::size_t capacity, std::optional<std::filesystem::path> sidecar)
    : capacity_(capacity == 0 ? 1 : capacity), sidecar_(std::move(sidecar)) {
  if (!sidecar_) return;
  std::ifstream in(*sidecar_);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    // A torn last line from an interrupted run is ignored.
    Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("key") || !j.contains("value")) continue;
    insert_locked(j["key"].get<std::string>(), j["value"].get<std::vector<Uid>>());
  }
  counters_ = {};
}

std::optional<std::vector<Uid>> QueryCache::lookup(const std::string& key) {
  std::lock_guard lock(mu_);
  auto it = map_.find(key);
  if (it == map_.end()) {
    ++counters_.misses;
    return std::nullopt;
  }
  lru_.splice(lru_.begin(), lru_, it->second);
  ++it->second->hits;
  ++counters_.hits;
  return it->second->value;
}

void QueryCache::insert(const std::string& key, std::vector<Uid> value) {
  std::lock_guard lock(mu_);
  // Values are deterministic for their key, so a racing duplicate insert is harmless.
  if (sidecar_) {
    std::ofstream out(*sidecar_, std::ios::app);
    if (!out) throw Error(ErrorCode::Io, "cannot write cache sidecar " + sidecar_->string());
    Json j;
    j["key"] = key;
    j["value"] = value;
    out << j.dump() << '\n';
  }
  insert_locked(key, std::move(value));
}

void QueryCache::insert_locked(const std::string& key, std::vector<Uid> value) {
  if (auto it = map_.find(key); it != map_.end()) {
    it->second->value = std::move(value);
    lru_.splice(lru_.begin(), lru_, it->second);
    return;
  }
  lru_.push_front(Entry{key, std::move(value), 0});
  map_[key] = lru_.begin();
  ++counters_.inserts;
  while (lru_.size() > capacity_) {
    map_.erase(lru_.back().key);
    lru_.pop_back();
    ++counters_.evictions;
  }
}

void QueryCache::clear() {
  std::lock_guard lock(mu_);
  lru_.clear();
  map_.clear();
}

std::size_t QueryCache::size() const {
  std::lock_guard lock(mu_);
  return lru_.size();
}

std::size_t QueryCache::hit_count(const std::string& key) const {
  std::lock_guard lock(mu_);
  auto it = map_.find(key);
  return it == map_.end() ? 0 : it->second->hits;
}

CacheCounters QueryCache::counters() const {
  std::lock_guard lock(mu_);
  return counters_;
}

}  // namespace cpgscan
