#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <future>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace scholarmap::detail {

struct CacheCounters {
  std::size_t hits = 0;
  std::size_t misses = 0;
  std::size_t size = 0;
};

/// Bounded LRU of immutable values. Concurrent requests for a key that is
/// still being built wait on the same build instead of starting another.
/// A failed build is not cached; every waiter sees its exception.
template <class Key, class Value>
class LruCache {
 public:
  using Handle = std::shared_ptr<const Value>;

  explicit LruCache(std::size_t capacity) : capacity_(capacity == 0 ? 1 : capacity) {}

  template <class Build>
  Handle get_or_build(const Key& key, Build&& build) {
    std::promise<Handle> promise;
    std::shared_future<Handle> future;
    bool owner = false;
    std::uint64_t ticket = 0;
    {
      std::lock_guard lock(mutex_);
      if (auto it = index_.find(key); it != index_.end()) {
        order_.splice(order_.begin(), order_, it->second);
        future = it->second->future;
        ++counters_.hits;
      } else {
        ++counters_.misses;
        future = promise.get_future().share();
        ticket = ++next_ticket_;
        order_.push_front(Entry{key, future, ticket});
        index_.emplace(key, order_.begin());
        while (order_.size() > capacity_) {
          index_.erase(order_.back().key);
          order_.pop_back();
        }
        owner = true;
      }
    }
    if (owner) {
      try {
        promise.set_value(std::forward<Build>(build)());
      } catch (...) {
        promise.set_exception(std::current_exception());
        std::lock_guard lock(mutex_);
        if (auto it = index_.find(key); it != index_.end() && it->second->ticket == ticket) {
          order_.erase(it->second);
          index_.erase(it);
        }
      }
    }
    return future.get();
  }

  CacheCounters counters() const {
    std::lock_guard lock(mutex_);
    CacheCounters c = counters_;
    c.size = order_.size();
    return c;
  }

 private:
  struct Entry {
    Key key;
    std::shared_future<Handle> future;
    std::uint64_t ticket;
  };

  std::size_t capacity_;
  mutable std::mutex mutex_;
  std::list<Entry> order_;
  std::map<Key, typename std::list<Entry>::iterator> index_;
  CacheCounters counters_;
  std::uint64_t next_ticket_ = 0;
};

}  // namespace scholarmap::detail
