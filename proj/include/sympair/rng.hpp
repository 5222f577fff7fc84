#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace sympair {

// Counter-based splittable stream: output i of stream s is a pure function of
// (seed, s, i), so parallel jobs keyed by (seed, job index) reproduce exactly
// regardless of thread count.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(mix(seed + golden) ^ mix(stream + 0x94D049BB133111EBULL))), ctr_(0) {}

  CounterRng split(std::uint64_t substream) const { return CounterRng(key_, substream + 1); }

  std::uint64_t next_u64() {
    ctr_ += golden;
    return mix(ctr_ ^ key_);
  }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * M_PI * u2);
  }

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

 private:
  static constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;
  CounterRng(std::uint64_t key, std::uint64_t stream, int)
      : key_(mix(key ^ mix(stream))), ctr_(0) {}
  std::uint64_t key_;
  std::uint64_t ctr_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline int default_thread_count() {
  if (const char* env = std::getenv("SYMPAIR_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(job) for job in [0, n_jobs). Job decomposition is fixed, so results
// merged in job order are identical for any thread count.
inline void parallel_jobs(int n_jobs, const std::function<void(int)>& fn) {
  int n_threads = std::min(default_thread_count(), n_jobs);
  if (n_threads <= 1) {
    for (int j = 0; j < n_jobs; ++j) fn(j);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  std::atomic<int> next{0};
  for (int t = 0; t < n_threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        int j = next.fetch_add(1);
        if (j >= n_jobs) return;
        fn(j);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace sympair
