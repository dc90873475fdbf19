#pragma once

#include <cstdint>
#include <cstdio>
#include <functional>
#include <initializer_list>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace cfkit {

// splitmix64 finalizer, used to derive independent stream seeds from a
// master seed plus a path of labels. Streams derived from distinct paths
// behave as independent generators, which keeps parallel runs reproducible.
inline uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t split_seed(uint64_t master, std::initializer_list<uint64_t> path) {
  uint64_t s = mix64(master ^ 0xcf1abd3ee1915ad3ULL);
  for (uint64_t p : path) s = mix64(s ^ mix64(p + 0x632be59bd9b4e019ULL));
  return s;
}

class RngStream {
 public:
  explicit RngStream(uint64_t seed) : eng_(seed) {}
  RngStream(uint64_t master, std::initializer_list<uint64_t> path)
      : eng_(split_seed(master, path)) {}

  uint64_t next_u64() { return eng_(); }
  // uniform integer in [0, n)
  uint64_t below(uint64_t n) {
    std::uniform_int_distribution<uint64_t> d(0, n - 1);
    return d(eng_);
  }
  double uniform01() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(eng_);
  }
  double gaussian() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

// Deterministic parallel map: out[i] = fn(i). Work is split into contiguous
// chunks; each slot is written exactly once, so parallel and serial runs
// produce identical results. Thread count honors CFKIT_THREADS.
int thread_budget();

template <typename Fn>
void parallel_for(size_t n, Fn&& fn) {
  int nt = thread_budget();
  if (nt <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  size_t chunk = (n + nt - 1) / nt;
  std::vector<std::thread> workers;
  for (int t = 0; t < nt; ++t) {
    size_t lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([lo, hi, &fn] {
      for (size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& w : workers) w.join();
}

inline int thread_budget() {
  static int budget = [] {
    if (const char* env = std::getenv("CFKIT_THREADS")) {
      int v = std::atoi(env);
      if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
  }();
  return budget;
}

// Fixed 12-significant-digit formatting used by every CSV and report writer.
inline std::string fmt_g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace cfkit
