#pragma once

#include <complex>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace osk {

using complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double two_pi = 2.0 * pi;
inline constexpr double sqrt2 = 1.41421356237309504880168872420969808;

/// Thread cap for sweep fan-out. Controlled by OSCIKERNEL_THREADS; defaults to
/// the hardware count. Aggregation is always by index, so results do not
/// depend on the thread count.
inline int max_threads() {
  static const int cached = [] {
    if (const char* env = std::getenv("OSCIKERNEL_THREADS")) {
      const int v = std::atoi(env);
      if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }();
  return cached;
}

/// Runs f(i) for i in [0, n) across worker threads. f(i) must only write to
/// slot i of any shared output.
template <class F>
void parallel_for(int n, F&& f) {
  const int nt = std::min(max_threads(), n);
  if (nt <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(nt);
  for (int t = 0; t < nt; ++t) {
    workers.emplace_back([&f, t, n, nt] {
      for (int i = t; i < n; i += nt) f(i);
    });
  }
  for (auto& w : workers) w.join();
}

/// Compensated (Kahan) accumulator; used wherever a deterministic reduction
/// order is part of the contract.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace osk
