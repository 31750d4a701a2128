#pragma once

#include <Eigen/Dense>

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace hilbert {

template <int N>
using Vec = Eigen::Matrix<double, N, 1>;
template <int N>
using Mat = Eigen::Matrix<double, N, N>;

// Non-deduced parameter slot: lets callers pass Eigen expressions (Zero(),
// sums) to Vec<N> parameters once N is pinned by the leading argument.
template <typename T>
using Arg = std::type_identity_t<T>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Boundary-root tolerance. Bodies are normalized to diameter ~2, and the
// cross-ratio amplifies boundary error by e^{2r}, so roots must be tight.
inline constexpr double kBoundaryTol = 1e-10;

// Euclidean volume of the unit ball in dimension n.
inline double unit_ball_volume(int n) {
  switch (n) {
    case 1: return 2.0;
    case 2: return kPi;
    case 3: return 4.0 * kPi / 3.0;
    default: return std::pow(kPi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
  }
}

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PointNotInterior : Error { using Error::Error; };
struct DegenerateDirection : Error { using Error::Error; };
struct DegenerateBody : Error { using Error::Error; };
struct OriginNotInterior : Error { using Error::Error; };
struct ImageUnbounded : Error { using Error::Error; };
struct HyperplaneMissesBody : Error { using Error::Error; };
struct ParameterOutOfRange : Error { using Error::Error; };
struct NegativeRadius : Error { using Error::Error; };
struct DimensionUnsupported : Error { using Error::Error; };
struct BodyNotSmooth : Error { using Error::Error; };
struct WindowTooSmall : Error { using Error::Error; };
struct NonpositiveVolume : Error { using Error::Error; };
struct ScheduleTooShort : Error { using Error::Error; };
struct ResolutionInsufficient : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct RadiusTooSmall : Error { using Error::Error; };
struct InvalidBodyFile : Error { using Error::Error; };

namespace detail {
inline std::atomic<int>& thread_count_slot() {
  static std::atomic<int> count{0};  // 0 = not yet resolved
  return count;
}
}  // namespace detail

inline void set_thread_count(int n) {
  detail::thread_count_slot().store(n > 0 ? n : 1);
}

inline int thread_count() {
  int n = detail::thread_count_slot().load();
  if (n > 0) return n;
  if (const char* env = std::getenv("HILBERT_LAB_THREADS")) {
    n = std::atoi(env);
  }
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  detail::thread_count_slot().store(n);
  return n;
}

// Chunked parallel loop. The callable sees every index exactly once; callers
// write per-index results into preallocated storage so the final reduction
// order stays deterministic.
template <typename F>
void parallel_for(std::size_t n, F&& body) {
  const int workers = thread_count();
  if (workers <= 1 || n < 64) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(workers));
  std::atomic<std::size_t> next{0};
  const std::size_t chunk = std::max<std::size_t>(1, n / (8 * static_cast<std::size_t>(workers)));
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (;;) {
        const std::size_t begin = next.fetch_add(chunk);
        if (begin >= n) return;
        const std::size_t end = std::min(n, begin + chunk);
        for (std::size_t i = begin; i < end; ++i) body(i);
      }
    });
  }
  for (auto& t : threads) t.join();
}

// Pairwise summation; fixed association tree keeps results reproducible
// bit-for-bit independent of how the values were produced.
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

inline double sq(double x) { return x * x; }

}  // namespace hilbert
