#pragma once

#include <hilbert/base.hpp>

#include <map>
#include <mutex>

namespace hilbert {

// Quadrature budgets for density and volume integrals. Node counts are
// doubled by the callers until the result stabilizes, so these are floors.
struct QuadratureConfig {
  int angular_nodes_2d = 2048;
  int angular_nodes_3d = 4096;
  int radial_nodes = 64;
  int density_nodes_2d = 512;   // inner sphere quadrature for densities
  int density_nodes_3d = 1024;
  long mc_samples = 2'000'000;  // Monte-Carlo cross-check budget
  std::uint64_t seed = 0x5eed;
  double target_rel_error = 1e-4;
  int max_doublings = 3;
  bool force_quadrature = false;  // bypass closed-form density fast paths

  int angular_nodes(int dim) const { return dim == 2 ? angular_nodes_2d : angular_nodes_3d; }
  int density_nodes(int dim) const { return dim == 2 ? density_nodes_2d : density_nodes_3d; }
};

// Midpoint-offset angles: never hits a lattice-aligned corner direction even
// for axis-aligned bodies, and M a power of two keeps refinements nested-free.
inline std::vector<Vec<2>> circle_directions(int m) {
  std::vector<Vec<2>> dirs(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    const double a = 2.0 * kPi * (k + 0.5) / m;
    dirs[static_cast<std::size_t>(k)] = Vec<2>(std::cos(a), std::sin(a));
  }
  return dirs;
}

inline std::vector<Vec<3>> fibonacci_sphere(int m) {
  std::vector<Vec<3>> dirs(static_cast<std::size_t>(m));
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  for (int k = 0; k < m; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / m;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = 2.0 * kPi * (k / golden - std::floor(k / golden));
    dirs[static_cast<std::size_t>(k)] = Vec<3>(r * std::cos(phi), r * std::sin(phi), z);
  }
  return dirs;
}

template <int N>
std::vector<Vec<N>> sphere_directions(int m) {
  if constexpr (N == 2) {
    return circle_directions(m);
  } else {
    return fibonacci_sphere(m);
  }
}

// Total solid angle carried by one node of an m-point direction set.
template <int N>
double direction_weight(int m) {
  return (N == 2 ? 2.0 * kPi : 4.0 * kPi) / m;
}

struct GaussLegendre {
  std::vector<double> nodes;    // on (0,1)
  std::vector<double> weights;  // summing to 1
};

// Golub-Welsch via Newton iteration on Legendre polynomials, mapped to (0,1).
inline const GaussLegendre& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussLegendre> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  GaussLegendre gl;
  gl.nodes.resize(static_cast<std::size_t>(n));
  gl.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    gl.nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);  // descending x -> ascending node
    gl.weights[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return cache.emplace(n, std::move(gl)).first->second;
}

}  // namespace hilbert
