#pragma once

#include <hilbert/bodies.hpp>

#include <random>

namespace hilbert {

inline ConvexBody<2> unit_disk() { return make_ball<2>(Vec<2>::Zero(), 1.0); }
inline ConvexBody<3> unit_ball3() { return make_ball<3>(Vec<3>::Zero(), 1.0); }

inline ConvexBody<2> square_body(double half_side = 1.0) {
  std::vector<Vec<2>> normals{{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  std::vector<double> offsets(4, half_side);
  return make_hpolytope<2>(std::move(normals), std::move(offsets), Vec<2>::Zero());
}

inline ConvexBody<3> cube_body(double half_side = 1.0) {
  std::vector<Vec<3>> normals{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  std::vector<double> offsets(6, half_side);
  return make_hpolytope<3>(std::move(normals), std::move(offsets), Vec<3>::Zero());
}

inline ConvexBody<2> regular_polygon(int sides, double circumradius = 1.0, double phase = 0.0) {
  std::vector<Vec<2>> verts;
  for (int k = 0; k < sides; ++k) {
    const double a = 2.0 * kPi * k / sides + phase;
    verts.push_back(circumradius * Vec<2>(std::cos(a), std::sin(a)));
  }
  return make_vpolytope<2>(std::move(verts), Vec<2>::Zero());
}

inline ConvexBody<2> ellipse_body(double semi_a, double semi_b, Vec<2> center = Vec<2>::Zero()) {
  Mat<2> shape = Mat<2>::Zero();
  shape(0, 0) = 1.0 / (semi_a * semi_a);
  shape(1, 1) = 1.0 / (semi_b * semi_b);
  return make_ellipsoid<2>(center, shape);
}

inline ConvexBody<3> ellipsoid_body(double a, double b, double c, Vec<3> center = Vec<3>::Zero()) {
  Mat<3> shape = Mat<3>::Zero();
  shape(0, 0) = 1.0 / (a * a);
  shape(1, 1) = 1.0 / (b * b);
  shape(2, 2) = 1.0 / (c * c);
  return make_ellipsoid<3>(center, shape);
}

// Smooth strictly convex 2D body with mild harmonic boundary ripple.
inline ConvexBody<2> fourier_body(double ripple = 0.12, std::uint64_t seed = 3) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp(-ripple, ripple);
  RadialCoeffs<2> rc;
  rc.constant = 1.0;
  for (int k = 2; k <= 4; ++k) {
    rc.set_cos(k, amp(rng) / (k * k));
    rc.set_sin(k, amp(rng) / (k * k));
  }
  return make_radial_body<2>(Vec<2>::Zero(), std::move(rc), true);
}

inline ConvexBody<3> harmonic_body3(double ripple = 0.08, std::uint64_t seed = 5) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp(-ripple, ripple);
  RadialCoeffs<3> rc;
  rc.constant = 1.0;
  for (int l = 2; l <= 3; ++l)
    for (int m = -l; m <= l; ++m) rc.terms.emplace_back(real_spherical_harmonic(l, m), amp(rng) / (l * l));
  return make_radial_body<3>(Vec<3>::Zero(), std::move(rc), true);
}

template <int N>
ConvexBody<N> random_polytope(std::mt19937_64& rng, int points) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> radius(0.6, 1.4);
  std::vector<Vec<N>> verts;
  for (int i = 0; i < points; ++i) {
    Vec<N> u;
    for (int d = 0; d < N; ++d) u[d] = gauss(rng);
    u.normalize();
    verts.push_back(radius(rng) * u);
  }
  return make_vpolytope<N>(std::move(verts));
}

template <int N>
ConvexBody<N> random_ellipsoid(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Mat<N> a;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) a(i, j) = gauss(rng);
  const Mat<N> shape = a.transpose() * a + 0.4 * Mat<N>::Identity();
  return make_ellipsoid<N>(Vec<N>::Zero(), shape);
}

// A random body of mixed kind, normalized scale ~1, origin interior.
template <int N>
ConvexBody<N> random_body(std::mt19937_64& rng) {
  switch (rng() % 3) {
    case 0: return random_polytope<N>(rng, 4 + static_cast<int>(rng() % 9));
    case 1: return random_ellipsoid<N>(rng);
    default:
      if constexpr (N == 2) return fourier_body(0.10, rng());
      else return harmonic_body3(0.06, rng());
  }
}

}  // namespace hilbert
