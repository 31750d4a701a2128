#include <hilbert/harmonics.hpp>
#include <hilbert/hull.hpp>
#include <hilbert/quadrature.hpp>
#include <hilbert/regression.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace hilbert;
using Catch::Approx;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  const auto& gl = gauss_legendre(8);
  // int_0^1 x^k dx = 1/(k+1), exact up to degree 15.
  for (int k = 0; k <= 15; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i)
      s += gl.weights[i] * std::pow(gl.nodes[i], k);
    REQUIRE(s == Approx(1.0 / (k + 1)).epsilon(1e-12));
  }
}

TEST_CASE("circle directions avoid lattice corners and cover uniformly") {
  const auto dirs = circle_directions(2048);
  for (const auto& u : dirs) {
    REQUIRE(u.norm() == Approx(1.0));
    // no node may align with the square's corner diagonals
    REQUIRE(std::abs(std::abs(u.x()) - std::abs(u.y())) > 1e-6);
  }
}

TEST_CASE("fibonacci sphere integrates a smooth function") {
  const auto dirs = fibonacci_sphere(4096);
  double s = 0.0;
  for (const auto& u : dirs) s += u.z() * u.z();
  s *= direction_weight<3>(4096);
  REQUIRE(s == Approx(4.0 * kPi / 3.0).epsilon(1e-3));
}

TEST_CASE("pairwise sum is deterministic and accurate") {
  std::vector<double> v(10001);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 / (1.0 + static_cast<double>(i));
  const double a = pairwise_sum(v);
  const double b = pairwise_sum(v);
  REQUIRE(a == b);
  REQUIRE(a == Approx(9.787706026045347).epsilon(1e-12));  // harmonic number H_10001
}

TEST_CASE("fit_line recovers exact linear data with zero half-width") {
  std::vector<double> x{1, 2, 3, 4, 5, 6}, y;
  for (double xi : x) y.push_back(2.0 * xi + 1.0);
  const auto est = fit_line(x, y);
  REQUIRE(est.slope == Approx(2.0).margin(1e-12));
  REQUIRE(est.half_width == Approx(0.0).margin(1e-9));
  REQUIRE(est.r_squared == Approx(1.0).margin(1e-12));
}

TEST_CASE("fit_line confidence interval covers noisy slope") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> noise(0.0, 0.05);
  std::vector<double> x, y;
  for (int i = 0; i < 12; ++i) {
    x.push_back(i * 0.5);
    y.push_back(1.5 * x.back() + noise(rng));
  }
  const auto est = fit_line(x, y);
  REQUIRE(std::abs(est.slope - 1.5) < est.half_width + 0.05);
  REQUIRE(est.half_width > 0.0);
}

TEST_CASE("quadratic fit recovers coefficients") {
  std::vector<double> x, y;
  for (int i = 2; i <= 12; ++i) {
    x.push_back(i);
    y.push_back(3.0 * i * i + 0.5 * i - 2.0);
  }
  const auto fit = fit_quadratic(x, y);
  REQUIRE(fit.a == Approx(3.0).margin(1e-9));
  REQUIRE(fit.b == Approx(0.5).margin(1e-8));
  REQUIRE(fit.r_squared == Approx(1.0).margin(1e-12));
}

TEST_CASE("2d hull drops collinear points") {
  std::vector<Vec<2>> pts{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}, {0, -1}, {0, 0}, {1, 0}};
  const auto hull = hull2d(std::span<const Vec<2>>(pts));
  REQUIRE(hull.size() == 4);
  REQUIRE(polygon_area(hull) == Approx(4.0));
}

TEST_CASE("3d hull of a cube finds 8 vertices and volume 8") {
  std::vector<Vec<3>> pts;
  for (int sx : {-1, 1})
    for (int sy : {-1, 1})
      for (int sz : {-1, 1}) pts.push_back(Vec<3>(sx, sy, sz));
  pts.push_back(Vec<3>(0, 0, 0));       // interior
  pts.push_back(Vec<3>(1, 0, 0));       // face point
  pts.push_back(Vec<3>(1, 1, 0));       // edge point
  const Hull3 hull = hull3d(pts);
  REQUIRE(hull.vertices.size() == 8);
  REQUIRE(hull3d_volume(pts, hull) == Approx(8.0).epsilon(1e-12));
}

TEST_CASE("scaled hull volume survives strong anisotropy") {
  // Rotation round-off limits volume accuracy to thin/long >= ~1e-13;
  // measures route anything thinner through the dual volume instead.
  std::vector<Vec<3>> pts;
  for (int sx : {-1, 1})
    for (int sy : {-1, 1})
      for (int sz : {-1, 1}) pts.push_back(Vec<3>(sx, sy, sz * 0.5e-12));
  Eigen::AngleAxisd rot(0.7, Vec<3>(1, 2, 3).normalized());
  for (auto& p : pts) p = rot * p;
  REQUIRE(convex_volume_3d(pts) == Approx(4e-12).epsilon(1e-3));

  std::vector<Vec<3>> thin;
  for (int sx : {-1, 1})
    for (int sy : {-1, 1})
      for (int sz : {-1, 1}) thin.push_back(rot * Vec<3>(sx, sy, sz * 0.5e-13));
  ScaledCloud<3> cloud{std::span<const Vec<3>>(thin)};
  REQUIRE(hull3d(cloud.scaled).vertices.size() == 8);
}

TEST_CASE("random 2d scaled areas match shoelace on well-scaled data") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec<2>> pts;
    for (int i = 0; i < 40; ++i) pts.push_back(Vec<2>(coord(rng), coord(rng)));
    const auto hull = hull2d(std::span<const Vec<2>>(pts));
    REQUIRE(convex_area_2d(pts) == Approx(polygon_area(hull)).epsilon(1e-10));
  }
}

TEST_CASE("real spherical harmonics are orthonormal") {
  // Gauss-Legendre in cos(theta) x uniform phi integrates degree <= 8
  // products exactly; any typo in the coefficient tables shows up here.
  const auto& gl = gauss_legendre(24);
  const int n_phi = 64;
  std::vector<std::pair<int, int>> lm;
  for (int l = 0; l <= 4; ++l)
    for (int m = -l; m <= l; ++m) lm.emplace_back(l, m);
  for (std::size_t a = 0; a < lm.size(); ++a) {
    for (std::size_t b = a; b < lm.size(); ++b) {
      const auto ya = real_spherical_harmonic(lm[a].first, lm[a].second);
      const auto yb = real_spherical_harmonic(lm[b].first, lm[b].second);
      double s = 0.0;
      for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double z = 1.0 - 2.0 * gl.nodes[i];
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        for (int j = 0; j < n_phi; ++j) {
          const double phi = 2.0 * kPi * (j + 0.5) / n_phi;
          const double x = r * std::cos(phi), y = r * std::sin(phi);
          s += gl.weights[i] * 2.0 * (2.0 * kPi / n_phi) * ya.value(x, y, z) * yb.value(x, y, z);
        }
      }
      const double expect = a == b ? 1.0 : 0.0;
      INFO("l=" << lm[a].first << " m=" << lm[a].second << " vs l=" << lm[b].first << " m=" << lm[b].second);
      REQUIRE(s == Approx(expect).margin(1e-10));
    }
  }
}

TEST_CASE("circular harmonics match cos/sin on the unit circle") {
  for (int k = 1; k <= 9; ++k) {
    const auto c = circular_harmonic(k, false);
    const auto s = circular_harmonic(k, true);
    for (double th : {0.3, 1.1, 2.9, 4.2}) {
      REQUIRE(c.value(std::cos(th), std::sin(th), 0.0) == Approx(std::cos(k * th)).margin(1e-12));
      REQUIRE(s.value(std::cos(th), std::sin(th), 0.0) == Approx(std::sin(k * th)).margin(1e-12));
    }
  }
}

TEST_CASE("radial coefficient gradients and hessians match finite differences") {
  RadialCoeffs<2> rc;
  rc.constant = 1.0;
  rc.set_cos(2, 0.15);
  rc.set_sin(3, 0.05);
  const Vec<2> y(0.8, -0.45);
  const double h = 1e-5;
  const auto grad = rc.gradient(y);
  const auto hess = rc.hessian(y);
  for (int i = 0; i < 2; ++i) {
    Vec<2> e = Vec<2>::Zero();
    e[i] = h;
    const double fd = (rc.value(y + e) - rc.value(y - e)) / (2 * h);
    REQUIRE(grad[i] == Approx(fd).margin(1e-8));
    const Vec<2> gd = (rc.gradient(y + e) - rc.gradient(y - e)) / (2 * h);
    for (int j = 0; j < 2; ++j) REQUIRE(hess(i, j) == Approx(gd[j]).margin(1e-7));
  }
  // homogeneity of degree zero
  REQUIRE(rc.value(3.7 * y) == Approx(rc.value(y)).margin(1e-13));

  RadialCoeffs<3> rc3;
  rc3.constant = 1.0;
  rc3.terms.emplace_back(real_spherical_harmonic(3, 2), 0.1);
  rc3.terms.emplace_back(real_spherical_harmonic(4, -1), 0.04);
  const Vec<3> y3(0.5, -0.6, 0.9);
  const auto grad3 = rc3.gradient(y3);
  const auto hess3 = rc3.hessian(y3);
  for (int i = 0; i < 3; ++i) {
    Vec<3> e = Vec<3>::Zero();
    e[i] = h;
    const double fd = (rc3.value(y3 + e) - rc3.value(y3 - e)) / (2 * h);
    REQUIRE(grad3[i] == Approx(fd).margin(1e-8));
    const Vec<3> gd = (rc3.gradient(y3 + e) - rc3.gradient(y3 - e)) / (2 * h);
    for (int j = 0; j < 3; ++j) REQUIRE(hess3(i, j) == Approx(gd[j]).margin(1e-6));
  }
  REQUIRE(rc3.value(0.2 * y3) == Approx(rc3.value(y3)).margin(1e-13));
}
