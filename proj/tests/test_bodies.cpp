#include <hilbert/lowner.hpp>
#include <hilbert/standard_bodies.hpp>
#include <hilbert/transforms.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace hilbert;
using Catch::Approx;

TEST_CASE("chord: unit disk") {
  const auto disk = unit_disk();
  const auto c0 = chord(disk, Vec<2>(0, 0), Vec<2>(1, 0));
  REQUIRE(c0.t_plus == Approx(1.0).margin(1e-12));
  REQUIRE(c0.t_minus == Approx(1.0).margin(1e-12));

  const auto c1 = chord(disk, Vec<2>(0.5, 0), Vec<2>(1, 0));
  REQUIRE(c1.t_plus == Approx(0.5).margin(1e-12));
  REQUIRE(c1.t_minus == Approx(1.5).margin(1e-12));
}

TEST_CASE("chord: unit square along the diagonal") {
  const auto sq = square_body();
  const Vec<2> diag = Vec<2>(1, 1).normalized();
  const auto ch = chord(sq, Vec<2>(0, 0), diag);
  // exact facet intersection: the diagonal exits at (1,1), distance sqrt(2)
  REQUIRE(ch.t_plus == Approx(std::sqrt(2.0)).margin(1e-12));
  REQUIRE(ch.t_minus == Approx(std::sqrt(2.0)).margin(1e-12));
}

TEST_CASE("chord errors") {
  const auto disk = unit_disk();
  REQUIRE_THROWS_AS(chord(disk, Vec<2>(0, 0), Vec<2>(0, 0)), DegenerateDirection);
  REQUIRE_THROWS_AS(chord(disk, Vec<2>(2, 0), Vec<2>(1, 0)), PointNotInterior);
}

TEST_CASE("chord consistency: boundary residual over random bodies") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  int checked = 0;
  for (int b = 0; b < 25; ++b) {
    const auto body = random_body<2>(rng);
    for (int i = 0; i < 400; ++i) {
      Vec<2> p(unit(rng) * 0.3, unit(rng) * 0.3);
      if (!contains(body, p, -1e-6)) continue;
      Vec<2> v(unit(rng), unit(rng));
      if (v.norm() < 1e-3) continue;
      const auto ch = chord(body, p, v);
      const Vec<2> u = v.normalized();
      // both endpoints on the boundary within tolerance
      for (const Vec<2> q : {Vec<2>(p + ch.t_plus * u), Vec<2>(p - ch.t_minus * u)}) {
        REQUIRE(contains(body, q, 1e-8));
        REQUIRE(!contains(body, Vec<2>(p + (ch.t_plus + 1e-7) * u), 1e-12));
      }
      ++checked;
    }
  }
  REQUIRE(checked > 5000);
}

TEST_CASE("chord consistency in 3d") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  int checked = 0;
  for (int b = 0; b < 8; ++b) {
    const auto body = random_body<3>(rng);
    for (int i = 0; i < 200; ++i) {
      Vec<3> p(unit(rng) * 0.25, unit(rng) * 0.25, unit(rng) * 0.25);
      if (!contains(body, p, -1e-6)) continue;
      Vec<3> v(unit(rng), unit(rng), unit(rng));
      if (v.norm() < 1e-3) continue;
      const auto ch = chord(body, p, v);
      const Vec<3> u = v.normalized();
      REQUIRE(contains(body, Vec<3>(p + ch.t_plus * u), 1e-8));
      REQUIRE(contains(body, Vec<3>(p - ch.t_minus * u), 1e-8));
      ++checked;
    }
  }
  REQUIRE(checked > 1000);
}

TEST_CASE("hausdorff distance examples") {
  const auto disk = unit_disk();
  REQUIRE(hausdorff_distance(disk, disk) == Approx(0.0).margin(1e-9));

  // inscribed square with vertices on the axes: gap maximized at 45 degrees
  const auto diamond = make_vpolytope<2>({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  REQUIRE(hausdorff_distance(disk, diamond) == Approx(1.0 - std::sqrt(2.0) / 2.0).margin(1e-7));

  // inscribed regular 23-gon: closed-form gap 1 - cos(pi/23)
  const auto poly = regular_polygon(23);
  REQUIRE(hausdorff_distance(disk, poly) == Approx(1.0 - std::cos(kPi / 23)).margin(1e-7));
}

TEST_CASE("hausdorff distance is a metric on sampled bodies") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_body<2>(rng);
    const auto b = random_body<2>(rng);
    const auto c = random_body<2>(rng);
    const double ab = hausdorff_distance(a, b);
    const double ba = hausdorff_distance(b, a);
    REQUIRE(ab == Approx(ba).margin(1e-9));
    const double ac = hausdorff_distance(a, c);
    const double cb = hausdorff_distance(c, b);
    REQUIRE(ab <= ac + cb + 1e-6);
  }
}

TEST_CASE("dilate examples") {
  const auto disk = unit_disk();
  const auto half = dilate(disk, Vec<2>::Zero(), 0.5);
  const auto ch = chord(half, Vec<2>(0, 0), Vec<2>(1, 0));
  REQUIRE(ch.t_plus == Approx(0.5).margin(1e-12));

  const auto sq = square_body();
  const double th = std::tanh(1.0);
  const auto shrunk = dilate(sq, Vec<2>::Zero(), th);
  REQUIRE(support(shrunk, Vec<2>(1, 0)) == Approx(th).margin(1e-12));

  const auto same = dilate(sq, Vec<2>(0.3, -0.2), 1.0);
  REQUIRE(hausdorff_distance(sq, same) == Approx(0.0).margin(1e-9));
}

TEST_CASE("polar duality examples") {
  // unit disk is self dual
  const auto disk = unit_disk();
  REQUIRE(hausdorff_distance(polar_dual(disk), disk) == Approx(0.0).margin(1e-9));

  // square dualizes to the cross-polytope
  const auto sq = square_body();
  const auto dual = polar_dual(sq);
  const auto cross = make_vpolytope<2>({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  REQUIRE(hausdorff_distance(dual, cross) == Approx(0.0).margin(1e-9));

  // ellipse semi-axes (2,1) dualizes to semi-axes (1/2,1)
  const auto ell = ellipse_body(2.0, 1.0);
  const auto ell_dual = polar_dual(ell);
  const auto expect = ellipse_body(0.5, 1.0);
  REQUIRE(hausdorff_distance(ell_dual, expect) == Approx(0.0).margin(1e-8));

  REQUIRE_THROWS_AS(polar_dual(ellipse_body(1.0, 1.0, Vec<2>(2.0, 0.0))), OriginNotInterior);
}

TEST_CASE("polar dual is an involution") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 12; ++trial) {
    const auto body = random_body<2>(rng);
    if (!contains(body, Vec<2>::Zero(), -1e-3)) continue;
    const auto twice = polar_dual(polar_dual(body));
    REQUIRE(hausdorff_distance(body, twice) < 2e-5);
  }
  std::mt19937_64 rng3(23);
  for (int trial = 0; trial < 4; ++trial) {
    const auto body = random_polytope<3>(rng3, 10);
    const auto twice = polar_dual(polar_dual(body));
    REQUIRE(hausdorff_distance(body, twice) < 2e-5);
  }
}

TEST_CASE("projective maps: identity and affine block consistency") {
  const auto sq = square_body();
  ProjectiveMap<2> ident;
  REQUIRE(hausdorff_distance(apply_projective(ident, sq), sq) == Approx(0.0).margin(1e-10));

  AffineMap<2> aff;
  aff.linear << 1.2, 0.3, -0.1, 0.9;
  aff.offset << 0.15, -0.25;
  const auto via_proj = apply_projective(ProjectiveMap<2>::from_affine(aff), sq);
  const auto* verts = polytope_vertices(via_proj);
  REQUIRE(verts != nullptr);
  for (const auto& v : *verts) {
    // every image vertex must be the affine image of an original vertex
    double best = kInf;
    for (const auto& w : *polytope_vertices(sq)) best = std::min(best, (aff(w) - v).norm());
    REQUIRE(best < 1e-12);
  }
}

TEST_CASE("projective image unbounded is detected") {
  const auto sq = square_body();
  ProjectiveMap<2> t;
  t.matrix << 1, 0, 0, 0, 1, 0, 1, 0, 0.5;  // chart line crosses the square
  REQUIRE_THROWS_AS(apply_projective(t, sq), ImageUnbounded);
}

TEST_CASE("lowner normalization certificates") {
  // disk: identity
  const auto disk_norm = lowner_normalize(unit_disk());
  REQUIRE(disk_norm.map.linear.isApprox(Mat<2>::Identity(), 1e-7));
  REQUIRE(disk_norm.map.offset.norm() < 1e-9);

  // translated and scaled disk: translation + 1/3 scaling
  const auto big = make_ball<2>(Vec<2>(5.0, 0.0), 3.0);
  const auto norm = lowner_normalize(big);
  REQUIRE(norm.map.linear(0, 0) == Approx(1.0 / 3.0).margin(1e-7));
  REQUIRE(norm.map.offset.x() == Approx(-5.0 / 3.0).margin(1e-6));

  // triangle: image inside unit ball, contains ball of radius 1/2
  const auto tri = make_vpolytope<2>({{0, 0}, {1, 0}, {0, 1}});
  const auto tn = lowner_normalize(tri);
  REQUIRE(tn.outer_violation < 1e-6);
  REQUIRE(tn.inner_violation < 1e-6);
  for (const auto& v : *polytope_vertices(tn.body)) REQUIRE(v.norm() < 1.0 + 1e-7);
  const auto ch = chord(tn.body, Vec<2>::Zero(), Vec<2>(0.3, -0.8));
  REQUIRE(ch.t_plus > 0.5 - 1e-7);
}

TEST_CASE("lowner normalization of random bodies is certified") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 8; ++trial) {
    const auto body = random_body<2>(rng);
    const auto norm = lowner_normalize(body);
    REQUIRE(norm.outer_violation < 1e-5);
    REQUIRE(norm.inner_violation < 1e-5);
  }
  std::mt19937_64 rng3(9);
  for (int trial = 0; trial < 3; ++trial) {
    const auto body = random_body<3>(rng3);
    const auto norm = lowner_normalize(body);
    REQUIRE(norm.outer_violation < 1e-5);
    REQUIRE(norm.inner_violation < 1e-5);
  }
}

TEST_CASE("ball-certified normalization keeps radial bodies exact") {
  const auto body = fourier_body(0.12, 31);
  const auto norm = ball_certified_normalize(body);
  REQUIRE(norm.kind == NormalizationKind::BallCertificate);
  REQUIRE(std::holds_alternative<RadialBody<2>>(norm.body.rep));
  REQUIRE(norm.inner_violation == 0.0);
  REQUIRE(norm.outer_violation < 1e-9);
}

TEST_CASE("radial body construction rejects nonconvex data") {
  RadialCoeffs<2> rc;
  rc.constant = 1.0;
  rc.set_cos(5, 0.5);  // strong ripple
  REQUIRE_THROWS_AS(make_radial_body<2>(Vec<2>::Zero(), std::move(rc), true), DegenerateBody);

  RadialCoeffs<2> neg;
  neg.constant = 0.1;
  neg.set_cos(1, 0.5);  // rho changes sign
  REQUIRE_THROWS_AS(make_radial_body<2>(Vec<2>::Zero(), std::move(neg), true), DegenerateBody);
}

TEST_CASE("vpolytope to hpolytope caching agrees") {
  std::mt19937_64 rng(77);
  const auto body = random_polytope<2>(rng, 11);
  std::uniform_real_distribution<double> unit(-1.5, 1.5);
  for (int i = 0; i < 2000; ++i) {
    const Vec<2> x(unit(rng), unit(rng));
    // H-representation and direct hull membership must agree
    bool in_h = contains(body, x, 1e-12);
    double support_gap = -kInf;
    for (const auto& u : circle_directions(256))
      support_gap = std::max(support_gap, u.dot(x) - support(body, u));
    const bool in_v = support_gap <= 1e-9;
    if (in_h != in_v) {
      // disagreement only in the boundary band the 256-direction support
      // sampling cannot resolve
      REQUIRE(std::abs(support_gap) < 2e-3);
    }
  }
}

TEST_CASE("support points are deterministic under ties") {
  const auto sq = square_body();
  const Vec<2> u(1.0, 0.0);  // two vertices tie; lowest index must win
  const Vec<2> a = support_point(sq, u);
  const Vec<2> b = support_point(sq, u);
  REQUIRE(a == b);
}
