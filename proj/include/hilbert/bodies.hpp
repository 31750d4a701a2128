#pragma once

#include <hilbert/base.hpp>
#include <hilbert/harmonics.hpp>
#include <hilbert/hull.hpp>
#include <hilbert/quadrature.hpp>

#include <memory>
#include <optional>
#include <variant>

namespace hilbert {

// Exit times along +v and -v from p, unit speed in the Euclidean norm of v.
// +inf encodes a ray that never leaves (kept representable for the metric
// conventions, though every shipped body is bounded).
struct Chord {
  double t_plus = kInf;
  double t_minus = kInf;
};

template <int N>
struct Facet {
  Vec<N> normal;  // unit
  double offset;  // normal . x <= offset
};

template <int N>
struct HPolytope {
  std::vector<Facet<N>> facets;
  std::vector<Vec<N>> vertices;  // enumerated at construction
};

template <int N>
struct VPolytope {
  std::vector<Vec<N>> vertices;  // hull vertices, input pruned
  std::vector<Facet<N>> facets;  // cached H-representation
};

template <int N>
struct Ellipsoid {
  Vec<N> center;
  Mat<N> shape;      // SPD, (x-c)^T shape (x-c) <= 1
  Mat<N> shape_inv;
  double det_shape;
};

template <int N>
struct RadialBody {
  Vec<N> center;
  RadialCoeffs<N> radial;
  bool smooth = true;
  double rho_max = 0.0;
  std::vector<Vec<N>> boundary_cache;  // support-query seeds
};

template <int N>
struct ConvexBody {
  std::variant<HPolytope<N>, VPolytope<N>, Ellipsoid<N>, RadialBody<N>> rep;
  Vec<N> interior_point = Vec<N>::Zero();

  static constexpr int dim = N;
};

// ---------------------------------------------------------------------------
// membership / chords
// ---------------------------------------------------------------------------

template <int N>
bool contains(const ConvexBody<N>& body, const Arg<Vec<N>>& x, double tol = 0.0) {
  return std::visit(
      [&](const auto& rep) -> bool {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, HPolytope<N>> || std::is_same_v<T, VPolytope<N>>) {
          for (const auto& f : rep.facets)
            if (f.normal.dot(x) > f.offset + tol) return false;
          return true;
        } else if constexpr (std::is_same_v<T, Ellipsoid<N>>) {
          const Vec<N> y = x - rep.center;
          return y.dot(rep.shape * y) <= 1.0 + tol;
        } else {
          const Vec<N> y = x - rep.center;
          const double r = y.norm();
          if (r == 0.0) return true;
          return r <= rep.radial.value(y) + tol;
        }
      },
      body.rep);
}

namespace detail {

template <int N>
double radial_exit_time(const RadialBody<N>& rep, const Vec<N>& p, const Vec<N>& u) {
  // g(t) = |y(t)| - rho(y(t)) with y = p + t u - center; g(0) < 0 inside.
  const Vec<N> y0 = p - rep.center;
  auto g = [&](double t) {
    const Vec<N> y = y0 + t * u;
    const double r = y.norm();
    if (r == 0.0) return -rep.radial.constant;
    return r - rep.radial.value(y);
  };
  double hi = rep.rho_max + y0.norm() + 1.0;
  int guard = 0;
  while (g(hi) <= 0.0) {
    hi *= 2.0;
    if (++guard > 60) throw DegenerateBody("radial body appears unbounded");
  }
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) <= 0.0 ? lo : hi) = mid;
    if (hi - lo < kBoundaryTol * 0.5) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

template <int N>
Chord chord(const ConvexBody<N>& body, const Arg<Vec<N>>& p, const Arg<Vec<N>>& v) {
  const double vnorm = v.norm();
  if (vnorm == 0.0) throw DegenerateDirection("chord: zero direction");
  const Vec<N> u = v / vnorm;

  return std::visit(
      [&](const auto& rep) -> Chord {
        using T = std::decay_t<decltype(rep)>;
        Chord ch;
        if constexpr (std::is_same_v<T, HPolytope<N>> || std::is_same_v<T, VPolytope<N>>) {
          for (const auto& f : rep.facets) {
            const double slack = f.offset - f.normal.dot(p);
            if (slack <= 0.0) throw PointNotInterior("chord: point not strictly interior");
            const double d = f.normal.dot(u);
            if (d > 0.0) ch.t_plus = std::min(ch.t_plus, slack / d);
            else if (d < 0.0) ch.t_minus = std::min(ch.t_minus, slack / -d);
          }
        } else if constexpr (std::is_same_v<T, Ellipsoid<N>>) {
          const Vec<N> y = p - rep.center;
          const double a = u.dot(rep.shape * u);
          const double b = u.dot(rep.shape * y);
          const double g = 1.0 - y.dot(rep.shape * y);
          if (g <= 0.0) throw PointNotInterior("chord: point not strictly interior");
          const double disc = std::sqrt(b * b + a * g);
          ch.t_plus = (disc - b) / a;
          ch.t_minus = (disc + b) / a;
        } else {
          const Vec<N> y = p - rep.center;
          const double r = y.norm();
          if (r > 0.0 && r >= rep.radial.value(y)) throw PointNotInterior("chord: point not strictly interior");
          ch.t_plus = detail::radial_exit_time(rep, p, u);
          ch.t_minus = detail::radial_exit_time(rep, p, Vec<N>(-u));
        }
        return ch;
      },
      body.rep);
}

// ---------------------------------------------------------------------------
// support functions
// ---------------------------------------------------------------------------

namespace detail {

// Derivative-free polish of a direction-argmax: shrink a sampling
// neighborhood around the best direction.
template <int N, typename F>
std::pair<Vec<N>, double> polish_direction(F&& score, Vec<N> best_dir, double best_val, double width) {
  for (int round = 0; round < 26; ++round) {
    if constexpr (N == 2) {
      const double a0 = std::atan2(best_dir.y(), best_dir.x());
      for (int s = -2; s <= 2; ++s) {
        if (s == 0) continue;
        const double a = a0 + width * s / 2.0;
        const Vec<2> u(std::cos(a), std::sin(a));
        const double val = score(u);
        if (val > best_val) { best_val = val; best_dir = u; }
      }
    } else {
      Vec<3> t1 = best_dir.unitOrthogonal();
      Vec<3> t2 = best_dir.cross(t1);
      for (int s = 0; s < 8; ++s) {
        const double a = 2.0 * kPi * s / 8.0;
        Vec<3> u = best_dir + width * (std::cos(a) * t1 + std::sin(a) * t2);
        u.normalize();
        const double val = score(u);
        if (val > best_val) { best_val = val; best_dir = u; }
      }
    }
    width *= 0.6;
  }
  return {best_dir, best_val};
}

}  // namespace detail

// Support point: a boundary point maximizing <u, x>. Ties resolved toward the
// lowest vertex index for determinism.
template <int N>
Vec<N> support_point(const ConvexBody<N>& body, const Arg<Vec<N>>& u) {
  return std::visit(
      [&](const auto& rep) -> Vec<N> {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, HPolytope<N>> || std::is_same_v<T, VPolytope<N>>) {
          double best = -kInf;
          const Vec<N>* arg = nullptr;
          for (const auto& v : rep.vertices) {
            const double s = u.dot(v);
            if (s > best) { best = s; arg = &v; }
          }
          if (!arg) throw DegenerateBody("support_point: no vertices");
          return *arg;
        } else if constexpr (std::is_same_v<T, Ellipsoid<N>>) {
          const Vec<N> w = rep.shape_inv * u;
          return rep.center + w / std::sqrt(u.dot(w));
        } else {
          double best = -kInf;
          Vec<N> seed = Vec<N>::Unit(0);
          for (const auto& b : rep.boundary_cache) {
            const double s = u.dot(b);
            if (s > best) { best = s; seed = (b - rep.center).normalized(); }
          }
          auto score = [&](const Vec<N>& w) { return u.dot(rep.center + rep.radial.rho(w) * w); };
          auto [dir, val] = detail::polish_direction<N>(score, seed, score(seed),
                                                        2.0 * kPi / std::max<std::size_t>(rep.boundary_cache.size(), 16));
          (void)val;
          return rep.center + rep.radial.rho(dir) * dir;
        }
      },
      body.rep);
}

template <int N>
double support(const ConvexBody<N>& body, const Arg<Vec<N>>& u) {
  if (const auto* ell = std::get_if<Ellipsoid<N>>(&body.rep)) {
    return u.dot(ell->center) + std::sqrt(u.dot(ell->shape_inv * u));
  }
  return u.dot(support_point(body, u));
}

// ---------------------------------------------------------------------------
// construction
// ---------------------------------------------------------------------------

namespace detail {

template <int N>
std::vector<Vec<N>> enumerate_vertices(const std::vector<Facet<N>>& facets, const Vec<N>& inside) {
  // Vertices of {a.x <= b} are polar-dual to hull facets of {a_i / c_i} with
  // c_i the slack at an interior point.
  const int m = static_cast<int>(facets.size());
  if (m < N + 1) throw DegenerateBody("hpoly: too few facets to bound a body");
  std::vector<Vec<N>> dual(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double c = facets[static_cast<std::size_t>(i)].offset - facets[static_cast<std::size_t>(i)].normal.dot(inside);
    if (c <= 0.0) throw PointNotInterior("hpoly: interior point violates a facet");
    dual[static_cast<std::size_t>(i)] = facets[static_cast<std::size_t>(i)].normal / c;
  }
  std::vector<Vec<N>> verts;
  if constexpr (N == 2) {
    const auto hull = hull2d_indices(dual);
    const int k = static_cast<int>(hull.size());
    if (k < 3) throw DegenerateBody("hpoly: degenerate constraint set");
    for (int e = 0; e < k; ++e) {
      const auto& fi = facets[static_cast<std::size_t>(hull[static_cast<std::size_t>(e)])];
      const auto& fj = facets[static_cast<std::size_t>(hull[static_cast<std::size_t>((e + 1) % k)])];
      Mat<2> A;
      A.row(0) = fi.normal.transpose();
      A.row(1) = fj.normal.transpose();
      const double det = A.determinant();
      if (std::abs(det) < 1e-14) throw ImageUnbounded("hpoly: unbounded edge pair");
      verts.push_back(A.inverse() * Vec<2>(fi.offset - fi.normal.dot(inside), fj.offset - fj.normal.dot(inside)) + inside);
    }
  } else {
    ScaledCloud<3> cloud(dual);
    const Hull3 hull = hull3d(cloud.scaled);
    for (const auto& f : hull.faces) {
      Mat<3> A;
      Vec<3> rhs;
      for (int r = 0; r < 3; ++r) {
        const auto& fr = facets[static_cast<std::size_t>(f[static_cast<std::size_t>(r)])];
        A.row(r) = fr.normal.transpose();
        rhs(r) = fr.offset - fr.normal.dot(inside);
      }
      if (std::abs(A.determinant()) < 1e-14 * A.rowwise().norm().prod())
        throw ImageUnbounded("hpoly: unbounded facet triple");
      verts.push_back(A.partialPivLu().solve(rhs) + inside);
    }
    // Face solves duplicate vertices; prune to extreme points.
    std::vector<Vec<3>> unique;
    for (const auto& v : verts) {
      bool dup = false;
      for (const auto& w : unique)
        if ((v - w).norm() < 1e-9 * (1.0 + v.norm())) { dup = true; break; }
      if (!dup) unique.push_back(v);
    }
    verts = std::move(unique);
  }
  return verts;
}

template <int N>
std::vector<Facet<N>> facets_from_vertices(const std::vector<Vec<N>>& verts, std::vector<Vec<N>>* hull_verts) {
  std::vector<Facet<N>> facets;
  if constexpr (N == 2) {
    const auto hull = hull2d(std::span<const Vec<2>>(verts));
    if (hull.size() < 3) throw DegenerateBody("vpoly: vertices do not span the plane");
    const int k = static_cast<int>(hull.size());
    for (int i = 0; i < k; ++i) {
      const Vec<2>& a = hull[static_cast<std::size_t>(i)];
      const Vec<2>& b = hull[static_cast<std::size_t>((i + 1) % k)];
      const Vec<2> t = b - a;
      Vec<2> n(t.y(), -t.x());  // outward for CCW
      n.normalize();
      facets.push_back({n, n.dot(a)});
    }
    if (hull_verts) *hull_verts = hull;
  } else {
    const Hull3 hull = hull3d(std::span<const Vec<3>>(verts));
    std::vector<Facet<3>> raw;
    for (const auto& f : hull.faces) {
      const Vec<3>& a = verts[static_cast<std::size_t>(f[0])];
      Vec<3> n = (verts[static_cast<std::size_t>(f[1])] - a).cross(verts[static_cast<std::size_t>(f[2])] - a);
      const double len = n.norm();
      if (len == 0.0) continue;
      n /= len;
      raw.push_back({n, n.dot(a)});
    }
    // Coplanar triangles produce duplicate planes; keep one of each.
    for (const auto& f : raw) {
      bool dup = false;
      for (const auto& g : facets)
        if ((f.normal - g.normal).norm() < 1e-9 && std::abs(f.offset - g.offset) < 1e-9 * (1.0 + std::abs(g.offset))) {
          dup = true;
          break;
        }
      if (!dup) facets.push_back(f);
    }
    if (hull_verts) {
      hull_verts->clear();
      for (int v : hull.vertices) hull_verts->push_back(verts[static_cast<std::size_t>(v)]);
    }
  }
  return facets;
}

}  // namespace detail

template <int N>
ConvexBody<N> make_hpolytope(std::vector<Vec<N>> normals, std::vector<double> offsets,
                             std::optional<Vec<N>> interior = std::nullopt) {
  if (normals.size() != offsets.size() || normals.empty())
    throw InvalidBodyFile("hpoly: normals/offsets mismatch");
  HPolytope<N> rep;
  for (std::size_t i = 0; i < normals.size(); ++i) {
    const double len = normals[i].norm();
    if (len == 0.0) throw InvalidBodyFile("hpoly: zero normal");
    rep.facets.push_back({normals[i] / len, offsets[i] / len});
  }
  Vec<N> inside;
  if (interior) {
    inside = *interior;
  } else {
    // Offsets positive at the origin is the common case in body files.
    inside = Vec<N>::Zero();
  }
  rep.vertices = detail::enumerate_vertices<N>(rep.facets, inside);
  Vec<N> centroid = Vec<N>::Zero();
  for (const auto& v : rep.vertices) centroid += v;
  centroid /= static_cast<double>(rep.vertices.size());

  ConvexBody<N> body;
  body.rep = std::move(rep);
  body.interior_point = interior ? *interior : centroid;
  if (!contains(body, body.interior_point, -1e-12))
    throw PointNotInterior("hpoly: stated interior point is not interior");
  return body;
}

template <int N>
ConvexBody<N> make_vpolytope(std::vector<Vec<N>> vertices, std::optional<Vec<N>> interior = std::nullopt) {
  if (vertices.size() < N + 1) throw DegenerateBody("vpoly: too few vertices");
  VPolytope<N> rep;
  rep.facets = detail::facets_from_vertices<N>(vertices, &rep.vertices);
  ConvexBody<N> body;
  Vec<N> centroid = Vec<N>::Zero();
  for (const auto& v : rep.vertices) centroid += v;
  centroid /= static_cast<double>(rep.vertices.size());
  body.rep = std::move(rep);
  body.interior_point = interior.value_or(centroid);
  if (!contains(body, body.interior_point, -1e-12))
    throw PointNotInterior("vpoly: stated interior point is not interior");
  return body;
}

template <int N>
ConvexBody<N> make_ellipsoid(const Arg<Vec<N>>& center, const Arg<Mat<N>>& shape) {
  Eigen::LLT<Mat<N>> llt(shape);
  if (llt.info() != Eigen::Success) throw DegenerateBody("ellipsoid: shape not positive definite");
  Ellipsoid<N> rep;
  rep.center = center;
  rep.shape = 0.5 * (shape + shape.transpose());
  rep.shape_inv = rep.shape.inverse();
  rep.det_shape = rep.shape.determinant();
  ConvexBody<N> body;
  body.rep = std::move(rep);
  body.interior_point = center;
  return body;
}

template <int N>
ConvexBody<N> make_ball(const Arg<Vec<N>>& center, double radius) {
  return make_ellipsoid<N>(center, Mat<N>::Identity() / (radius * radius));
}

template <int N>
ConvexBody<N> make_radial_body(const Arg<Vec<N>>& center, RadialCoeffs<N> radial, bool smooth = true) {
  RadialBody<N> rep;
  rep.center = center;
  rep.radial = std::move(radial);
  rep.smooth = smooth;

  const int cache_n = N == 2 ? 1024 : 2048;
  const auto dirs = sphere_directions<N>(cache_n);
  double rho_min = kInf, rho_max = 0.0;
  rep.boundary_cache.reserve(dirs.size());
  for (const auto& u : dirs) {
    const double r = rep.radial.rho(u);
    rho_min = std::min(rho_min, r);
    rho_max = std::max(rho_max, r);
    rep.boundary_cache.push_back(center + r * u);
  }
  if (!(rho_min > 0.0)) throw DegenerateBody("radial body: radial function not positive");
  rep.rho_max = rho_max;

  // Sampled midpoint convexity: midpoints of boundary chords must stay inside.
  const double tol = 1e-9 * rho_max;
  auto inside = [&](const Vec<N>& x) {
    const Vec<N> y = x - center;
    const double r = y.norm();
    return r <= rep.radial.value(y) + tol;
  };
  const int k = static_cast<int>(dirs.size());
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (int trial = 0; trial < 4096; ++trial) {
    h ^= h >> 33; h *= 0xff51afd7ed558ccdull; h ^= h >> 33;
    const int i = static_cast<int>(h % static_cast<std::uint64_t>(k));
    h *= 0xc4ceb9fe1a85ec53ull; h ^= h >> 33;
    const int j = static_cast<int>(h % static_cast<std::uint64_t>(k));
    if (i == j) continue;
    const Vec<N> mid = 0.5 * (rep.boundary_cache[static_cast<std::size_t>(i)] +
                              rep.boundary_cache[static_cast<std::size_t>(j)]);
    if (!inside(mid)) throw DegenerateBody("radial body: sampled midpoint convexity failed");
  }
  // Adjacent-sample midpoints catch short-wavelength concavities.
  for (int i = 0; i + 1 < k; ++i) {
    const Vec<N> mid = 0.5 * (rep.boundary_cache[static_cast<std::size_t>(i)] +
                              rep.boundary_cache[static_cast<std::size_t>(i + 1)]);
    if (!inside(mid)) throw DegenerateBody("radial body: sampled midpoint convexity failed");
  }

  ConvexBody<N> body;
  body.rep = std::move(rep);
  body.interior_point = center;
  return body;
}

// ---------------------------------------------------------------------------
// misc queries
// ---------------------------------------------------------------------------

// H-representation view when the body is polytopal.
template <int N>
const std::vector<Facet<N>>* polytope_facets(const ConvexBody<N>& body) {
  if (const auto* h = std::get_if<HPolytope<N>>(&body.rep)) return &h->facets;
  if (const auto* v = std::get_if<VPolytope<N>>(&body.rep)) return &v->facets;
  return nullptr;
}

template <int N>
const std::vector<Vec<N>>* polytope_vertices(const ConvexBody<N>& body) {
  if (const auto* h = std::get_if<HPolytope<N>>(&body.rep)) return &h->vertices;
  if (const auto* v = std::get_if<VPolytope<N>>(&body.rep)) return &v->vertices;
  return nullptr;
}

// Parameter interval {t : z0 + t w inside body}; nullopt when the line misses.
template <int N>
std::optional<std::pair<double, double>> line_interval(const ConvexBody<N>& body, const Arg<Vec<N>>& z0,
                                                       const Arg<Vec<N>>& w) {
  if (const auto* facets = polytope_facets(body)) {
    double lo = -kInf, hi = kInf;
    for (const auto& f : *facets) {
      const double d = f.normal.dot(w);
      const double s = f.offset - f.normal.dot(z0);
      if (std::abs(d) < 1e-15) {
        if (s < 0.0) return std::nullopt;
      } else if (d > 0.0) {
        hi = std::min(hi, s / d);
      } else {
        lo = std::max(lo, s / d);
      }
    }
    if (lo >= hi) return std::nullopt;
    return std::make_pair(lo, hi);
  }
  if (const auto* ell = std::get_if<Ellipsoid<N>>(&body.rep)) {
    const Vec<N> y = z0 - ell->center;
    const double a = w.dot(ell->shape * w);
    const double b = w.dot(ell->shape * y);
    const double c = y.dot(ell->shape * y) - 1.0;
    const double disc = b * b - a * c;
    if (disc <= 0.0) return std::nullopt;
    const double sq = std::sqrt(disc);
    return std::make_pair((-b - sq) / a, (-b + sq) / a);
  }
  // Radial body: locate an inside sample, then bisect both ends.
  const auto* rad = std::get_if<RadialBody<N>>(&body.rep);
  const double reach = rad->rho_max + (z0 - rad->center).norm() + 1.0;
  const double wn = w.norm();
  const int samples = 1024;
  double t_in = kInf;
  for (int i = 0; i <= samples; ++i) {
    const double t = -reach / wn + 2.0 * reach / wn * i / samples;
    if (contains(body, Vec<N>(z0 + t * w))) { t_in = t; break; }
  }
  if (!std::isfinite(t_in)) return std::nullopt;
  const Vec<N> p0 = z0 + t_in * w;
  const double t_hi = t_in + detail::radial_exit_time(*rad, p0, Vec<N>(w / wn)) / wn;
  const double t_lo = t_in - detail::radial_exit_time(*rad, p0, Vec<N>(-w / wn)) / wn;
  return std::make_pair(t_lo, t_hi);
}

// Boundary sample along each of m directions from the interior point.
template <int N>
std::vector<Vec<N>> boundary_samples(const ConvexBody<N>& body, int m) {
  const auto dirs = sphere_directions<N>(m);
  std::vector<Vec<N>> out(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const Chord ch = chord(body, body.interior_point, dirs[i]);
    out[i] = body.interior_point + ch.t_plus * dirs[i];
  }
  return out;
}

template <int N>
double euclidean_diameter_bound(const ConvexBody<N>& body) {
  return std::visit(
      [&](const auto& rep) -> double {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, HPolytope<N>> || std::is_same_v<T, VPolytope<N>>) {
          double r = 0.0;
          for (const auto& v : rep.vertices)
            for (const auto& w : rep.vertices) r = std::max(r, (v - w).norm());
          return r;
        } else if constexpr (std::is_same_v<T, Ellipsoid<N>>) {
          Eigen::SelfAdjointEigenSolver<Mat<N>> eig(rep.shape);
          return 2.0 / std::sqrt(eig.eigenvalues().minCoeff());
        } else {
          return 2.0 * rep.rho_max;
        }
      },
      body.rep);
}

}  // namespace hilbert
