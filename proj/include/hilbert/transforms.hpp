#pragma once

#include <hilbert/bodies.hpp>

namespace hilbert {

template <int N>
struct AffineMap {
  Mat<N> linear = Mat<N>::Identity();
  Vec<N> offset = Vec<N>::Zero();

  Vec<N> operator()(const Vec<N>& x) const { return linear * x + offset; }
  AffineMap inverse() const {
    AffineMap inv;
    inv.linear = linear.inverse();
    inv.offset = -inv.linear * offset;
    return inv;
  }
};

// Invertible action on homogeneous coordinates. The body image must stay in
// the affine chart; see apply_projective.
template <int N>
struct ProjectiveMap {
  Eigen::Matrix<double, N + 1, N + 1> matrix = Eigen::Matrix<double, N + 1, N + 1>::Identity();

  static ProjectiveMap from_affine(const AffineMap<N>& a) {
    ProjectiveMap t;
    t.matrix.template topLeftCorner<N, N>() = a.linear;
    t.matrix.template topRightCorner<N, 1>() = a.offset;
    t.matrix.template bottomLeftCorner<1, N>().setZero();
    t.matrix(N, N) = 1.0;
    return t;
  }

  ProjectiveMap inverse() const {
    ProjectiveMap t;
    t.matrix = matrix.inverse();
    return t;
  }
};

template <int N>
Vec<N> apply_projective(const ProjectiveMap<N>& map, const Arg<Vec<N>>& x) {
  Eigen::Matrix<double, N + 1, 1> h;
  h.template head<N>() = x;
  h(N) = 1.0;
  h = map.matrix * h;
  const double denom = h(N);
  if (std::abs(denom) < 1e-14 * (1.0 + h.template head<N>().norm()))
    throw ImageUnbounded("apply_projective: point maps to the hyperplane at infinity");
  return h.template head<N>() / denom;
}

namespace detail {

template <int N>
double chart_denominator(const ProjectiveMap<N>& map, const Arg<Vec<N>>& x) {
  Eigen::Matrix<double, N + 1, 1> h;
  h.template head<N>() = x;
  h(N) = 1.0;
  return (map.matrix * h)(N);
}

// Fit harmonic coefficients to direction samples of a positive function.
template <typename F>
RadialCoeffs<2> fit_radial_2d(F&& f, int max_k) {
  const int m = std::max(64, 8 * max_k);
  std::vector<double> vals(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) vals[static_cast<std::size_t>(j)] = f(2.0 * kPi * j / m);
  RadialCoeffs<2> out;
  out.constant = 0.0;
  for (double v : vals) out.constant += v;
  out.constant /= m;
  for (int k = 1; k <= max_k; ++k) {
    double a = 0.0, b = 0.0;
    for (int j = 0; j < m; ++j) {
      const double th = 2.0 * kPi * j / m;
      a += vals[static_cast<std::size_t>(j)] * std::cos(k * th);
      b += vals[static_cast<std::size_t>(j)] * std::sin(k * th);
    }
    out.set_cos(k, a * 2.0 / m);
    out.set_sin(k, b * 2.0 / m);
  }
  return out;
}

template <typename F>
RadialCoeffs<3> fit_radial_3d(F&& f, int max_l) {
  // Gauss-Legendre in cos(theta) x uniform phi integrates the l <= 4 basis
  // products exactly.
  const auto& gl = gauss_legendre(16);
  const int n_phi = 32;
  struct Node { Vec<3> u; double w; };
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double z = 1.0 - 2.0 * gl.nodes[i];  // map (0,1) -> (-1,1)
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    for (int j = 0; j < n_phi; ++j) {
      const double phi = 2.0 * kPi * (j + 0.5) / n_phi;
      nodes.push_back({Vec<3>(s * std::cos(phi), s * std::sin(phi), z),
                       gl.weights[i] * 2.0 * (2.0 * kPi / n_phi)});
    }
  }
  RadialCoeffs<3> out;
  out.constant = 0.0;
  std::vector<double> vals(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    vals[i] = f(nodes[i].u);
    out.constant += nodes[i].w * vals[i];
  }
  out.constant /= 4.0 * kPi;
  for (int l = 1; l <= max_l; ++l) {
    for (int m = -l; m <= l; ++m) {
      const HomogPoly y = real_spherical_harmonic(l, m);
      double c = 0.0;
      for (std::size_t i = 0; i < nodes.size(); ++i)
        c += nodes[i].w * vals[i] * y.value(nodes[i].u.x(), nodes[i].u.y(), nodes[i].u.z());
      if (std::abs(c) > 1e-12) out.terms.emplace_back(y, c);
    }
  }
  return out;
}

template <int N>
int radial_fit_order(const RadialBody<N>& rep) {
  if constexpr (N == 2) return std::min(64, std::max(32, 4 * rep.radial.max_degree()));
  else return 4;
}

}  // namespace detail

// Pointwise image under x -> center + ratio (x - center); representation
// preserving for every body kind.
template <int N>
ConvexBody<N> dilate(const ConvexBody<N>& body, const Arg<Vec<N>>& center, double ratio) {
  if (!(ratio > 0.0)) throw ParameterOutOfRange("dilate: ratio must be positive");
  ConvexBody<N> out;
  out.interior_point = center + ratio * (body.interior_point - center);
  out.rep = std::visit(
      [&](const auto& rep) -> decltype(body.rep) {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, HPolytope<N>>) {
          HPolytope<N> r = rep;
          for (auto& f : r.facets) f.offset = ratio * f.offset + (1.0 - ratio) * f.normal.dot(center);
          for (auto& v : r.vertices) v = center + ratio * (v - center);
          return r;
        } else if constexpr (std::is_same_v<T, VPolytope<N>>) {
          VPolytope<N> r = rep;
          for (auto& v : r.vertices) v = center + ratio * (v - center);
          for (auto& f : r.facets) f.offset = ratio * f.offset + (1.0 - ratio) * f.normal.dot(center);
          return r;
        } else if constexpr (std::is_same_v<T, Ellipsoid<N>>) {
          Ellipsoid<N> r = rep;
          r.center = center + ratio * (r.center - center);
          r.shape /= ratio * ratio;
          r.shape_inv *= ratio * ratio;
          r.det_shape = r.shape.determinant();
          return r;
        } else {
          RadialBody<N> r = rep;
          r.center = center + ratio * (r.center - center);
          r.radial.constant *= ratio;
          if constexpr (N == 2) {
            for (auto& c : r.radial.cos_coef) c *= ratio;
            for (auto& c : r.radial.sin_coef) c *= ratio;
          } else {
            for (auto& [p, c] : r.radial.terms) c *= ratio;
          }
          r.rho_max *= ratio;
          for (auto& b : r.boundary_cache) b = center + ratio * (b - center);
          return r;
        }
      },
      body.rep);
  return out;
}

// Polar dual {u : <u,x> <= 1 for all x in body}. Requires the origin strictly
// inside.
template <int N>
ConvexBody<N> polar_dual(const ConvexBody<N>& body) {
  if (!contains(body, Vec<N>::Zero(), -1e-12))
    throw OriginNotInterior("polar_dual: origin not strictly interior");
  return std::visit(
      [&](const auto& rep) -> ConvexBody<N> {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, VPolytope<N>>) {
          std::vector<Vec<N>> normals;
          std::vector<double> offsets;
          for (const auto& v : rep.vertices) {
            normals.push_back(v);
            offsets.push_back(1.0);
          }
          return make_hpolytope<N>(std::move(normals), std::move(offsets), Vec<N>::Zero());
        } else if constexpr (std::is_same_v<T, HPolytope<N>>) {
          std::vector<Vec<N>> verts;
          for (const auto& f : rep.facets) {
            if (f.offset <= 0.0) throw OriginNotInterior("polar_dual: facet offset not positive at origin");
            verts.push_back(f.normal / f.offset);
          }
          return make_vpolytope<N>(std::move(verts), Vec<N>::Zero());
        } else if constexpr (std::is_same_v<T, Ellipsoid<N>>) {
          // {u : u.c + sqrt(u^T A^-1 u) <= 1} is the ellipsoid
          // (u + M^-1 c)^T M (u + M^-1 c) <= 1 + c^T M^-1 c,  M = A^-1 - c c^T.
          const Mat<N> m = rep.shape_inv - rep.center * rep.center.transpose();
          Eigen::LLT<Mat<N>> llt(m);
          if (llt.info() != Eigen::Success)
            throw OriginNotInterior("polar_dual: origin not interior to ellipsoid");
          const Vec<N> mc = llt.solve(rep.center);
          const double scale = 1.0 + rep.center.dot(mc);
          return make_ellipsoid<N>(Vec<N>(-mc), Mat<N>(m / scale));
        } else {
          // radial'(u) = 1 / h_body(u), refit onto the harmonic basis.
          const int order = detail::radial_fit_order(rep);
          RadialCoeffs<N> fit;
          if constexpr (N == 2) {
            fit = detail::fit_radial_2d(
                [&](double th) {
                  const Vec<2> u(std::cos(th), std::sin(th));
                  return 1.0 / support(body, u);
                },
                order);
          } else {
            fit = detail::fit_radial_3d(
                [&](const Vec<3>& u) { return 1.0 / support(body, u); }, order);
          }
          return make_radial_body<N>(Vec<N>::Zero(), std::move(fit), rep.smooth);
        }
      },
      body.rep);
}

template <int N>
ConvexBody<N> apply_projective(const ProjectiveMap<N>& map, const ConvexBody<N>& body) {
  // Consistent chart: every vertex/boundary sample must keep the sign of its
  // homogeneous denominator, otherwise part of the body crosses infinity.
  const double denom_at_interior = detail::chart_denominator(map, body.interior_point);
  if (std::abs(denom_at_interior) < 1e-14)
    throw ImageUnbounded("apply_projective: interior point maps to infinity");
  const double sign = denom_at_interior > 0.0 ? 1.0 : -1.0;
  auto check_chart = [&](const Vec<N>& x) {
    if (sign * detail::chart_denominator(map, x) < 1e-12)
      throw ImageUnbounded("apply_projective: body image is unbounded");
  };

  return std::visit(
      [&](const auto& rep) -> ConvexBody<N> {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, VPolytope<N>>) {
          std::vector<Vec<N>> verts;
          for (const auto& v : rep.vertices) {
            check_chart(v);
            verts.push_back(apply_projective(map, v));
          }
          return make_vpolytope<N>(std::move(verts), apply_projective(map, body.interior_point));
        } else if constexpr (std::is_same_v<T, HPolytope<N>>) {
          for (const auto& v : rep.vertices) check_chart(v);
          const auto inv = map.matrix.inverse();
          std::vector<Vec<N>> normals;
          std::vector<double> offsets;
          for (const auto& f : rep.facets) {
            Eigen::Matrix<double, 1, N + 1> cov;
            cov.template head<N>() = f.normal.transpose();
            cov(N) = -f.offset;
            cov = sign * cov * inv;
            normals.push_back(cov.template head<N>().transpose());
            offsets.push_back(-cov(N));
          }
          return make_hpolytope<N>(std::move(normals), std::move(offsets),
                                   apply_projective(map, body.interior_point));
        } else if constexpr (std::is_same_v<T, Ellipsoid<N>>) {
          Eigen::Matrix<double, N + 1, N + 1> q;
          q.template topLeftCorner<N, N>() = rep.shape;
          q.template topRightCorner<N, 1>() = -rep.shape * rep.center;
          q.template bottomLeftCorner<1, N>() = (-rep.shape * rep.center).transpose();
          q(N, N) = rep.center.dot(rep.shape * rep.center) - 1.0;
          const auto inv = map.matrix.inverse();
          const Eigen::Matrix<double, N + 1, N + 1> qi = inv.transpose() * q * inv;
          const Mat<N> p = qi.template topLeftCorner<N, N>();
          const Vec<N> qv = qi.template topRightCorner<N, 1>();
          const double s = qi(N, N);
          const Vec<N> new_center = -p.partialPivLu().solve(qv);
          const double scale = qv.dot(p.partialPivLu().solve(qv)) - s;
          if (!(scale > 0.0)) throw ImageUnbounded("apply_projective: ellipsoid image unbounded");
          Mat<N> new_shape = p / scale;
          Eigen::LLT<Mat<N>> llt(new_shape);
          if (llt.info() != Eigen::Success)
            throw ImageUnbounded("apply_projective: ellipsoid image unbounded");
          return make_ellipsoid<N>(new_center, new_shape);
        } else {
          // Transport boundary through the exact line preimage, then refit.
          for (const auto& b : rep.boundary_cache) check_chart(b);
          const Vec<N> new_center = apply_projective(map, Vec<N>(rep.center));
          const auto inv_map = map.inverse();
          auto image_radius = [&](const Vec<N>& u) {
            // Preimage of the ray {new_center + t u} is a line through the
            // old center; its direction comes from homogeneous algebra.
            Eigen::Matrix<double, N + 1, 1> h0, hu;
            h0.template head<N>() = new_center;
            h0(N) = 1.0;
            hu.template head<N>() = u;
            hu(N) = 0.0;
            const auto z0 = inv_map.matrix * h0;
            const auto zu = inv_map.matrix * hu;
            Vec<N> w = zu.template head<N>() * z0(N) - z0.template head<N>() * zu(N);
            w /= z0(N) * z0(N);
            // Orient w so that +w maps to the +u side.
            const Chord ch = chord(body, Vec<N>(rep.center), w);
            const Vec<N> fwd = apply_projective(map, Vec<N>(rep.center + ch.t_plus * w.normalized()));
            if ((fwd - new_center).dot(u) > 0.0) return (fwd - new_center).norm();
            const Vec<N> bwd = apply_projective(map, Vec<N>(rep.center - ch.t_minus * w.normalized()));
            return (bwd - new_center).norm();
          };
          const int order = detail::radial_fit_order(rep);
          RadialCoeffs<N> fit;
          if constexpr (N == 2) {
            fit = detail::fit_radial_2d(
                [&](double th) { return image_radius(Vec<2>(std::cos(th), std::sin(th))); }, order);
          } else {
            fit = detail::fit_radial_3d(image_radius, order);
          }
          return make_radial_body<N>(new_center, std::move(fit), rep.smooth);
        }
      },
      body.rep);
}

template <int N>
ConvexBody<N> apply_affine(const AffineMap<N>& map, const ConvexBody<N>& body) {
  return apply_projective(ProjectiveMap<N>::from_affine(map), body);
}

// ---------------------------------------------------------------------------
// Euclidean Hausdorff distance via support sampling
// ---------------------------------------------------------------------------

// For convex bodies the Hausdorff distance is sup_u |h_A(u) - h_B(u)|.
// Sampling density doubles until the polished maximum stabilizes.
template <int N>
double hausdorff_distance(const ConvexBody<N>& a, const ConvexBody<N>& b, double tol = 1e-6,
                          int initial_nodes = 0) {
  int m = initial_nodes > 0 ? initial_nodes : (N == 2 ? 4096 : 8192);
  double prev = -1.0;
  for (int round = 0; round < 4; ++round, m *= 2) {
    const auto dirs = sphere_directions<N>(m);
    double best_ab = 0.0, best_ba = 0.0;
    Vec<N> arg_ab = dirs[0], arg_ba = dirs[0];
    for (const auto& u : dirs) {
      const double d = support(a, u) - support(b, u);
      if (d > best_ab) { best_ab = d; arg_ab = u; }
      if (-d > best_ba) { best_ba = -d; arg_ba = u; }
    }
    const double width = 2.0 * kPi / m;
    best_ab = detail::polish_direction<N>(
                  [&](const Vec<N>& u) { return support(a, u) - support(b, u); }, arg_ab, best_ab, width)
                  .second;
    best_ba = detail::polish_direction<N>(
                  [&](const Vec<N>& u) { return support(b, u) - support(a, u); }, arg_ba, best_ba, width)
                  .second;
    const double val = std::max({best_ab, best_ba, 0.0});
    if (prev >= 0.0 && std::abs(val - prev) < tol) return val;
    prev = val;
  }
  return prev;
}

// Euclidean distance from a point to a convex body (0 inside).
template <int N>
double euclidean_distance_to_body(const ConvexBody<N>& body, const Arg<Vec<N>>& y) {
  if (contains(body, y)) return 0.0;
  if constexpr (N == 2) {
    if (const auto* verts = polytope_vertices(body)) {
      double best = kInf;
      const int k = static_cast<int>(verts->size());
      for (int i = 0; i < k; ++i) {
        const Vec<2>& p = (*verts)[static_cast<std::size_t>(i)];
        const Vec<2>& q = (*verts)[static_cast<std::size_t>((i + 1) % k)];
        const Vec<2> t = q - p;
        const double len2 = t.squaredNorm();
        const double s = len2 > 0.0 ? std::clamp((y - p).dot(t) / len2, 0.0, 1.0) : 0.0;
        best = std::min(best, (y - (p + s * t)).norm());
      }
      return best;
    }
  }
  // sup_u (u.y - h(u)) over unit directions, polished around the argmax.
  const int m = N == 2 ? 1024 : 4096;
  const auto dirs = sphere_directions<N>(m);
  double best = 0.0;
  Vec<N> arg = dirs[0];
  for (const auto& u : dirs) {
    const double d = u.dot(y) - support(body, u);
    if (d > best) { best = d; arg = u; }
  }
  return detail::polish_direction<N>(
             [&](const Vec<N>& u) { return u.dot(y) - support(body, u); }, arg, best, 2.0 * kPi / m)
      .second;
}

}  // namespace hilbert
