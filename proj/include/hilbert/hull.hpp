#pragma once

#include <hilbert/base.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <utility>

namespace hilbert {

// Andrew monotone chain, CCW output. Collinear points are dropped so the
// result carries strict extreme points only.
inline std::vector<int> hull2d_indices(std::span<const Vec<2>> pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    const auto &a = pts[static_cast<std::size_t>(i)], &b = pts[static_cast<std::size_t>(j)];
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  order.erase(std::unique(order.begin(), order.end(),
                          [&](int i, int j) {
                            return (pts[static_cast<std::size_t>(i)] - pts[static_cast<std::size_t>(j)]).norm() == 0.0;
                          }),
              order.end());
  const int m = static_cast<int>(order.size());
  if (m < 3) return order;

  auto turns_right = [&](int i, int j, int k) {
    const Vec<2> u = pts[static_cast<std::size_t>(j)] - pts[static_cast<std::size_t>(i)];
    const Vec<2> v = pts[static_cast<std::size_t>(k)] - pts[static_cast<std::size_t>(i)];
    const double cross = u.x() * v.y() - u.y() * v.x();
    return cross <= 1e-12 * u.norm() * v.norm();
  };

  std::vector<int> hull(static_cast<std::size_t>(2 * m));
  int k = 0;
  for (int ii = 0; ii < m; ++ii) {
    const int i = order[static_cast<std::size_t>(ii)];
    while (k >= 2 && turns_right(hull[static_cast<std::size_t>(k - 2)], hull[static_cast<std::size_t>(k - 1)], i)) --k;
    hull[static_cast<std::size_t>(k++)] = i;
  }
  for (int ii = m - 2, lower = k + 1; ii >= 0; --ii) {
    const int i = order[static_cast<std::size_t>(ii)];
    while (k >= lower && turns_right(hull[static_cast<std::size_t>(k - 2)], hull[static_cast<std::size_t>(k - 1)], i)) --k;
    hull[static_cast<std::size_t>(k++)] = i;
  }
  hull.resize(static_cast<std::size_t>(k - 1));
  return hull;
}

inline std::vector<Vec<2>> hull2d(std::span<const Vec<2>> pts) {
  std::vector<Vec<2>> out;
  for (int i : hull2d_indices(pts)) out.push_back(pts[static_cast<std::size_t>(i)]);
  return out;
}

inline double polygon_area(std::span<const Vec<2>> poly) {
  double twice = 0.0;
  const int n = static_cast<int>(poly.size());
  for (int i = 0; i < n; ++i) {
    const auto& a = poly[static_cast<std::size_t>(i)];
    const auto& b = poly[static_cast<std::size_t>((i + 1) % n)];
    twice += a.x() * b.y() - a.y() * b.x();
  }
  return 0.5 * std::abs(twice);
}

struct Hull3 {
  std::vector<std::array<int, 3>> faces;  // outward-oriented triangles
  std::vector<int> vertices;              // ids of points on the hull
};

// Incremental 3D hull. Points are inserted in index order; points inside or
// on the current hull (within a relative tolerance) are skipped, so the
// vertex list carries strict extreme points.
inline Hull3 hull3d(std::span<const Vec<3>> pts) {
  const int n = static_cast<int>(pts.size());
  if (n < 4) throw DegenerateBody("hull3d: need at least 4 points");

  double scale = 0.0;
  for (const auto& p : pts) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  if (scale == 0.0) scale = 1.0;
  const double eps = 1e-12 * scale;

  // Seed tetrahedron with a spread-out quadruple.
  int i0 = 0;
  for (int i = 1; i < n; ++i) {
    const auto &a = pts[static_cast<std::size_t>(i)], &b = pts[static_cast<std::size_t>(i0)];
    if (std::lexicographical_compare(a.data(), a.data() + 3, b.data(), b.data() + 3)) i0 = i;
  }
  int i1 = -1;
  double best = eps;
  for (int i = 0; i < n; ++i) {
    const double d = (pts[static_cast<std::size_t>(i)] - pts[static_cast<std::size_t>(i0)]).norm();
    if (d > best) { best = d; i1 = i; }
  }
  if (i1 < 0) throw DegenerateBody("hull3d: all points coincide");
  int i2 = -1;
  best = eps * (pts[static_cast<std::size_t>(i1)] - pts[static_cast<std::size_t>(i0)]).norm();
  for (int i = 0; i < n; ++i) {
    const double d = (pts[static_cast<std::size_t>(i)] - pts[static_cast<std::size_t>(i0)])
                         .cross(pts[static_cast<std::size_t>(i1)] - pts[static_cast<std::size_t>(i0)])
                         .norm();
    if (d > best) { best = d; i2 = i; }
  }
  if (i2 < 0) throw DegenerateBody("hull3d: points are collinear");
  const Vec<3> plane_n = (pts[static_cast<std::size_t>(i1)] - pts[static_cast<std::size_t>(i0)])
                             .cross(pts[static_cast<std::size_t>(i2)] - pts[static_cast<std::size_t>(i0)]);
  int i3 = -1;
  best = eps * plane_n.norm();
  for (int i = 0; i < n; ++i) {
    const double d = std::abs(plane_n.dot(pts[static_cast<std::size_t>(i)] - pts[static_cast<std::size_t>(i0)]));
    if (d > best) { best = d; i3 = i; }
  }
  if (i3 < 0) throw DegenerateBody("hull3d: points are coplanar");

  struct Face {
    std::array<int, 3> v;
    Vec<3> normal;  // not normalized
    double offset;
    bool alive = true;
  };
  std::vector<Face> faces;
  const Vec<3> centroid = 0.25 * (pts[static_cast<std::size_t>(i0)] + pts[static_cast<std::size_t>(i1)] +
                                  pts[static_cast<std::size_t>(i2)] + pts[static_cast<std::size_t>(i3)]);
  auto add_face = [&](int a, int b, int c) {
    Face f;
    f.v = {a, b, c};
    f.normal = (pts[static_cast<std::size_t>(b)] - pts[static_cast<std::size_t>(a)])
                   .cross(pts[static_cast<std::size_t>(c)] - pts[static_cast<std::size_t>(a)]);
    f.offset = f.normal.dot(pts[static_cast<std::size_t>(a)]);
    if (f.normal.dot(centroid) > f.offset) {
      std::swap(f.v[1], f.v[2]);
      f.normal = -f.normal;
      f.offset = -f.offset;
    }
    faces.push_back(f);
  };
  add_face(i0, i1, i2);
  add_face(i0, i1, i3);
  add_face(i0, i2, i3);
  add_face(i1, i2, i3);

  std::vector<int> horizon_tail;  // edge (a,b) list built per insertion
  for (int p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    const Vec<3>& x = pts[static_cast<std::size_t>(p)];
    bool any_visible = false;
    for (auto& f : faces) {
      if (!f.alive) continue;
      if (f.normal.dot(x) - f.offset > eps * f.normal.norm()) {
        f.alive = false;
        any_visible = true;
      }
    }
    if (!any_visible) continue;

    // Horizon: edges shared by exactly one just-killed face orientation.
    std::map<std::pair<int, int>, int> edge_use;
    std::vector<Face> kept;
    kept.reserve(faces.size());
    for (auto& f : faces) {
      if (f.alive) {
        kept.push_back(f);
        continue;
      }
      for (int e = 0; e < 3; ++e) {
        const int a = f.v[static_cast<std::size_t>(e)];
        const int b = f.v[static_cast<std::size_t>((e + 1) % 3)];
        auto it = edge_use.find({b, a});
        if (it != edge_use.end()) {
          edge_use.erase(it);
        } else {
          edge_use[{a, b}] = 1;
        }
      }
    }
    faces = std::move(kept);
    for (const auto& [edge, one] : edge_use) {
      (void)one;
      add_face(edge.first, edge.second, p);
    }
  }

  Hull3 out;
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  for (const auto& f : faces) {
    if (!f.alive) continue;
    out.faces.push_back(f.v);
    for (int v : f.v) used[static_cast<std::size_t>(v)] = 1;
  }
  for (int i = 0; i < n; ++i)
    if (used[static_cast<std::size_t>(i)]) out.vertices.push_back(i);
  return out;
}

inline double hull3d_volume(std::span<const Vec<3>> pts, const Hull3& hull) {
  Vec<3> c = Vec<3>::Zero();
  for (int v : hull.vertices) c += pts[static_cast<std::size_t>(v)];
  c /= static_cast<double>(hull.vertices.size());
  double vol = 0.0;
  for (const auto& f : hull.faces) {
    const Vec<3> a = pts[static_cast<std::size_t>(f[0])] - c;
    const Vec<3> b = pts[static_cast<std::size_t>(f[1])] - c;
    const Vec<3> d = pts[static_cast<std::size_t>(f[2])] - c;
    vol += a.cross(b).dot(d);
  }
  return std::abs(vol) / 6.0;
}

// Hull of a severely anisotropic point cloud: PCA-align, then rescale axes to
// comparable size before hulling. Unit Finsler balls near the boundary are
// slabs with aspect ratios far beyond double precision, which defeats a
// single absolute tolerance. Two passes catch nested scale separation.
template <int N>
struct ScaledCloud {
  std::vector<Vec<N>> scaled;
  Vec<N> centroid = Vec<N>::Zero();
  Mat<N> transform = Mat<N>::Identity();  // scaled = transform * (p - centroid)
  double volume_factor = 1.0;             // 1 / |det transform|

  explicit ScaledCloud(std::span<const Vec<N>> pts) {
    for (const auto& p : pts) centroid += p;
    centroid /= static_cast<double>(pts.size());
    scaled.reserve(pts.size());
    for (const auto& p : pts) scaled.push_back(p - centroid);

    for (int pass = 0; pass < 2; ++pass) {
      Mat<N> cov = Mat<N>::Zero();
      for (const auto& q : scaled) cov += q * q.transpose();
      Eigen::SelfAdjointEigenSolver<Mat<N>> eig(cov);
      const Mat<N> rot = eig.eigenvectors().transpose();
      Vec<N> axis_scale = Vec<N>::Zero();
      for (auto& q : scaled) {
        q = rot * q;
        axis_scale = axis_scale.cwiseMax(q.cwiseAbs());
      }
      for (int a = 0; a < N; ++a)
        if (axis_scale[a] <= 0.0) axis_scale[a] = 1.0;
      for (auto& q : scaled) q = q.cwiseQuotient(axis_scale);
      transform = axis_scale.cwiseInverse().asDiagonal() * rot * transform;
      for (int a = 0; a < N; ++a) volume_factor *= axis_scale[a];
    }
  }

  Vec<N> unscale(const Vec<N>& q) const { return centroid + transform.inverse() * q; }
};

inline double convex_volume_3d(std::span<const Vec<3>> pts) {
  ScaledCloud<3> cloud(pts);
  const Hull3 hull = hull3d(cloud.scaled);
  return hull3d_volume(cloud.scaled, hull) * cloud.volume_factor;
}

inline double convex_area_2d(std::span<const Vec<2>> pts) {
  ScaledCloud<2> cloud(pts);
  const auto hull = hull2d(cloud.scaled);
  return polygon_area(hull) * cloud.volume_factor;
}

}  // namespace hilbert
