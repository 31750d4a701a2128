#pragma once

#include <hilbert/transforms.hpp>

namespace hilbert {

template <int N>
struct MveeResult {
  Vec<N> center;
  Mat<N> shape;  // (x-c)^T shape (x-c) <= 1 contains the points
};

// Khachiyan barycentric ascent with away steps. The optimality gap on the
// lifted leverage scores bounds the relative volume gap, so tol = 1e-8 is
// comfortably inside the 1e-7 volume tolerance.
template <int N>
MveeResult<N> minimum_volume_ellipsoid(std::span<const Vec<N>> pts, double tol = 1e-8,
                                       int max_iter = 100000) {
  constexpr int D = N + 1;
  const int m = static_cast<int>(pts.size());
  if (m < D) throw DegenerateBody("mvee: too few points");

  std::vector<Eigen::Matrix<double, D, 1>> z(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    z[static_cast<std::size_t>(i)].template head<N>() = pts[static_cast<std::size_t>(i)];
    z[static_cast<std::size_t>(i)](N) = 1.0;
  }
  std::vector<double> u(static_cast<std::size_t>(m), 1.0 / m);

  Eigen::Matrix<double, D, D> moment;
  Eigen::Matrix<double, D, D> moment_inv;
  auto refresh = [&] {
    moment.setZero();
    for (int i = 0; i < m; ++i)
      moment += u[static_cast<std::size_t>(i)] * z[static_cast<std::size_t>(i)] *
                z[static_cast<std::size_t>(i)].transpose();
    moment_inv = moment.inverse();
  };
  refresh();

  for (int iter = 0; iter < max_iter; ++iter) {
    int arg_max = 0, arg_min = -1;
    double g_max = -kInf, g_min = kInf;
    for (int i = 0; i < m; ++i) {
      const double g = z[static_cast<std::size_t>(i)].dot(moment_inv * z[static_cast<std::size_t>(i)]);
      if (g > g_max) { g_max = g; arg_max = i; }
      if (u[static_cast<std::size_t>(i)] > 1e-12 && g < g_min) { g_min = g; arg_min = i; }
    }
    const bool add_better = (g_max - D) >= (D - g_min);
    if (g_max <= D * (1.0 + tol) && (arg_min < 0 || g_min >= D * (1.0 - tol))) break;

    int idx;
    double lambda;
    if (add_better || arg_min < 0) {
      idx = arg_max;
      lambda = (g_max - D) / (D * (g_max - 1.0));
    } else {
      idx = arg_min;
      lambda = (g_min - D) / (D * (g_min - 1.0));  // negative: away step
      const double cap = -u[static_cast<std::size_t>(idx)] / (1.0 - u[static_cast<std::size_t>(idx)]);
      lambda = std::max(lambda, cap);
    }
    if (lambda == 0.0) break;
    for (auto& w : u) w *= (1.0 - lambda);
    u[static_cast<std::size_t>(idx)] += lambda;
    refresh();
  }

  Vec<N> center = Vec<N>::Zero();
  for (int i = 0; i < m; ++i) center += u[static_cast<std::size_t>(i)] * pts[static_cast<std::size_t>(i)];
  Mat<N> second = Mat<N>::Zero();
  for (int i = 0; i < m; ++i)
    second += u[static_cast<std::size_t>(i)] * pts[static_cast<std::size_t>(i)] *
              pts[static_cast<std::size_t>(i)].transpose();
  const Mat<N> cov = second - center * center.transpose();
  MveeResult<N> out;
  out.center = center;
  out.shape = cov.inverse() / N;
  return out;
}

enum class NormalizationKind { Lowner, BallCertificate };

// Normalized copy of a body together with the affine map that produced it and
// the certified inner/outer ball radii about the origin.
template <int N>
struct Normalization {
  ConvexBody<N> body;
  AffineMap<N> map;
  NormalizationKind kind = NormalizationKind::Lowner;
  double inner_radius = 0.0;
  double outer_radius = 1.0;
  double outer_violation = 0.0;  // a-posteriori certificate slack
  double inner_violation = 0.0;
};

namespace detail {

template <int N>
Mat<N> sqrt_spd(const Mat<N>& a) {
  Eigen::SelfAdjointEigenSolver<Mat<N>> eig(a);
  return eig.eigenvectors() * eig.eigenvalues().cwiseSqrt().asDiagonal() *
         eig.eigenvectors().transpose();
}

template <int N>
void certify_normalization(Normalization<N>& norm, double required_inner) {
  const int m = N == 2 ? 2048 : 4096;
  const auto dirs = sphere_directions<N>(m);
  double max_out = 0.0, min_in = kInf;
  for (const auto& u : dirs) {
    const Chord ch = chord(norm.body, Vec<N>::Zero(), u);
    max_out = std::max(max_out, ch.t_plus);
    min_in = std::min(min_in, ch.t_plus);
  }
  if (const auto* verts = polytope_vertices(norm.body)) {
    max_out = 0.0;
    for (const auto& v : *verts) max_out = std::max(max_out, v.norm());
  }
  norm.outer_violation = std::max(0.0, max_out - norm.outer_radius);
  norm.inner_violation = std::max(0.0, required_inner - min_in);
  if (norm.outer_violation > 1e-3 || norm.inner_violation > 1e-3)
    throw DegenerateBody("normalization certificate failed");
}

}  // namespace detail

// Affine image whose Lowner ellipsoid is the unit ball at the origin, with
// the John inclusion (1/n) ball inside the image verified a posteriori.
template <int N>
Normalization<N> lowner_normalize(const ConvexBody<N>& body) {
  Normalization<N> norm;
  norm.kind = NormalizationKind::Lowner;
  norm.inner_radius = 1.0 / N;
  norm.outer_radius = 1.0;

  MveeResult<N> mvee;
  if (const auto* ell = std::get_if<Ellipsoid<N>>(&body.rep)) {
    mvee.center = ell->center;  // an ellipsoid is its own Lowner ellipsoid
    mvee.shape = ell->shape;
  } else if (const auto* verts = polytope_vertices(body)) {
    mvee = minimum_volume_ellipsoid<N>(*verts);
  } else {
    const auto* rad = std::get_if<RadialBody<N>>(&body.rep);
    mvee = minimum_volume_ellipsoid<N>(rad->boundary_cache);
  }

  norm.map.linear = detail::sqrt_spd<N>(mvee.shape);
  norm.map.offset = -norm.map.linear * mvee.center;
  norm.body = apply_affine(norm.map, body);
  detail::certify_normalization(norm, 1.0 / N);
  return norm;
}

// Remark-3.3 style normalization: similarity onto the unit ball about the
// interior point, certified to contain the 1/(2n) ball. Exact for every
// representation (no refit); falls back to the Lowner map when the body is
// too eccentric about its interior point.
template <int N>
Normalization<N> ball_certified_normalize(const ConvexBody<N>& body) {
  const Vec<N> o = body.interior_point;
  const int m = N == 2 ? 2048 : 4096;
  double r_max = 0.0, r_min = kInf;
  for (const auto& u : sphere_directions<N>(m)) {
    const Chord ch = chord(body, o, u);
    r_max = std::max(r_max, ch.t_plus);
    r_min = std::min(r_min, ch.t_plus);
  }
  if (r_min / r_max < 1.0 / (2.0 * N) + 1e-9) return lowner_normalize(body);

  Normalization<N> norm;
  norm.kind = NormalizationKind::BallCertificate;
  norm.inner_radius = 1.0 / (2.0 * N);
  norm.outer_radius = 1.0;
  norm.map.linear = Mat<N>::Identity() / r_max;
  norm.map.offset = -o / r_max;
  norm.body = apply_affine(norm.map, body);
  detail::certify_normalization(norm, 1.0 / (2.0 * N));
  return norm;
}

}  // namespace hilbert
