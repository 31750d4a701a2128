#pragma once

#include <hilbert/lowner.hpp>

namespace hilbert {

// A convex body equipped with its Hilbert metric and a base point. Metric
// operations work on any interior base point; the asymptotic-ball machinery
// additionally relies on the recorded normalization certificate.
template <int N>
struct HilbertGeometry {
  ConvexBody<N> body;
  Vec<N> center = Vec<N>::Zero();
  std::optional<NormalizationKind> normalization;
  double inner_radius = 0.0;
  double outer_radius = 0.0;
};

template <int N>
HilbertGeometry<N> make_geometry(const ConvexBody<N>& body) {
  return {body, body.interior_point, std::nullopt, 0.0, 0.0};
}

template <int N>
HilbertGeometry<N> make_geometry(const Normalization<N>& norm) {
  return {norm.body, Vec<N>::Zero(), norm.kind, norm.inner_radius, norm.outer_radius};
}

template <int N>
HilbertGeometry<N> lowner_geometry(const ConvexBody<N>& body) {
  return make_geometry(lowner_normalize(body));
}

template <int N>
HilbertGeometry<N> certified_geometry(const ConvexBody<N>& body) {
  return make_geometry(ball_certified_normalize(body));
}

// ---------------------------------------------------------------------------
// distance and norm
// ---------------------------------------------------------------------------

// d(p,q) = 1/2 ln([a,p,q,b]) computed in chord-time parametrization: with s
// the Euclidean gap and t+/t- the exit times, the cross ratio is
// (s + t-)/t- * t+/(t+ - s). A ratio with an infinite exit time is 1.
template <int N>
double distance(const HilbertGeometry<N>& geom, const Arg<Vec<N>>& p, const Arg<Vec<N>>& q) {
  const Vec<N> diff = q - p;
  const double s = diff.norm();
  if (s == 0.0) return 0.0;
  const Chord ch = chord(geom.body, p, diff);
  if (s >= ch.t_plus) throw PointNotInterior("distance: second point not strictly interior");
  const double r1 = std::isinf(ch.t_minus) ? 1.0 : (s + ch.t_minus) / ch.t_minus;
  const double r2 = std::isinf(ch.t_plus) ? 1.0 : ch.t_plus / (ch.t_plus - s);
  return 0.5 * std::log(r1 * r2);
}

template <int N>
double finsler_norm(const HilbertGeometry<N>& geom, const Arg<Vec<N>>& p, const Arg<Vec<N>>& v) {
  const double vnorm = v.norm();
  if (vnorm == 0.0) return 0.0;
  const Chord ch = chord(geom.body, p, v);
  const double a = std::isinf(ch.t_plus) ? 0.0 : 1.0 / ch.t_plus;
  const double b = std::isinf(ch.t_minus) ? 0.0 : 1.0 / ch.t_minus;
  return 0.5 * (a + b) * vnorm;
}

// ---------------------------------------------------------------------------
// metric spheres in chord-time coordinates
// ---------------------------------------------------------------------------

// Euclidean radius s with d(o, o + s u) = rho, together with cancellation-free
// companions. Everything is derived from
//   s = t+ t- (e^{2 rho} - 1) / (t- e^{2 rho} + t+),
// algebra that stays stable arbitrarily close to the boundary.
struct RadialExtent {
  double s = 0.0;
  double ds_drho = 0.0;
  double t_plus_minus_s = 0.0;  // t+ - s
  double s_plus_t_minus = 0.0;  // s + t-
};

inline RadialExtent radial_extent_pieces(const Chord& ch, double rho) {
  const double tp = ch.t_plus, tm = ch.t_minus;
  RadialExtent out;
  if (rho <= 0.0) {
    out.s = 0.0;
    out.t_plus_minus_s = tp;
    out.s_plus_t_minus = tm;
    out.ds_drho = 2.0 / (1.0 / tp + 1.0 / tm);  // harmonic form tolerates t = inf
    return out;
  }
  if (std::isinf(tp) && std::isinf(tm)) throw DegenerateBody("radial extent on a full line");
  if (rho < 250.0) {
    const double e = std::exp(2.0 * rho);
    if (std::isinf(tm)) {
      out.s = tp * (-std::expm1(-2.0 * rho));
      out.t_plus_minus_s = tp * std::exp(-2.0 * rho);
      out.s_plus_t_minus = kInf;
      out.ds_drho = 2.0 * tp * std::exp(-2.0 * rho);
      return out;
    }
    if (std::isinf(tp)) {
      out.s = tm * std::expm1(2.0 * rho);
      out.t_plus_minus_s = kInf;
      out.s_plus_t_minus = tm * e;
      out.ds_drho = 2.0 * tm * e;
      return out;
    }
    const double den = tm * e + tp;
    out.s = tp * tm * std::expm1(2.0 * rho) / den;
    out.t_plus_minus_s = tp * (tp + tm) / den;
    out.s_plus_t_minus = tm * e * (tp + tm) / den;
    out.ds_drho = 2.0 * e * tp * tm * (tp + tm) / (den * den);
  } else {
    // e^{2 rho} dominates every finite exit time.
    const double einv = std::exp(-2.0 * rho);
    out.s = tp;
    out.t_plus_minus_s = einv * tp * (tp + tm) / tm;
    out.s_plus_t_minus = tp + tm;
    out.ds_drho = 2.0 * einv * tp * (tp + tm) / tm;
  }
  return out;
}

// s such that distance(o, o + s u) = r; metric balls are star shaped with an
// exactly computable radial boundary.
template <int N>
double ball_radial_extent(const HilbertGeometry<N>& geom, const Arg<Vec<N>>& o, const Arg<Vec<N>>& u, double r) {
  if (r < 0.0) throw NegativeRadius("ball_radial_extent: negative radius");
  const Chord ch = chord(geom.body, o, u);
  return radial_extent_pieces(ch, r).s;
}

template <int N>
Vec<N> sphere_point(const HilbertGeometry<N>& geom, const Arg<Vec<N>>& o, const Arg<Vec<N>>& u, double r) {
  return o + ball_radial_extent(geom, o, u, r) * u;
}

// ---------------------------------------------------------------------------
// asymptotic balls
// ---------------------------------------------------------------------------

// Image of the body under the dilation of ratio tanh R about the base point.
// R = 0 degenerates to the single point o and is flagged, not materialized.
template <int N>
struct AsymptoticBall {
  bool degenerate = false;
  Vec<N> center = Vec<N>::Zero();
  std::optional<ConvexBody<N>> body;
};

template <int N>
AsymptoticBall<N> asymptotic_ball(const HilbertGeometry<N>& geom, double radius) {
  if (radius < 0.0) throw NegativeRadius("asymptotic_ball: negative radius");
  AsymptoticBall<N> out;
  out.center = geom.center;
  if (radius == 0.0) {
    out.degenerate = true;
    return out;
  }
  out.body = dilate(geom.body, geom.center, std::tanh(radius));
  return out;
}

// ---------------------------------------------------------------------------
// metric projection onto a hyperplane
// ---------------------------------------------------------------------------

template <int N>
struct Hyperplane {
  Vec<N> normal;  // unit
  double offset;  // normal . x = offset

  static Hyperplane through(const Arg<Vec<N>>& point, const Arg<Vec<N>>& normal) {
    const Vec<N> n = normal.normalized();
    return {n, n.dot(point)};
  }
};

template <int N>
struct ProjectionResult {
  Vec<N> foot = Vec<N>::Zero();
  double dist = 0.0;
  bool unique = true;
  // 2D strictly convex: residual of the concurrency of the two supporting
  // lines with the target hyperplane.
  std::optional<double> concurrency_residual;
};

namespace detail {

template <typename F>
double golden_section(F&& f, double lo, double hi, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// Outward boundary gradient for smooth bodies.
template <int N>
std::optional<Vec<N>> boundary_gradient(const ConvexBody<N>& body, const Arg<Vec<N>>& x) {
  if (const auto* ell = std::get_if<Ellipsoid<N>>(&body.rep)) {
    return Vec<N>(2.0 * ell->shape * (x - ell->center));
  }
  if (const auto* rad = std::get_if<RadialBody<N>>(&body.rep)) {
    if (!rad->smooth) return std::nullopt;
    const Vec<N> y = x - rad->center;
    return Vec<N>(y.normalized() - rad->radial.gradient(y));
  }
  return std::nullopt;
}

}  // namespace detail

// Nearest point of H inside the body for the Hilbert distance, located by
// golden-section search over the trace of H. Non-uniqueness (flat spheres in
// non strictly convex bodies) is flagged via a flatness probe.
template <int N>
ProjectionResult<N> metric_projection(const HilbertGeometry<N>& geom, const Arg<Vec<N>>& p,
                                      const Hyperplane<N>& plane) {
  const Vec<N> anchor = plane.offset * plane.normal;

  ProjectionResult<N> out;
  if constexpr (N == 2) {
    const Vec<2> tangent(-plane.normal.y(), plane.normal.x());
    auto interval = line_interval(geom.body, anchor, tangent);
    if (!interval) throw HyperplaneMissesBody("metric_projection: hyperplane misses the body");
    const double pad = std::max(kBoundaryTol, 1e-12 * (interval->second - interval->first));
    const double lo = interval->first + pad, hi = interval->second - pad;
    if (!(lo < hi)) throw HyperplaneMissesBody("metric_projection: hyperplane trace is degenerate");
    auto f = [&](double t) { return distance(geom, p, Vec<2>(anchor + t * tangent)); };
    const double t_best = detail::golden_section(f, lo, hi, 1e-8 * (hi - lo));
    out.foot = anchor + t_best * tangent;
    out.dist = f(t_best);
    const double probe = 1e-4 * (hi - lo);
    if (t_best - probe > lo && t_best + probe < hi) {
      const double spread = std::max(f(t_best - probe), f(t_best + probe)) - out.dist;
      out.unique = spread > 1e-10;
    }
    // Concurrency certificate: supporting lines at the chord ends of (p,foot)
    // and the hyperplane should share a point.
    const Vec<2> dir = out.foot - p;
    if (dir.norm() > 1e-12) {
      const Chord ch = chord(geom.body, p, dir);
      const Vec<2> u = dir.normalized();
      const Vec<2> x_fwd = p + ch.t_plus * u;
      const Vec<2> x_bwd = p - ch.t_minus * u;
      const auto g1 = detail::boundary_gradient(geom.body, x_fwd);
      const auto g2 = detail::boundary_gradient(geom.body, x_bwd);
      if (g1 && g2) {
        Mat<2> a;
        a.row(0) = g1->transpose();
        a.row(1) = g2->transpose();
        const Vec<2> rhs(g1->dot(x_fwd), g2->dot(x_bwd));
        if (std::abs(a.determinant()) > 1e-10 * g1->norm() * g2->norm()) {
          const Vec<2> meet = a.inverse() * rhs;
          out.concurrency_residual = std::abs(plane.normal.dot(meet) - plane.offset);
        }
      }
    }
  } else {
    // Two-parameter trace: cyclic golden-section along orthogonal directions.
    const Vec<3> w1 = plane.normal.unitOrthogonal();
    const Vec<3> w2 = plane.normal.cross(w1);
    Vec<3> cur = anchor;
    if (!contains(geom.body, cur)) {
      bool found = false;
      const double reach = euclidean_diameter_bound(geom.body);
      for (int i = 0; i < 64 && !found; ++i) {
        for (int j = 0; j < 64 && !found; ++j) {
          const Vec<3> cand = anchor + reach * ((i - 31.5) / 32.0) * w1 + reach * ((j - 31.5) / 32.0) * w2;
          if (contains(geom.body, cand, -1e-9)) {
            cur = cand;
            found = true;
          }
        }
      }
      if (!found) throw HyperplaneMissesBody("metric_projection: hyperplane misses the body");
    }
    double prev = kInf;
    for (int round = 0; round < 60; ++round) {
      for (const Vec<3>& w : {w1, w2}) {
        auto interval = line_interval(geom.body, cur, w);
        if (!interval) continue;
        const double pad = std::max(kBoundaryTol, 1e-12 * (interval->second - interval->first));
        auto f = [&](double t) { return distance(geom, p, Vec<3>(cur + t * w)); };
        const double t = detail::golden_section(f, interval->first + pad, interval->second - pad,
                                                1e-9 * (interval->second - interval->first));
        cur += t * w;
      }
      const double d = distance(geom, p, cur);
      if (std::abs(prev - d) < 1e-11) break;
      prev = d;
    }
    out.foot = cur;
    out.dist = distance(geom, p, cur);
  }
  return out;
}

// ---------------------------------------------------------------------------
// chord-segment lower bound
// ---------------------------------------------------------------------------

struct ChordSegmentConfig {
  double bc;  // length of the boundary segment bc
  double BC;  // its image under the dilation centred at q sending p' to p
  double s;   // ratio bp'/bc in (0,1)
  double R;   // dilation parameter, 0 < tanh R < 1
};

// Lower bound for the distance between the dilated tangency points: the sum
// of the two half-log terms driven by u = (bc/BC) tanh R/(1 - tanh R).
inline double chord_segment_lower_bound(const ChordSegmentConfig& cfg) {
  if (!(cfg.s > 0.0 && cfg.s < 1.0)) throw ParameterOutOfRange("chord_segment_lower_bound: s in (0,1)");
  if (!(cfg.bc > 0.0 && cfg.BC > 0.0)) throw ParameterOutOfRange("chord_segment_lower_bound: lengths positive");
  const double t = std::tanh(cfg.R);
  if (!(t > 0.0 && t < 1.0)) throw ParameterOutOfRange("chord_segment_lower_bound: tanh R in (0,1)");
  const double one_minus_t = 2.0 / (std::exp(2.0 * cfg.R) + 1.0);
  const double u = cfg.bc / cfg.BC * t / one_minus_t;
  return 0.5 * std::log1p(u / cfg.s) + 0.5 * std::log1p(u / (1.0 - cfg.s));
}

}  // namespace hilbert
