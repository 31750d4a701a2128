#pragma once

#include <hilbert/base.hpp>

namespace hilbert {

// Homogeneous polynomial in up to three variables, stored as monomials.
// Radial bodies express their boundary as c0 + sum of coeff * P(y)/|y|^deg,
// which is homogeneous of degree zero and differentiable away from 0.
namespace detail {
inline double ipow(double x, int e) {
  double r = 1.0;
  for (; e > 0; --e) r *= x;
  return r;
}
}  // namespace detail

struct HomogPoly {
  struct Monomial {
    int ex, ey, ez;
    double c;
  };
  int degree = 0;
  std::vector<Monomial> terms;

  double value(double x, double y, double z) const {
    double s = 0.0;
    for (const auto& m : terms)
      s += m.c * detail::ipow(x, m.ex) * detail::ipow(y, m.ey) * detail::ipow(z, m.ez);
    return s;
  }

  Vec<3> gradient(double x, double y, double z) const {
    using detail::ipow;
    Vec<3> g = Vec<3>::Zero();
    for (const auto& m : terms) {
      if (m.ex > 0) g.x() += m.c * m.ex * ipow(x, m.ex - 1) * ipow(y, m.ey) * ipow(z, m.ez);
      if (m.ey > 0) g.y() += m.c * m.ey * ipow(x, m.ex) * ipow(y, m.ey - 1) * ipow(z, m.ez);
      if (m.ez > 0) g.z() += m.c * m.ez * ipow(x, m.ex) * ipow(y, m.ey) * ipow(z, m.ez - 1);
    }
    return g;
  }

  Mat<3> hessian(double x, double y, double z) const {
    Mat<3> h = Mat<3>::Zero();
    auto p = [](double v, int e) { return e >= 0 ? detail::ipow(v, e) : 0.0; };
    for (const auto& m : terms) {
      if (m.ex > 1) h(0, 0) += m.c * m.ex * (m.ex - 1) * p(x, m.ex - 2) * p(y, m.ey) * p(z, m.ez);
      if (m.ey > 1) h(1, 1) += m.c * m.ey * (m.ey - 1) * p(x, m.ex) * p(y, m.ey - 2) * p(z, m.ez);
      if (m.ez > 1) h(2, 2) += m.c * m.ez * (m.ez - 1) * p(x, m.ex) * p(y, m.ey) * p(z, m.ez - 2);
      if (m.ex > 0 && m.ey > 0) {
        const double v = m.c * m.ex * m.ey * p(x, m.ex - 1) * p(y, m.ey - 1) * p(z, m.ez);
        h(0, 1) += v;
        h(1, 0) += v;
      }
      if (m.ex > 0 && m.ez > 0) {
        const double v = m.c * m.ex * m.ez * p(x, m.ex - 1) * p(y, m.ey) * p(z, m.ez - 1);
        h(0, 2) += v;
        h(2, 0) += v;
      }
      if (m.ey > 0 && m.ez > 0) {
        const double v = m.c * m.ey * m.ez * p(x, m.ex) * p(y, m.ey - 1) * p(z, m.ez - 1);
        h(1, 2) += v;
        h(2, 1) += v;
      }
    }
    return h;
  }
};

// cos(k theta) and sin(k theta) on the unit circle as Re/Im of (x+iy)^k.
inline HomogPoly circular_harmonic(int k, bool sine) {
  HomogPoly p;
  p.degree = k;
  double binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    // i^j cycles through 1, i, -1, -i.
    const bool is_imag = (j % 2) == 1;
    const double sign = (j % 4 < 2) ? 1.0 : -1.0;
    if (is_imag == sine) p.terms.push_back({k - j, j, 0, sign * binom});
    binom = binom * (k - j) / (j + 1);
  }
  return p;
}

// Orthonormal real spherical harmonics up to degree 4 as homogeneous
// polynomials (divide by |y|^l to evaluate off the unit sphere). Constants
// are pinned by the orthonormality test in the suite.
inline HomogPoly real_spherical_harmonic(int l, int m) {
  auto P = [l](std::initializer_list<HomogPoly::Monomial> ms) {
    HomogPoly p;
    p.degree = l;
    p.terms = ms;
    return p;
  };
  const double inv_pi = 1.0 / kPi;
  switch (l * 10 + (m + l)) {  // compact key: l, m+l
    case 0: return P({{0, 0, 0, 0.5 * std::sqrt(inv_pi)}});
    case 10: return P({{0, 1, 0, std::sqrt(0.75 * inv_pi)}});
    case 11: return P({{0, 0, 1, std::sqrt(0.75 * inv_pi)}});
    case 12: return P({{1, 0, 0, std::sqrt(0.75 * inv_pi)}});
    case 20: return P({{1, 1, 0, 0.5 * std::sqrt(15.0 * inv_pi)}});
    case 21: return P({{0, 1, 1, 0.5 * std::sqrt(15.0 * inv_pi)}});
    case 22: {
      const double c = 0.25 * std::sqrt(5.0 * inv_pi);
      return P({{0, 0, 2, 2 * c}, {2, 0, 0, -c}, {0, 2, 0, -c}});
    }
    case 23: return P({{1, 0, 1, 0.5 * std::sqrt(15.0 * inv_pi)}});
    case 24: {
      const double c = 0.25 * std::sqrt(15.0 * inv_pi);
      return P({{2, 0, 0, c}, {0, 2, 0, -c}});
    }
    case 30: {
      const double c = 0.25 * std::sqrt(17.5 * inv_pi);
      return P({{2, 1, 0, 3 * c}, {0, 3, 0, -c}});
    }
    case 31: return P({{1, 1, 1, 0.5 * std::sqrt(105.0 * inv_pi)}});
    case 32: {
      const double c = 0.25 * std::sqrt(10.5 * inv_pi);
      return P({{0, 1, 2, 4 * c}, {2, 1, 0, -c}, {0, 3, 0, -c}});
    }
    case 33: {
      const double c = 0.25 * std::sqrt(7.0 * inv_pi);
      return P({{0, 0, 3, 2 * c}, {2, 0, 1, -3 * c}, {0, 2, 1, -3 * c}});
    }
    case 34: {
      const double c = 0.25 * std::sqrt(10.5 * inv_pi);
      return P({{1, 0, 2, 4 * c}, {3, 0, 0, -c}, {1, 2, 0, -c}});
    }
    case 35: {
      const double c = 0.25 * std::sqrt(105.0 * inv_pi);
      return P({{2, 0, 1, c}, {0, 2, 1, -c}});
    }
    case 36: {
      const double c = 0.25 * std::sqrt(17.5 * inv_pi);
      return P({{3, 0, 0, c}, {1, 2, 0, -3 * c}});
    }
    case 40: {
      const double c = 0.75 * std::sqrt(35.0 * inv_pi);
      return P({{3, 1, 0, c}, {1, 3, 0, -c}});
    }
    case 41: {
      const double c = 0.75 * std::sqrt(17.5 * inv_pi);
      return P({{2, 1, 1, 3 * c}, {0, 3, 1, -c}});
    }
    case 42: {
      const double c = 0.75 * std::sqrt(5.0 * inv_pi);
      // xy(7z^2 - r^2) = xy(6z^2 - x^2 - y^2)
      return P({{1, 1, 2, 6 * c}, {3, 1, 0, -c}, {1, 3, 0, -c}});
    }
    case 43: {
      const double c = 0.75 * std::sqrt(2.5 * inv_pi);
      return P({{0, 1, 3, 4 * c}, {2, 1, 1, -3 * c}, {0, 3, 1, -3 * c}});
    }
    case 44: {
      const double c = 3.0 / 16.0 * std::sqrt(inv_pi);
      return P({{0, 0, 4, 8 * c}, {4, 0, 0, 3 * c}, {0, 4, 0, 3 * c},
                {2, 2, 0, 6 * c}, {2, 0, 2, -24 * c}, {0, 2, 2, -24 * c}});
    }
    case 45: {
      const double c = 0.75 * std::sqrt(2.5 * inv_pi);
      return P({{1, 0, 3, 4 * c}, {3, 0, 1, -3 * c}, {1, 2, 1, -3 * c}});
    }
    case 46: {
      const double c = 0.75 * std::sqrt(5.0 * inv_pi) / 2.0;
      return P({{2, 0, 2, 6 * c}, {0, 2, 2, -6 * c}, {4, 0, 0, -c}, {0, 4, 0, c}});
    }
    case 47: {
      const double c = 0.75 * std::sqrt(17.5 * inv_pi);
      return P({{3, 0, 1, c}, {1, 2, 1, -3 * c}});
    }
    case 48: {
      const double c = 3.0 / 16.0 * std::sqrt(35.0 * inv_pi);
      return P({{4, 0, 0, c}, {0, 4, 0, c}, {2, 2, 0, -6 * c}});
    }
    default:
      throw ParameterOutOfRange("real_spherical_harmonic: supported degrees are l <= 4");
  }
}

// A positive function on directions given by a constant plus harmonic terms.
// Evaluations away from the unit sphere treat it as homogeneous of degree 0,
// which yields analytic gradients and Hessians for curvature formulas.
template <int N>
struct RadialCoeffs;

// 2D: Fourier series evaluated by angle recurrences (O(K) per point), with
// Cartesian derivatives through the atan2 chain rule.
template <>
struct RadialCoeffs<2> {
  double constant = 1.0;
  std::vector<double> cos_coef;  // index k-1 <-> cos(k theta)
  std::vector<double> sin_coef;

  void set_cos(int k, double c) {
    if (static_cast<int>(cos_coef.size()) < k) cos_coef.resize(static_cast<std::size_t>(k), 0.0);
    cos_coef[static_cast<std::size_t>(k - 1)] = c;
  }
  void set_sin(int k, double c) {
    if (static_cast<int>(sin_coef.size()) < k) sin_coef.resize(static_cast<std::size_t>(k), 0.0);
    sin_coef[static_cast<std::size_t>(k - 1)] = c;
  }

  // f(theta), f'(theta), f''(theta) in one pass.
  void eval_angle(double theta, double* f, double* df, double* ddf) const {
    const double c1 = std::cos(theta), s1 = std::sin(theta);
    double ck = 1.0, sk = 0.0;  // cos/sin of k*theta, starting k=0
    double v = constant, dv = 0.0, ddv = 0.0;
    const int kmax = max_degree();
    for (int k = 1; k <= kmax; ++k) {
      const double cn = ck * c1 - sk * s1;
      const double sn = sk * c1 + ck * s1;
      ck = cn;
      sk = sn;
      const double a = k <= static_cast<int>(cos_coef.size()) ? cos_coef[static_cast<std::size_t>(k - 1)] : 0.0;
      const double b = k <= static_cast<int>(sin_coef.size()) ? sin_coef[static_cast<std::size_t>(k - 1)] : 0.0;
      v += a * ck + b * sk;
      dv += k * (-a * sk + b * ck);
      ddv += -k * k * (a * ck + b * sk);
    }
    if (f) *f = v;
    if (df) *df = dv;
    if (ddf) *ddf = ddv;
  }

  double rho_angle(double theta) const {
    double v;
    eval_angle(theta, &v, nullptr, nullptr);
    return v;
  }
  double rho(const Vec<2>& u) const { return rho_angle(std::atan2(u.y(), u.x())); }
  double value(const Vec<2>& y) const { return rho(y); }  // homogeneous of degree 0

  Vec<2> gradient(const Vec<2>& y) const {
    const double r2 = y.squaredNorm();
    double df;
    eval_angle(std::atan2(y.y(), y.x()), nullptr, &df, nullptr);
    return df * Vec<2>(-y.y(), y.x()) / r2;
  }

  Mat<2> hessian(const Vec<2>& y) const {
    const double r2 = y.squaredNorm();
    double df, ddf;
    eval_angle(std::atan2(y.y(), y.x()), nullptr, &df, &ddf);
    const Vec<2> gt = Vec<2>(-y.y(), y.x()) / r2;  // grad theta
    Mat<2> ht;  // hess theta
    ht(0, 0) = 2.0 * y.x() * y.y();
    ht(0, 1) = ht(1, 0) = y.y() * y.y() - y.x() * y.x();
    ht(1, 1) = -2.0 * y.x() * y.y();
    ht /= r2 * r2;
    return ddf * gt * gt.transpose() + df * ht;
  }

  int max_degree() const { return static_cast<int>(std::max(cos_coef.size(), sin_coef.size())); }
};

// 3D: spherical harmonics stored as homogeneous polynomials (degree <= 4).
template <>
struct RadialCoeffs<3> {
  double constant = 1.0;
  std::vector<std::pair<HomogPoly, double>> terms;  // basis polynomial, coefficient

  double rho(const Vec<3>& unit_dir) const {
    double s = constant;
    for (const auto& [p, c] : terms) s += c * p.value(unit_dir.x(), unit_dir.y(), unit_dir.z());
    return s;
  }

  double value(const Vec<3>& yv) const {
    const double r2 = yv.squaredNorm();
    double s = constant;
    for (const auto& [p, c] : terms)
      s += c * p.value(yv.x(), yv.y(), yv.z()) * std::pow(r2, -0.5 * p.degree);
    return s;
  }

  Vec<3> gradient(const Vec<3>& yv) const {
    const double r2 = yv.squaredNorm();
    Vec<3> g = Vec<3>::Zero();
    for (const auto& [p, c] : terms) {
      const double s = std::pow(r2, -0.5 * p.degree);
      g += c * (s * p.gradient(yv.x(), yv.y(), yv.z()) -
                p.degree * s / r2 * p.value(yv.x(), yv.y(), yv.z()) * yv);
    }
    return g;
  }

  Mat<3> hessian(const Vec<3>& yv) const {
    const double r2 = yv.squaredNorm();
    Mat<3> h = Mat<3>::Zero();
    for (const auto& [p, c] : terms) {
      const double k = p.degree;
      const double s = std::pow(r2, -0.5 * k);
      const double pv = p.value(yv.x(), yv.y(), yv.z());
      const Vec<3> gp = p.gradient(yv.x(), yv.y(), yv.z());
      h += c * (s * p.hessian(yv.x(), yv.y(), yv.z()) -
                k * s / r2 * (gp * yv.transpose() + yv * gp.transpose() + pv * Mat<3>::Identity()) +
                k * (k + 2.0) * s / (r2 * r2) * pv * (yv * yv.transpose()));
    }
    return h;
  }

  int max_degree() const {
    int d = 0;
    for (const auto& [p, c] : terms) d = std::max(d, p.degree);
    return d;
  }
};

}  // namespace hilbert
