#pragma once

#include <hilbert/base.hpp>

#include <algorithm>

namespace hilbert {

// Least-squares slope with a 95% confidence half-width over a stated window.
// The common output type for entropy, approximability and critical exponents.
struct SlopeEstimate {
  double slope = 0.0;
  double half_width = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
  double window_min = 0.0;
  double window_max = 0.0;
  int n_points = 0;

  bool agrees_with(const SlopeEstimate& other, double extra_tol = 0.0) const {
    return std::abs(slope - other.slope) <= half_width + other.half_width + extra_tol;
  }
};

namespace detail {
// Two-sided 97.5% Student t quantiles, df = 1..30; beyond that the normal
// quantile is close enough for confidence-interval purposes.
inline double t_quantile_975(int df) {
  static constexpr double table[] = {
      12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
      2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
      2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};
  if (df < 1) return table[0];
  if (df <= 30) return table[df - 1];
  return 1.960 + 2.5 / df;
}
}  // namespace detail

inline SlopeEstimate fit_line(std::span<const double> x, std::span<const double> y) {
  const int n = static_cast<int>(x.size());
  if (n < 2 || y.size() != x.size()) throw WindowTooSmall("fit_line: need at least 2 points");
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += x[static_cast<std::size_t>(i)];
    my += y[static_cast<std::size_t>(i)];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dx = x[static_cast<std::size_t>(i)] - mx;
    const double dy = y[static_cast<std::size_t>(i)] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 0.0) throw WindowTooSmall("fit_line: degenerate abscissae");

  SlopeEstimate est;
  est.slope = sxy / sxx;
  est.intercept = my - est.slope * mx;
  est.n_points = n;
  est.window_min = *std::min_element(x.begin(), x.end());
  est.window_max = *std::max_element(x.begin(), x.end());
  const double rss = std::max(0.0, syy - est.slope * sxy);
  if (n > 2) {
    const double se = std::sqrt(rss / (n - 2) / sxx);
    est.half_width = detail::t_quantile_975(n - 2) * se;
  }
  est.r_squared = syy > 0.0 ? 1.0 - rss / syy : 1.0;
  return est;
}

struct QuadraticFit {
  double a = 0.0;  // x^2 coefficient
  double b = 0.0;
  double c = 0.0;
  double r_squared = 1.0;
};

inline QuadraticFit fit_quadratic(std::span<const double> x, std::span<const double> y) {
  const int n = static_cast<int>(x.size());
  if (n < 3) throw WindowTooSmall("fit_quadratic: need at least 3 points");
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) {
    const double xi = x[static_cast<std::size_t>(i)];
    design(i, 0) = xi * xi;
    design(i, 1) = xi;
    design(i, 2) = 1.0;
    rhs(i) = y[static_cast<std::size_t>(i)];
  }
  const Eigen::Vector3d beta = design.colPivHouseholderQr().solve(rhs);
  QuadraticFit fit{beta(0), beta(1), beta(2), 1.0};
  double my = rhs.mean();
  double rss = (design * beta - rhs).squaredNorm();
  double tss = (rhs.array() - my).square().sum();
  fit.r_squared = tss > 0.0 ? 1.0 - rss / tss : 1.0;
  return fit;
}

}  // namespace hilbert
