#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "lcube/errors.hpp"

namespace lcube {

using SampleVector = std::vector<double>;
using KnotSequence = std::vector<double>;

// A fitted cubic regression spline in the truncated power basis:
//   s(x) = b0 + b1 x + b2 x^2 + b3 x^3 + sum_j beta_j (x - k_j)+^3
struct SplineFit {
  int m = 0;                    // number of interior knots
  KnotSequence knots;           // k_1 < ... < k_m
  std::array<double, 4> b{};    // polynomial coefficients b0..b3
  std::vector<double> beta;     // one coefficient per knot
  double rss = 0.0;             // residual sum of squares at the fit
};

// Maps values affinely onto [0, 1]. Both variables of a pair are rescaled
// this way before either direction is fit, so the two conditional code
// lengths are compared on a common scale.
inline SampleVector normalize_minmax(std::span<const double> v) {
  const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
  if (v.size() < 2 || !(*lo_it < *hi_it)) throw ConstantVariableError();
  const double lo = *lo_it, range = *hi_it - *lo_it;
  SampleVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - lo) / range;
  return out;
}

// k_j = min(x) + j * (max(x) - min(x)) / (m + 1), j = 1..m. Strictly inside
// (min, max) with constant spacing.
inline KnotSequence equidistant_knots(int m, std::span<const double> x) {
  if (m < 1) throw std::invalid_argument("knot count must be >= 1");
  const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
  if (!(*lo_it < *hi_it)) throw ConstantVariableError();
  const double lo = *lo_it, range = *hi_it - *lo_it;
  KnotSequence knots(static_cast<std::size_t>(m));
  for (int j = 1; j <= m; ++j)
    knots[j - 1] = lo + static_cast<double>(j) * range / (m + 1);
  return knots;
}

// n x (m+4) matrix with columns (1, x, x^2, x^3, (x-k_1)+^3, ..., (x-k_m)+^3).
inline Eigen::MatrixXd build_design_matrix(std::span<const double> x,
                                           std::span<const double> knots) {
  const auto n = static_cast<Eigen::Index>(x.size());
  const auto m = static_cast<Eigen::Index>(knots.size());
  Eigen::MatrixXd design(n, m + 4);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double xi = x[static_cast<std::size_t>(i)];
    design(i, 0) = 1.0;
    design(i, 1) = xi;
    design(i, 2) = xi * xi;
    design(i, 3) = xi * xi * xi;
    for (Eigen::Index j = 0; j < m; ++j) {
      const double t = xi - knots[static_cast<std::size_t>(j)];
      design(i, 4 + j) = t > 0.0 ? t * t * t : 0.0;
    }
  }
  return design;
}

// Least-squares coefficients via a thin SVD of the design matrix with
// singular values below 1e-10 * sigma_max treated as zero. This equals the
// pseudo-inverse solution (X^T X)^+ X^T y and is the minimum-norm minimizer
// when the design is rank deficient.
inline SplineFit fit_least_squares(std::span<const double> x,
                                   std::span<const double> y,
                                   KnotSequence knots) {
  const auto n = static_cast<Eigen::Index>(x.size());
  const int m = static_cast<int>(knots.size());
  if (static_cast<Eigen::Index>(y.size()) != n)
    throw std::invalid_argument("x and y must have the same length");
  if (n < m + 4) throw InsufficientSamplesError(n, m);

  const Eigen::MatrixXd design = build_design_matrix(x, knots);
  const Eigen::Map<const Eigen::VectorXd> rhs(y.data(), n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design,
                                        Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-10);
  const Eigen::VectorXd coeffs = svd.solve(rhs);

  SplineFit fit;
  fit.m = m;
  fit.knots = std::move(knots);
  for (int i = 0; i < 4; ++i) fit.b[static_cast<std::size_t>(i)] = coeffs(i);
  fit.beta.assign(coeffs.data() + 4, coeffs.data() + 4 + m);
  fit.rss = (rhs - design * coeffs).squaredNorm();
  return fit;
}

inline double evaluate_spline(const SplineFit& fit, double x0) {
  double value = fit.b[0] + x0 * (fit.b[1] + x0 * (fit.b[2] + x0 * fit.b[3]));
  for (std::size_t j = 0; j < fit.beta.size(); ++j) {
    const double t = x0 - fit.knots[j];
    if (t > 0.0) value += fit.beta[j] * t * t * t;
  }
  return value;
}

}  // namespace lcube
