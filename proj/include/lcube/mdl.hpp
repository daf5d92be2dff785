#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "lcube/errors.hpp"
#include "lcube/spline.hpp"

namespace lcube {

using OccupancyVector = std::vector<int>;

// Two-part code length of one fitted spline, in nats.
//   l_m      - knot count
//   l_knots  - knot positions, encoded as inter-knot occupancy counts
//   l_coeffs - b and beta at 1/2 log n per estimated coefficient
//   l_fit    - goodness of fit, (n/2) log(RSS/n)
struct CodeLength {
  double l_m = 0.0;
  double l_knots = 0.0;
  double l_coeffs = 0.0;
  double l_fit = 0.0;
  double total = 0.0;
};

enum class Direction { XtoY, YtoX, Undecided };

struct DirectionScore {
  double code_length = 0.0;  // min over admissible knot counts, nats
  int best_m = 0;            // knot count attaining the minimum
};

struct DirectionResult {
  double score_xy = 0.0;
  double score_yx = 0.0;
  int best_m_xy = 0;
  int best_m_yx = 0;
  Direction decision = Direction::Undecided;
  double confidence = 0.0;  // |score_xy - score_yx|
};

// RSS floor before the log: noiseless fits have RSS == 0 and both
// directions must stay finite and comparable.
inline constexpr double kRssFloor = 1e-12;

// u_j = #{ i : k_{j-1} <= x_i <= k_j } for j = 1..m, with k_0 = min(x).
// Intervals are closed on both ends, so a sample equal to a knot counts in
// the two adjacent intervals.
inline OccupancyVector knot_occupancy(std::span<const double> x,
                                      std::span<const double> knots) {
  const int m = static_cast<int>(knots.size());
  double prev = *std::min_element(x.begin(), x.end());
  OccupancyVector u(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    const double hi = knots[static_cast<std::size_t>(j)];
    int count = 0;
    for (const double xi : x)
      if (prev <= xi && xi <= hi) ++count;
    if (count == 0) throw EmptyIntervalError(j + 1);
    u[static_cast<std::size_t>(j)] = count;
    prev = hi;
  }
  return u;
}

// log m + sum_j log u_j + ((m+4)/2) log n
inline double param_code_length(int m, std::span<const int> u, long n) {
  double bits = std::log(static_cast<double>(m));
  for (const int uj : u) bits += std::log(static_cast<double>(uj));
  bits += 0.5 * static_cast<double>(m + 4) * std::log(static_cast<double>(n));
  return bits;
}

// (n/2) log(RSS/n), with RSS floored; the model-independent constant of the
// underlying code is dropped.
inline double fit_code_length(double rss, long n) {
  const double floored = std::max(rss, kRssFloor);
  return 0.5 * static_cast<double>(n) *
         std::log(floored / static_cast<double>(n));
}

// Full conditional code length for predicting y from x with m equidistant
// knots. Throws InsufficientSamplesError / EmptyIntervalError when this m
// is not admissible for the pair.
inline CodeLength conditional_code_length(std::span<const double> x,
                                          std::span<const double> y, int m) {
  const long n = static_cast<long>(x.size());
  if (n < m + 4) throw InsufficientSamplesError(n, m);
  KnotSequence knots = equidistant_knots(m, x);
  const OccupancyVector u = knot_occupancy(x, knots);
  const SplineFit fit = fit_least_squares(x, y, std::move(knots));

  CodeLength code;
  code.l_m = std::log(static_cast<double>(m));
  for (const int uj : u) code.l_knots += std::log(static_cast<double>(uj));
  code.l_coeffs = 0.5 * static_cast<double>(m + 4) *
                  std::log(static_cast<double>(n));
  code.l_fit = fit_code_length(fit.rss, n);
  code.total = code.l_m + code.l_knots + code.l_coeffs + code.l_fit;
  return code;
}

// Minimum conditional code length over m in {1..m_max} (even m only when
// requested). Inadmissible knot counts are skipped; ties keep the smaller m.
inline DirectionScore direction_score(std::span<const double> x,
                                      std::span<const double> y, int m_max,
                                      bool even_only = false) {
  if (m_max < 1) throw std::invalid_argument("m_max must be >= 1");
  DirectionScore best{std::numeric_limits<double>::infinity(), 0};
  for (int m = even_only ? 2 : 1; m <= m_max; m += even_only ? 2 : 1) {
    CodeLength code;
    try {
      code = conditional_code_length(x, y, m);
    } catch (const ModelSkipError&) {
      continue;
    }
    if (code.total < best.code_length) best = {code.total, m};
  }
  if (best.best_m == 0) throw NoAdmissibleModelError();
  return best;
}

inline DirectionResult decide_from_scores(const DirectionScore& xy,
                                          const DirectionScore& yx) {
  DirectionResult result;
  result.score_xy = xy.code_length;
  result.score_yx = yx.code_length;
  result.best_m_xy = xy.best_m;
  result.best_m_yx = yx.best_m;
  if (xy.code_length < yx.code_length)
    result.decision = Direction::XtoY;
  else if (xy.code_length > yx.code_length)
    result.decision = Direction::YtoX;
  else
    result.decision = Direction::Undecided;
  result.confidence = std::abs(xy.code_length - yx.code_length);
  return result;
}

// Scores both orientations of a raw pair and picks the cheaper one.
// Both variables are min-max normalized first.
inline DirectionResult decide_direction(std::span<const double> x,
                                        std::span<const double> y,
                                        int m_max = 10,
                                        bool even_only = false) {
  const SampleVector xn = normalize_minmax(x);
  const SampleVector yn = normalize_minmax(y);
  return decide_from_scores(direction_score(xn, yn, m_max, even_only),
                            direction_score(yn, xn, m_max, even_only));
}

}  // namespace lcube
