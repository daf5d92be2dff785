#include <catch2/catch.hpp>

#include <chrono>
#include <cmath>
#include <vector>

#include "lcube/random.hpp"
#include "lcube/spline.hpp"
#include "lsq_oracle.hpp"

using namespace lcube;

namespace {

std::vector<double> random_x(Rng& rng, int n) {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (double& v : x) v = rng.uniform();
  return x;
}

double oracle_rss(const std::vector<double>& x, const std::vector<double>& y,
                  const std::vector<double>& knots) {
  return lsq_oracle::solve(lsq_oracle::spline_columns(x, knots), y).rss;
}

}  // namespace

TEST_CASE("normalize_minmax maps onto [0,1]") {
  const SampleVector out = normalize_minmax(std::vector<double>{0.0, 5.0, 10.0});
  REQUIRE(out == SampleVector{0.0, 0.5, 1.0});
  REQUIRE(normalize_minmax(std::vector<double>{0.0, 1.0}) == SampleVector{0.0, 1.0});

  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v(50);
    for (double& vi : v) vi = rng.uniform(-100.0, 100.0);
    const SampleVector n = normalize_minmax(v);
    REQUIRE(*std::min_element(n.begin(), n.end()) == 0.0);
    REQUIRE(*std::max_element(n.begin(), n.end()) == 1.0);
  }
}

TEST_CASE("normalize_minmax rejects a constant variable") {
  REQUIRE_THROWS_AS(normalize_minmax(std::vector<double>{2.0, 2.0, 2.0}),
                    ConstantVariableError);
  REQUIRE_THROWS_AS(normalize_minmax(std::vector<double>{7.0}), ConstantVariableError);
}

TEST_CASE("equidistant_knots places j/(m+1) over the span") {
  const std::vector<double> x{0.0, 0.2, 0.4, 0.9, 1.0};
  REQUIRE(equidistant_knots(1, x) == KnotSequence{0.5});
  REQUIRE(equidistant_knots(3, x) == KnotSequence{0.25, 0.5, 0.75});

  const KnotSequence two = equidistant_knots(2, x);
  REQUIRE(two[0] == Approx(1.0 / 3.0).margin(1e-15));
  REQUIRE(two[1] == Approx(2.0 / 3.0).margin(1e-15));
}

TEST_CASE("equidistant_knots invariants on random spans") {
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const double lo = rng.uniform(-50.0, 50.0);
    const double hi = lo + rng.uniform(0.1, 100.0);
    const int m = 1 + static_cast<int>(rng.uniform() * 10.0);
    std::vector<double> x{lo, hi};
    for (int i = 0; i < 20; ++i) x.push_back(rng.uniform(lo, hi));
    const KnotSequence knots = equidistant_knots(m, x);
    REQUIRE(static_cast<int>(knots.size()) == m);
    REQUIRE(lo < knots.front());
    REQUIRE(knots.back() < hi);
    const double spacing = (hi - lo) / (m + 1);
    for (std::size_t j = 0; j + 1 < knots.size(); ++j) {
      REQUIRE(knots[j] < knots[j + 1]);
      REQUIRE(knots[j + 1] - knots[j] == Approx(spacing).epsilon(1e-12));
    }
  }
}

TEST_CASE("design matrix rows follow the truncated power basis") {
  const std::vector<double> x{0.0, 1.0};
  const Eigen::MatrixXd design = build_design_matrix(x, std::vector<double>{0.5});
  REQUIRE(design.rows() == 2);
  REQUIRE(design.cols() == 5);
  const double row0[] = {1, 0, 0, 0, 0};
  const double row1[] = {1, 1, 1, 1, 0.125};
  for (int c = 0; c < 5; ++c) {
    REQUIRE(design(0, c) == row0[c]);
    REQUIRE(design(1, c) == row1[c]);
  }

  const Eigen::MatrixXd single =
      build_design_matrix(std::vector<double>{0.0}, std::vector<double>{0.5});
  for (int c = 0; c < 5; ++c) REQUIRE(single(0, c) == (c == 0 ? 1.0 : 0.0));
}

TEST_CASE("design matrix shape is n x (m+4)") {
  Rng rng(3);
  const std::vector<double> x = random_x(rng, 100);
  const Eigen::MatrixXd design = build_design_matrix(x, equidistant_knots(6, x));
  REQUIRE(design.rows() == 100);
  REQUIRE(design.cols() == 10);
  REQUIRE((design.col(0).array() == 1.0).all());
}

TEST_CASE("fit recovers a cubic exactly for any knot count") {
  Rng rng(5);
  const std::vector<double> x = random_x(rng, 200);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] * x[i] * x[i];
  for (int m = 1; m <= 8; ++m) {
    const SplineFit fit = fit_least_squares(x, y, equidistant_knots(m, x));
    REQUIRE(fit.rss <= 1e-9);
  }
}

TEST_CASE("fit recovers a spline drawn from its own basis") {
  Rng rng(6);
  const std::vector<double> x = random_x(rng, 300);
  const KnotSequence knots = equidistant_knots(4, x);
  SplineFit truth;
  truth.m = 4;
  truth.knots = knots;
  for (double& c : truth.b) c = rng.uniform(-2.0, 2.0);
  truth.beta = {rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0),
                rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0)};
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = evaluate_spline(truth, x[i]);

  const SplineFit fit = fit_least_squares(x, y, knots);
  REQUIRE(fit.rss <= 1e-9);
}

TEST_CASE("fit matches the pivoted-QR oracle on random data") {
  Rng rng(7);
  const std::vector<double> x = random_x(rng, 50);
  std::vector<double> y(x.size());
  for (double& v : y) v = rng.normal();
  const KnotSequence knots = equidistant_knots(2, x);
  const SplineFit fit = fit_least_squares(x, y, knots);
  const double expected = oracle_rss(x, y, knots);
  REQUIRE(fit.rss == Approx(expected).epsilon(1e-8));
}

TEST_CASE("solver equivalence across sizes and knot counts") {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 20 + static_cast<int>(rng.uniform() * 981.0);
    const int m = 1 + static_cast<int>(rng.uniform() * 10.0);
    std::vector<double> x = random_x(rng, n);
    if (trial % 4 == 0) {
      // clustered predictor with duplicates
      for (double& v : x) v = std::floor(v * 40.0) / 40.0;
      x[0] = 0.0;
      x[1] = 1.0;
    }
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      y[i] = std::sin(6.0 * x[i]) + 0.5 * rng.normal();
    const KnotSequence knots = equidistant_knots(m, x);
    const SplineFit fit = fit_least_squares(x, y, knots);
    const double expected = oracle_rss(x, y, knots);
    REQUIRE(fit.rss == Approx(expected).epsilon(1e-8));
  }
}

TEST_CASE("fit rejects n < m + 4") {
  Rng rng(9);
  const std::vector<double> x = random_x(rng, 7);
  const std::vector<double> y = random_x(rng, 7);
  REQUIRE_THROWS_AS(fit_least_squares(x, y, equidistant_knots(4, x)),
                    InsufficientSamplesError);
}

TEST_CASE("evaluate_spline hand cases") {
  SplineFit fit;
  fit.m = 1;
  fit.knots = {0.5};
  fit.beta = {0.0};
  REQUIRE(evaluate_spline(fit, 0.3) == 0.0);
  REQUIRE(evaluate_spline(fit, 2.0) == 0.0);

  fit.b = {1.0, 0.0, 0.0, 0.0};
  REQUIRE(evaluate_spline(fit, -3.0) == 1.0);
  REQUIRE(evaluate_spline(fit, 0.7) == 1.0);

  fit.b = {0.0, 0.0, 0.0, 1.0};
  fit.beta = {-1.0};
  REQUIRE(evaluate_spline(fit, 1.0) == Approx(0.875).margin(1e-15));
}

TEST_CASE("stored rss matches pointwise recomputation") {
  Rng rng(10);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 30 + static_cast<int>(rng.uniform() * 300.0);
    const int m = 1 + static_cast<int>(rng.uniform() * 6.0);
    const std::vector<double> x = random_x(rng, n);
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      y[i] = std::cos(4.0 * x[i]) + 0.3 * rng.normal();
    const SplineFit fit = fit_least_squares(x, y, equidistant_knots(m, x));
    double recomputed = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - evaluate_spline(fit, x[i]);
      recomputed += r * r;
    }
    REQUIRE(fit.rss == Approx(recomputed).epsilon(1e-8));
  }
}

TEST_CASE("knotted fit never loses to the plain cubic") {
  // The cubic polynomial lies in every spline basis, so adding knots can
  // only lower the residual.
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 25 + static_cast<int>(rng.uniform() * 200.0);
    const std::vector<double> x = random_x(rng, n);
    std::vector<double> y(x.size());
    for (double& v : y) v = rng.normal();
    const SplineFit cubic = fit_least_squares(x, y, KnotSequence{});
    const int m = 1 + static_cast<int>(rng.uniform() * 8.0);
    const SplineFit knotted = fit_least_squares(x, y, equidistant_knots(m, x));
    REQUIRE(knotted.rss <= cubic.rss * (1.0 + 1e-9) + 1e-12);
  }
}

TEST_CASE("predictions are affine-equivariant in y") {
  Rng rng(13);
  const std::vector<double> x = random_x(rng, 150);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    y[i] = std::sin(5.0 * x[i]) + 0.2 * rng.normal();
  const double scale = -2.5, shift = 0.75;
  std::vector<double> transformed(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) transformed[i] = scale * y[i] + shift;

  const KnotSequence knots = equidistant_knots(3, x);
  const SplineFit base = fit_least_squares(x, y, knots);
  const SplineFit moved = fit_least_squares(x, transformed, knots);
  for (double x0 : {0.05, 0.31, 0.5, 0.77, 0.99}) {
    const double expected = scale * evaluate_spline(base, x0) + shift;
    REQUIRE(evaluate_spline(moved, x0) == Approx(expected).margin(1e-8));
  }
}

TEST_CASE("fit cost grows about linearly in n", "[timing]") {
  Rng rng(14);
  const auto time_fit = [&](int n) {
    const std::vector<double> x = random_x(rng, n);
    std::vector<double> y(x.size());
    for (double& v : y) v = rng.normal();
    const KnotSequence knots = equidistant_knots(8, x);
    double best = 1e300;
    for (int rep = 0; rep < 3; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      fit_least_squares(x, y, knots);
      const auto t1 = std::chrono::steady_clock::now();
      best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
  };
  const double t_small = time_fit(60000);
  const double t_large = time_fit(120000);
  REQUIRE(t_large <= 4.0 * t_small + 0.005);
}
