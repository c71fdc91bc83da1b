#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "bbm/errors.hpp"
#include "bbm/point_measure.hpp"
#include "bbm/rng.hpp"
#include "bbm/stats.hpp"
#include "bbm/test_function.hpp"
#include "oracle_helpers.hpp"

using namespace bbm;

TEST_CASE("rng streams are reproducible and distinct") {
  RngStream a(42, 3), b(42, 3), c(42, 4);
  bool identical = true, different = false;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.next_u64();
    identical = identical && x == b.next_u64();
    different = different || x != c.next_u64();
  }
  CHECK(identical);
  CHECK(different);
}

TEST_CASE("normal draws match the Gaussian law") {
  RngStream rng(1, 0);
  std::vector<double> xs(20000);
  for (auto& x : xs) x = rng.normal();
  const double d = stats::ks_statistic(xs, oracle::phi_cdf);
  // 1% critical value of the Kolmogorov statistic.
  CHECK(d < 1.628 / std::sqrt(20000.0));
}

TEST_CASE("exponential and poisson moments") {
  RngStream rng(2, 0);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) sum += rng.exponential(2.0);
  CHECK(sum / 100000.0 == doctest::Approx(0.5).epsilon(0.02));

  double psum = 0.0, psq = 0.0;
  const double mean = 7.5;
  for (int i = 0; i < 50000; ++i) {
    const double n = static_cast<double>(rng.poisson(mean));
    psum += n;
    psq += n * n;
  }
  const double m = psum / 50000.0;
  CHECK(m == doctest::Approx(mean).epsilon(0.01));
  CHECK(psq / 50000.0 - m * m == doctest::Approx(mean).epsilon(0.05));
}

TEST_CASE("test function evaluation") {
  // Single knot at the support edge: a jump is allowed exactly there.
  TestFunction plateau = TestFunction::plateau(1.0);
  CHECK(plateau(-5.0) == 0.0);
  CHECK(plateau(3.0) == 1.0);
  CHECK(plateau(0.0) == 1.0);

  TestFunction ramp({{0.0, 0.0}, {1.0, 2.0}}, 0.0);
  CHECK(ramp(0.5) == doctest::Approx(1.0));
  CHECK(ramp(2.0) == 2.0);   // plateau beyond the last knot
  CHECK(ramp(-0.1) == 0.0);

  // Implicit zero knot at -A keeps continuity.
  TestFunction tent({{0.0, 3.0}}, 1.0);
  CHECK(tent(-1.0) == 0.0);
  CHECK(tent(-0.5) == doctest::Approx(1.5));

  CHECK_THROWS_AS(TestFunction({{0.0, -1.0}}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(TestFunction({{0.0, 1.0}, {0.0, 2.0}}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(TestFunction({{0.0, 1.0}}, -1.0), std::invalid_argument);
}

TEST_CASE("laplace pairing") {
  TestFunction one({{-1.0, 1.0}}, 1.0);
  CHECK(laplace_pairing({{0.0, 1.0}}, one) == doctest::Approx(2.0));
  CHECK(laplace_pairing({}, one) == 0.0);
  TestFunction right({{-1.0, 1.0}}, 1.0);
  CHECK(laplace_pairing({{-3.0}}, right) == 0.0);  // atom left of the support
}

TEST_CASE("pairing is additive in the measure") {
  RngStream rng(7, 0);
  for (int rep = 0; rep < 50; ++rep) {
    const TestFunction phi = TestFunction::random(rng);
    PointMeasure a, b, both;
    for (int i = 0; i < 20; ++i) {
      const double x = -4.0 + 10.0 * rng.uniform();
      if (i % 2 == 0)
        a.atoms.push_back(x);
      else
        b.atoms.push_back(x);
      both.atoms.push_back(x);
    }
    CHECK(laplace_pairing(both, phi) ==
          doctest::Approx(laplace_pairing(a, phi) + laplace_pairing(b, phi)).epsilon(1e-12));
  }
}

TEST_CASE("evaluation is monotone under pointwise knot raises") {
  RngStream rng(8, 0);
  for (int rep = 0; rep < 50; ++rep) {
    const TestFunction lo = TestFunction::random(rng);
    auto knots = lo.knots();
    for (auto& [x, v] : knots) v += rng.uniform();
    const TestFunction hi(knots, lo.left_support_bound());
    for (double x = -4.0; x <= 8.0; x += 0.37) CHECK(hi(x) >= lo(x) - 1e-12);
  }
}

TEST_CASE("point measure CSV round trip") {
  PointMeasure e{{1.25, -3.5, 0.0}};
  std::stringstream ss;
  write_point_measure_csv(ss, e);
  CHECK(ss.str().substr(0, 5) == "atom\n");
  const PointMeasure back = read_point_measure_csv(ss);
  REQUIRE(back.size() == 3);
  CHECK(back.atoms[0] == doctest::Approx(1.25));
  CHECK(back.atoms[1] == doctest::Approx(-3.5));

  std::stringstream bad("xcol\n1\n");
  CHECK_THROWS_AS(read_point_measure_csv(bad), MalformedInputError);
}

TEST_CASE("normal cdf and chi-square p-values") {
  CHECK(stats::norm_cdf(0.0) == doctest::Approx(0.5));
  CHECK(stats::norm_cdf(1.0) == doctest::Approx(0.841344746).epsilon(1e-8));
  CHECK(2.0 * stats::norm_cdf(1.0) - 1.0 == doctest::Approx(0.6826894921).epsilon(1e-8));
  // chi2 with 2 dof is Exp(1/2): P(X > x) = exp(-x/2).
  CHECK(stats::chi2_pvalue(4.0, 2) == doctest::Approx(std::exp(-2.0)).epsilon(1e-10));
  CHECK(stats::chi2_pvalue(0.0, 5) == doctest::Approx(1.0));
}

TEST_CASE("ols recovers exact linear data") {
  std::vector<double> x, y;
  for (int i = 0; i < 10; ++i) {
    x.push_back(i);
    y.push_back(3.0 - 2.0 * i);
  }
  const auto fit = stats::ols_fit(x, y);
  CHECK(fit.slope == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit.stderr_slope == doctest::Approx(0.0).epsilon(1e-10));
  CHECK_THROWS_AS(stats::ols_fit(std::vector<double>{1.0, 2.0}, std::vector<double>{1.0, 2.0}),
                  std::invalid_argument);
}

TEST_CASE("median and bootstrap") {
  CHECK(stats::median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(stats::median({4.0, 1.0, 2.0, 3.0}) == doctest::Approx(2.5));
  RngStream rng(3, 0);
  std::vector<double> xs(400);
  for (auto& x : xs) x = rng.normal();
  const auto ci = stats::bootstrap_median_ci(xs, 500, 0.95, rng);
  CHECK(ci.lo <= ci.point);
  CHECK(ci.point <= ci.hi);
  CHECK(std::abs(ci.point) < 0.2);
}
