#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "wiregrid/numerics.hpp"

using namespace wiregrid::numerics;

TEST_CASE("Gauss-Kronrod integrates smooth functions to tolerance") {
  const auto e = integrate([](double x) { return std::exp(x); }, 0.0, 1.0);
  CHECK(e.converged);
  CHECK(e.value == doctest::Approx(std::numbers::e - 1.0).epsilon(1e-13));

  const auto s = integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
  CHECK(s.value == doctest::Approx(2.0).epsilon(1e-13));

  // Reversed limits flip the sign.
  const auto r = integrate([](double x) { return x * x; }, 1.0, 0.0);
  CHECK(r.value == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
  CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0).value == 0.0);
}

TEST_CASE("adaptive refinement handles endpoint singular derivatives") {
  const QuadratureSpec tight{1e-12, 1e-15, 10000};
  const auto q = integrate([](double x) { return std::sqrt(1.0 - x * x); }, -1.0, 1.0, tight);
  CHECK(q.converged);
  CHECK(q.value == doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-11));
  CHECK(q.subdivisions > 0);
}

TEST_CASE("breakpoints split oscillatory integrands") {
  const auto points = uniform_breakpoints(0.0, 100.0, std::numbers::pi);
  const auto q = integrate([](double x) { return std::sin(x) * std::sin(x); }, std::span<const double>(points));
  CHECK(q.value == doctest::Approx(50.0 - 0.25 * std::sin(200.0)).epsilon(1e-12));
}

TEST_CASE("non-convergence is reported, not hidden") {
  const QuadratureSpec starved{1e-15, 1e-300, 10};
  const auto q = integrate([](double x) { return std::sin(1.0 / x); }, 1e-4, 1.0, starved);
  CHECK_FALSE(q.converged);
  CHECK_THROWS_AS(require_converged(q, "test"), QuadratureFailure);
  CHECK_THROWS_AS(QuadratureSpec({0.0, 1e-10, 100}).check(), std::invalid_argument);
  CHECK_THROWS_AS(QuadratureSpec({1e-8, 1e-10, 2}).check(), std::invalid_argument);
}

TEST_CASE("quadrature is deterministic") {
  auto f = [](double x) { return std::cos(40.0 * x) / (1.0 + x * x); };
  const auto a = integrate(f, -3.0, 5.0);
  const auto b = integrate(f, -3.0, 5.0);
  CHECK(a.value == b.value);
  CHECK(a.subdivisions == b.subdivisions);
}

TEST_CASE("uniform and clipped breakpoints") {
  const auto p = uniform_breakpoints(-1.0, 1.0, 0.5, 0.25);
  const std::vector<double> want{-1.0, -0.75, -0.25, 0.25, 0.75, 1.0};
  REQUIRE(p.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(p[i] == doctest::Approx(want[i]));
  CHECK_THROWS_AS(uniform_breakpoints(1.0, 1.0, 0.1), std::invalid_argument);

  const auto c = clip_breakpoints({3.0, -2.0, 0.5, 0.5, 0.1}, 0.0, 1.0);
  const std::vector<double> cw{0.0, 0.1, 0.5, 1.0};
  REQUIRE(c.size() == cw.size());
  for (std::size_t i = 0; i < cw.size(); ++i) CHECK(c[i] == cw[i]);
}

TEST_CASE("trapezoid rule") {
  const std::vector<double> x{0.0, 1.0, 3.0};
  const std::vector<double> y{0.0, 2.0, 2.0};
  CHECK(trapezoid(x, y) == doctest::Approx(5.0));
  CHECK_THROWS_AS(trapezoid(x, std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("disc geometry") {
  const double D = 3.22e-3;
  CHECK(disc_area(D) * 1e6 == doctest::Approx(8.14332).epsilon(1e-5));
  CHECK(disc_band_area(D, -1.0, 1.0) == doctest::Approx(disc_area(D)));
  CHECK(disc_band_area(D, 0.0, 1.0) == doctest::Approx(0.5 * disc_area(D)));
  CHECK(disc_band_area(D, 1e-3, 0.0) == 0.0);
  CHECK(disc_chord(D, 0.0) == doctest::Approx(D));
  CHECK(disc_chord(D, 2e-3) == 0.0);

  // A thin band about y0 matches chord * width.
  const double y0 = 1e-3;
  const double w = 1e-9;
  CHECK(disc_band_area(D, y0 - w / 2, y0 + w / 2) == doctest::Approx(disc_chord(D, y0) * w).epsilon(1e-6));

  // Band area agrees with integrating the chord.
  const auto q = integrate([&](double y) { return disc_chord(D, y); }, 0.2e-3, 1.4e-3);
  CHECK(disc_band_area(D, 0.2e-3, 1.4e-3) == doctest::Approx(q.value).epsilon(1e-12));
}

TEST_CASE("strip areas under both models") {
  const double D = 3.22e-3;
  std::vector<Strip> strips;
  for (int j = 0; j < 6; ++j) strips.push_back({(j - 2.5) * 319e-6, 32e-6});
  const double strip = disc_strip_area(D, strips, StripModel::FullDiameterStrip);
  CHECK(strip == doctest::Approx(6 * 32e-6 * D));
  // 100 * 4 N b / (pi D)
  CHECK(100.0 * strip / disc_area(D) == doctest::Approx(400.0 * 6 * 32e-6 / (std::numbers::pi * D)));
  const double chord = disc_strip_area(D, strips, StripModel::ChordExact);
  CHECK(chord < strip);
  CHECK(chord * 1e6 == doctest::Approx(0.58084).epsilon(1e-4));

  std::vector<Strip> overlapping{{0.0, 32e-6}, {10e-6, 32e-6}};
  CHECK_THROWS_AS(disc_strip_area(D, overlapping, StripModel::ChordExact), std::invalid_argument);
  std::vector<Strip> outside{{1.7e-3, 32e-6}};
  CHECK_THROWS_AS(disc_strip_area(D, outside, StripModel::ChordExact), std::invalid_argument);
  CHECK(to_string(StripModel::ChordExact) == "chord");
  CHECK(to_string(StripModel::FullDiameterStrip) == "strip");
}

TEST_CASE("series branches are continuous") {
  using namespace series;
  CHECK(sinc(0.0) == 1.0);
  CHECK(sinc(1e-8) == doctest::Approx(1.0));
  CHECK(sinc(1e-3) == doctest::Approx(std::sin(1e-3) / 1e-3).epsilon(1e-15));
  CHECK(sinc(2.0) == doctest::Approx(std::sin(2.0) / 2.0).epsilon(1e-15));

  CHECK(n_slit_ratio(6, 0.0) == 1.0);
  CHECK(n_slit_ratio(6, 0.3) == doctest::Approx(std::sin(1.8) / (6 * std::sin(0.3))).epsilon(1e-14));
  // Principal maxima carry the sign (-1)^(m (n - 1)).
  CHECK(n_slit_ratio(6, std::numbers::pi) == doctest::Approx(-1.0));
  CHECK(n_slit_ratio(5, std::numbers::pi) == doctest::Approx(1.0));
  CHECK(n_slit_ratio(6, 2.0 * std::numbers::pi) == doctest::Approx(1.0));
  CHECK(n_slit_ratio(6, std::numbers::pi + 1e-9) == doctest::Approx(-1.0));

  auto direct = [](double t) { return (2.0 * t * std::cos(t) - 2.0 * std::sin(t)) / (t * t * t); };
  CHECK(linear_slit_shape(0.0) == doctest::Approx(-2.0 / 3.0));
  for (double t : {0.0099, 0.0101, 0.02, 0.5, 3.0, 40.0})
    CHECK(linear_slit_shape(t) == doctest::Approx(direct(t)).epsilon(1e-9));
  CHECK(linear_slit_shape(-0.7) == doctest::Approx(linear_slit_shape(0.7)));
}
