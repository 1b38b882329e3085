#include "wiregrid/numerics.hpp"

#include <numbers>

namespace wiregrid::numerics {

void QuadratureSpec::check() const {
  if (!(relative_tolerance > 0.0) || !(absolute_tolerance > 0.0))
    throw std::invalid_argument("quadrature tolerances must be positive");
  if (max_subdivisions < 10) throw std::invalid_argument("max_subdivisions must be at least 10");
}

QuadratureFailure::QuadratureFailure(const std::string& what, QuadratureResult result)
    : std::runtime_error(what + ": quadrature did not converge (estimate " + std::to_string(result.value) +
                         ", error " + std::to_string(result.error_estimate) + ")"),
      result_(result) {}

QuadratureResult require_converged(const QuadratureResult& result, const std::string& what) {
  if (!result.converged) throw QuadratureFailure(what, result);
  return result;
}

namespace detail {

QuadratureResult finish(std::vector<Segment> segments, int subdivisions, const QuadratureSpec& spec) {
  // Sum in a fixed spatial order so the result does not depend on heap layout.
  std::sort(segments.begin(), segments.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
  double value = 0.0;
  double compensation = 0.0;
  double error = 0.0;
  for (const auto& s : segments) {
    const double y = s.value - compensation;
    const double t = value + y;
    compensation = (t - value) - y;
    value = t;
    error += s.error;
  }
  const double tolerance = std::max(spec.relative_tolerance * std::abs(value), spec.absolute_tolerance);
  return {value, error, subdivisions, error <= tolerance};
}

}  // namespace detail

std::vector<double> uniform_breakpoints(double lo, double hi, double spacing, double origin) {
  if (!(hi > lo)) throw std::invalid_argument("uniform_breakpoints: empty interval");
  if (!(spacing > 0.0)) throw std::invalid_argument("uniform_breakpoints: spacing must be positive");
  std::vector<double> out{lo};
  const double first = std::floor((lo - origin) / spacing) + 1.0;
  const double guard = 1e-12 * spacing;
  for (double k = first;; k += 1.0) {
    const double x = origin + k * spacing;
    if (x >= hi - guard) break;
    if (x > lo + guard) out.push_back(x);
  }
  out.push_back(hi);
  return out;
}

std::vector<double> clip_breakpoints(std::vector<double> candidates, double lo, double hi) {
  std::vector<double> out{lo};
  std::sort(candidates.begin(), candidates.end());
  const double guard = 1e-14 * std::max(std::abs(lo), std::abs(hi));
  for (double x : candidates)
    if (x > out.back() + guard && x < hi - guard) out.push_back(x);
  out.push_back(hi);
  return out;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("trapezoid: size mismatch");
  double sum = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) sum += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return sum;
}

double disc_area(double diameter) { return std::numbers::pi * 0.25 * diameter * diameter; }

double disc_band_area(double diameter, double lo, double hi) {
  const double r = 0.5 * diameter;
  // Antiderivative of the chord length 2 sqrt(r^2 - y^2).
  auto primitive = [r](double y) {
    y = std::clamp(y, -r, r);
    return y * std::sqrt(std::max(0.0, r * r - y * y)) + r * r * std::asin(y / r);
  };
  if (hi <= lo) return 0.0;
  return primitive(hi) - primitive(lo);
}

double disc_chord(double diameter, double y) {
  const double r = 0.5 * diameter;
  return std::abs(y) >= r ? 0.0 : 2.0 * std::sqrt(r * r - y * y);
}

double disc_strip_area(double diameter, std::span<const Strip> strips, StripModel model) {
  if (!(diameter > 0.0)) throw std::invalid_argument("disc_strip_area: diameter must be positive");
  const double r = 0.5 * diameter;
  const double slack = 1e-12 * diameter;
  std::vector<Strip> sorted(strips.begin(), strips.end());
  std::sort(sorted.begin(), sorted.end(), [](const Strip& a, const Strip& b) { return a.center_y < b.center_y; });
  double area = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto& s = sorted[i];
    if (!(s.width >= 0.0)) throw std::invalid_argument("disc_strip_area: negative strip width");
    const double lo = s.center_y - 0.5 * s.width;
    const double hi = s.center_y + 0.5 * s.width;
    if (lo < -r - slack || hi > r + slack) throw std::invalid_argument("disc_strip_area: strip outside disc");
    if (i > 0 && lo < sorted[i - 1].center_y + 0.5 * sorted[i - 1].width - slack)
      throw std::invalid_argument("disc_strip_area: strips overlap");
    area += model == StripModel::ChordExact ? disc_band_area(diameter, lo, hi) : s.width * diameter;
  }
  return area;
}

std::string to_string(StripModel model) {
  return model == StripModel::ChordExact ? "chord" : "strip";
}

namespace series {

double sinc(double x) {
  if (std::abs(x) < 1e-7) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

double n_slit_ratio(int n, double y) {
  const double m = std::nearbyint(y / std::numbers::pi);
  // Split pi so the reduction stays accurate for |y| of a few thousand.
  constexpr double kPiHi = 3.141592653589793116;
  constexpr double kPiLo = 1.2246467991473532e-16;
  const double eps = std::fma(-m, kPiHi, y) - m * kPiLo;
  const double parity = std::fmod(std::abs(m) * (n - 1), 2.0);
  const double sign = parity == 0.0 ? 1.0 : -1.0;
  if (std::abs(eps) < 1e-7) {
    const double nn = static_cast<double>(n) * n;
    return sign * (1.0 - (nn - 1.0) * eps * eps / 6.0);
  }
  return sign * std::sin(n * eps) / (n * std::sin(eps));
}

double linear_slit_shape(double t) {
  if (std::abs(t) < 1e-2) {
    const double t2 = t * t;
    return -2.0 / 3.0 + t2 / 15.0 - t2 * t2 / 420.0;
  }
  return (2.0 * t * std::cos(t) - 2.0 * std::sin(t)) / (t * t * t);
}

}  // namespace series

}  // namespace wiregrid::numerics
