#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wiregrid::numerics {

struct QuadratureSpec {
  double relative_tolerance = 1e-8;
  double absolute_tolerance = 1e-14;
  int max_subdivisions = 10000;

  /// Throws std::invalid_argument on non-positive tolerances or fewer than 10 subdivisions.
  void check() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions = 0;
  bool converged = false;
};

class QuadratureFailure : public std::runtime_error {
 public:
  QuadratureFailure(const std::string& what, QuadratureResult result);
  const QuadratureResult& result() const { return result_; }

 private:
  QuadratureResult result_;
};

/// Returns the result unchanged when converged; otherwise throws QuadratureFailure
/// naming `what` and carrying the achieved estimate.
QuadratureResult require_converged(const QuadratureResult& result, const std::string& what);

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule.
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
};

template <class F>
Segment gauss_kronrod(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

struct WorstFirst {
  bool operator()(const Segment& x, const Segment& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  }
};

QuadratureResult finish(std::vector<Segment> segments, int subdivisions, const QuadratureSpec& spec);

}  // namespace detail

/// Globally adaptive Gauss-Kronrod 7/15 quadrature over the partition given by
/// `breakpoints` (ascending, at least two). The worst segment is bisected until
/// the summed error estimate meets max(rel * |value|, abs) or the subdivision
/// budget is exhausted, in which case `converged` is false.
template <class F>
QuadratureResult integrate(F&& f, std::span<const double> breakpoints, const QuadratureSpec& spec = {}) {
  spec.check();
  if (breakpoints.size() < 2) throw std::invalid_argument("integrate: need at least two breakpoints");
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    if (!(breakpoints[i] > breakpoints[i - 1]))
      throw std::invalid_argument("integrate: breakpoints must be strictly increasing");

  std::priority_queue<detail::Segment, std::vector<detail::Segment>, detail::WorstFirst> queue;
  double value = 0.0;
  double error = 0.0;
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    auto s = detail::gauss_kronrod(f, breakpoints[i - 1], breakpoints[i]);
    value += s.value;
    error += s.error;
    queue.push(s);
  }

  int subdivisions = 0;
  auto tolerance = [&] { return std::max(spec.relative_tolerance * std::abs(value), spec.absolute_tolerance); };
  while (error > tolerance() && subdivisions < spec.max_subdivisions) {
    const auto worst = queue.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted at machine precision
    queue.pop();
    const auto left = detail::gauss_kronrod(f, worst.a, mid);
    const auto right = detail::gauss_kronrod(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++subdivisions;
  }

  std::vector<detail::Segment> segments;
  segments.reserve(queue.size());
  while (!queue.empty()) {
    segments.push_back(queue.top());
    queue.pop();
  }
  return detail::finish(std::move(segments), subdivisions, spec);
}

template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
  if (a == b) return {0.0, 0.0, 0, true};
  const double sign = b > a ? 1.0 : -1.0;
  const double points[2] = {std::min(a, b), std::max(a, b)};
  auto r = integrate(std::forward<F>(f), std::span<const double>(points), spec);
  r.value *= sign;
  return r;
}

/// Ascending partition of [lo, hi] consisting of the endpoints plus every
/// point origin + k * spacing strictly inside.
std::vector<double> uniform_breakpoints(double lo, double hi, double spacing, double origin = 0.0);

/// Ascending partition of [lo, hi] from the given interior candidates.
std::vector<double> clip_breakpoints(std::vector<double> candidates, double lo, double hi);

double trapezoid(std::span<const double> x, std::span<const double> y);

// Disc geometry.

enum class StripModel { ChordExact, FullDiameterStrip };

struct Strip {
  double center_y = 0.0;
  double width = 0.0;
};

double disc_area(double diameter);

/// Area of a circular disc between y = lo and y = hi (clamped to the disc).
double disc_band_area(double diameter, double lo, double hi);

/// Area covered by the strips. ChordExact intersects each strip with the disc;
/// FullDiameterStrip counts width * D per strip. Throws std::invalid_argument
/// if a strip leaves the disc or strips overlap.
double disc_strip_area(double diameter, std::span<const Strip> strips, StripModel model);

/// Length of the disc chord at height y (zero outside).
double disc_chord(double diameter, double y);

std::string to_string(StripModel model);

// Removable-singularity helpers.
namespace series {

/// sin(x) / x.
double sinc(double x);

/// sin(n y) / (n sin y), continuous through the zeros of sin y; the sign at a
/// principal maximum y = m pi is (-1)^(m (n-1)).
double n_slit_ratio(int n, double y);

/// (2 t cos t - 2 sin t) / t^3, the first-moment slit shape; -2/3 at t = 0.
double linear_slit_shape(double t);

}  // namespace series

}  // namespace wiregrid::numerics
