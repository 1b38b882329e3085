#include <cmath>
#include <stdexcept>

#include "wiregrid/kernels.hpp"
#include "wiregrid/numerics.hpp"

namespace wiregrid::kernels {

namespace {

void check_sizes(std::span<const double> in, std::span<double> out) {
  if (in.size() != out.size()) throw std::invalid_argument("kernel: input and output sizes differ");
}

}  // namespace

namespace scalar {

double grating_amplitude(const GratingParams& p, double theta) {
  const double s = std::sin(theta);
  return numerics::series::sinc(p.beta * s) * numerics::series::n_slit_ratio(p.count, p.gamma * s);
}

double six_slit_intensity(const SixSlitParams& p, double theta) {
  const double x = p.wave_number * std::sin(theta);
  const double half_b = 0.5 * p.thickness;
  const double h = numerics::series::linear_slit_shape(half_b * x);
  const double phase = 0.5 * p.pitch * x;
  const double s = std::sin(phase) - std::sin(3.0 * phase) + std::sin(5.0 * phase);
  const double b3 = half_b * half_b * half_b;
  return p.scale * (b3 * b3) * (h * h) * (x * x) * (s * s);
}

void grating_amplitude(const GratingParams& p, std::span<const double> theta, std::span<double> out) {
  check_sizes(theta, out);
  for (std::size_t i = 0; i < theta.size(); ++i) out[i] = grating_amplitude(p, theta[i]);
}

void six_slit_intensity(const SixSlitParams& p, std::span<const double> theta, std::span<double> out) {
  check_sizes(theta, out);
  for (std::size_t i = 0; i < theta.size(); ++i) out[i] = six_slit_intensity(p, theta[i]);
}

}  // namespace scalar

}  // namespace wiregrid::kernels
