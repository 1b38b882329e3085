#pragma once

// Batch evaluators for far-field profiles. Each kernel has a scalar reference
// implementation and, on x86-64, an AVX2+FMA variant selected at runtime.
// Both follow the same reduction and series-switch rules so they agree to a
// few ulps of the profile scale.

#include <span>
#include <string>

namespace wiregrid::kernels {

enum class Isa { Scalar, Avx2 };

/// N-slit grating amplitude f(theta).
struct GratingParams {
  double beta = 0.0;   // kappa b / 2
  double gamma = 0.0;  // kappa d / 2
  int count = 1;
};

/// Closed-form six-slit intensity for a linear amplitude ramp, alternating
/// sign slit to slit, at pitch d:
///   scale * (b/2)^6 h(b x / 2)^2 x^2 S(x)^2,  x = kappa sin(theta)
/// with S(x) = sin(x d/2) - sin(3 x d/2) + sin(5 x d/2) and h the first-moment
/// slit shape. `scale` is 2 Omega^2.
struct SixSlitParams {
  double wave_number = 0.0;
  double thickness = 0.0;
  double pitch = 0.0;
  double scale = 1.0;
};

namespace scalar {
double grating_amplitude(const GratingParams& p, double theta);
double six_slit_intensity(const SixSlitParams& p, double theta);
void grating_amplitude(const GratingParams& p, std::span<const double> theta, std::span<double> out);
void six_slit_intensity(const SixSlitParams& p, std::span<const double> theta, std::span<double> out);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define WIREGRID_HAVE_AVX2_KERNELS 1
namespace avx2 {
void grating_amplitude(const GratingParams& p, std::span<const double> theta, std::span<double> out);
void six_slit_intensity(const SixSlitParams& p, std::span<const double> theta, std::span<double> out);
void sincos(std::span<const double> x, std::span<double> s, std::span<double> c);
}  // namespace avx2
#endif

/// True when the CPU supports the given instruction set.
bool supported(Isa isa);

/// Best supported ISA, unless WIREGRID_ISA=scalar is set in the environment.
Isa active();

std::string to_string(Isa isa);

/// Dispatching entry points; `isa` must be supported.
void grating_amplitude(const GratingParams& p, std::span<const double> theta, std::span<double> out,
                       Isa isa = active());
void six_slit_intensity(const SixSlitParams& p, std::span<const double> theta, std::span<double> out,
                        Isa isa = active());

}  // namespace wiregrid::kernels
