#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "wiregrid/kernels.hpp"

namespace wiregrid::kernels {

bool supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#ifdef WIREGRID_HAVE_AVX2_KERNELS
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Isa active() {
  static const Isa chosen = [] {
    if (const char* env = std::getenv("WIREGRID_ISA"); env && std::string_view(env) == "scalar") return Isa::Scalar;
    return supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
  }();
  return chosen;
}

std::string to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void grating_amplitude(const GratingParams& p, std::span<const double> theta, std::span<double> out, Isa isa) {
  if (!supported(isa)) throw std::invalid_argument("grating_amplitude: unsupported ISA " + to_string(isa));
#ifdef WIREGRID_HAVE_AVX2_KERNELS
  if (isa == Isa::Avx2) return avx2::grating_amplitude(p, theta, out);
#endif
  scalar::grating_amplitude(p, theta, out);
}

void six_slit_intensity(const SixSlitParams& p, std::span<const double> theta, std::span<double> out, Isa isa) {
  if (!supported(isa)) throw std::invalid_argument("six_slit_intensity: unsupported ISA " + to_string(isa));
#ifdef WIREGRID_HAVE_AVX2_KERNELS
  if (isa == Isa::Avx2) return avx2::six_slit_intensity(p, theta, out);
#endif
  scalar::six_slit_intensity(p, theta, out);
}

}  // namespace wiregrid::kernels
