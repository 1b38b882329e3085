// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>
#include <stdexcept>

#include "wiregrid/kernels.hpp"
#include "wiregrid/numerics.hpp"

namespace wiregrid::kernels::avx2 {

namespace {

// Cody-Waite split of pi/4 and minimax coefficients from Cephes sin.c.
constexpr double kDP1 = 7.85398125648498535156e-1;
constexpr double kDP2 = 3.77489470793079817668e-8;
constexpr double kDP3 = 2.69515142907905952645e-15;
constexpr double kFourOverPi = 1.27323954473516268615;

constexpr double kSinCoef[6] = {1.58962301576546568060e-10, -2.50507477628578072866e-8,
                                2.75573136213857245213e-6,  -1.98412698295895385996e-4,
                                8.33333333332211858878e-3,  -1.66666666666666307295e-1};
constexpr double kCosCoef[6] = {-1.13585365213876817300e-11, 2.08757008419747316778e-9,
                                -2.75573141792967388112e-7,  2.48015872888517045348e-5,
                                -1.38888888888730564116e-3,  4.16666666666665929218e-2};

inline __m256d set(double v) { return _mm256_set1_pd(v); }

inline __m256d abs_pd(__m256d x) { return _mm256_andnot_pd(set(-0.0), x); }

inline __m256d poly(__m256d z, const double (&c)[6]) {
  __m256d r = set(c[0]);
  for (int i = 1; i < 6; ++i) r = _mm256_fmadd_pd(r, z, set(c[i]));
  return r;
}

inline void sincos4(__m256d x, __m256d& s, __m256d& c) {
  const __m256d sign_x = _mm256_and_pd(x, set(-0.0));
  const __m256d ax = abs_pd(x);

  __m256d y = _mm256_round_pd(_mm256_mul_pd(ax, set(kFourOverPi)), _MM_FROUND_TO_NEG_INF | _MM_FROUND_NO_EXC);
  // Octant j = y mod 8, bumped to the next even octant.
  __m256d j = _mm256_sub_pd(y, _mm256_mul_pd(set(8.0), _mm256_round_pd(_mm256_mul_pd(y, set(0.125)),
                                                                       _MM_FROUND_TO_NEG_INF | _MM_FROUND_NO_EXC)));
  const __m256d odd = _mm256_cmp_pd(_mm256_sub_pd(j, _mm256_mul_pd(set(2.0), _mm256_round_pd(
                                                                               _mm256_mul_pd(j, set(0.5)),
                                                                               _MM_FROUND_TO_NEG_INF |
                                                                                   _MM_FROUND_NO_EXC))),
                                    set(0.5), _CMP_GT_OQ);
  y = _mm256_add_pd(y, _mm256_and_pd(odd, set(1.0)));
  j = _mm256_add_pd(j, _mm256_and_pd(odd, set(1.0)));
  j = _mm256_blendv_pd(j, set(0.0), _mm256_cmp_pd(j, set(7.5), _CMP_GT_OQ));

  __m256d z = _mm256_fnmadd_pd(y, set(kDP1), ax);
  z = _mm256_fnmadd_pd(y, set(kDP2), z);
  z = _mm256_fnmadd_pd(y, set(kDP3), z);
  const __m256d zz = _mm256_mul_pd(z, z);

  const __m256d ps = _mm256_fmadd_pd(_mm256_mul_pd(z, zz), poly(zz, kSinCoef), z);
  const __m256d pc = _mm256_fmadd_pd(_mm256_mul_pd(zz, zz), poly(zz, kCosCoef),
                                     _mm256_fnmadd_pd(set(0.5), zz, set(1.0)));

  // j in {0, 2, 4, 6}: sin = ps, pc, -ps, -pc ; cos = pc, -ps, -pc, ps.
  const __m256d swap = _mm256_or_pd(_mm256_cmp_pd(j, set(2.0), _CMP_EQ_OQ), _mm256_cmp_pd(j, set(6.0), _CMP_EQ_OQ));
  const __m256d sin_neg = _mm256_cmp_pd(j, set(3.0), _CMP_GT_OQ);
  const __m256d cos_neg = _mm256_or_pd(_mm256_cmp_pd(j, set(2.0), _CMP_EQ_OQ), _mm256_cmp_pd(j, set(4.0), _CMP_EQ_OQ));

  __m256d sv = _mm256_blendv_pd(ps, pc, swap);
  __m256d cv = _mm256_blendv_pd(pc, ps, swap);
  sv = _mm256_xor_pd(sv, _mm256_and_pd(sin_neg, set(-0.0)));
  cv = _mm256_xor_pd(cv, _mm256_and_pd(cos_neg, set(-0.0)));
  s = _mm256_xor_pd(sv, sign_x);
  c = cv;
}

inline __m256d sin4(__m256d x) {
  __m256d s, c;
  sincos4(x, s, c);
  return s;
}

inline __m256d sinc4(__m256d x) {
  const __m256d small = _mm256_cmp_pd(abs_pd(x), set(1e-7), _CMP_LT_OQ);
  const __m256d series = _mm256_fnmadd_pd(_mm256_mul_pd(x, x), set(1.0 / 6.0), set(1.0));
  // Keep the division finite in the masked-out lanes.
  const __m256d safe = _mm256_blendv_pd(x, set(1.0), small);
  return _mm256_blendv_pd(_mm256_div_pd(sin4(safe), safe), series, small);
}

inline __m256d n_slit_ratio4(int n, __m256d y) {
  constexpr double kPiHi = 3.141592653589793116;
  constexpr double kPiLo = 1.2246467991473532e-16;
  const __m256d m = _mm256_round_pd(_mm256_div_pd(y, set(kPiHi)), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  const __m256d eps = _mm256_fnmadd_pd(m, set(kPiLo), _mm256_fnmadd_pd(m, set(kPiHi), y));
  const __m256d k = _mm256_mul_pd(abs_pd(m), set(static_cast<double>(n - 1)));
  const __m256d parity = _mm256_sub_pd(
      k, _mm256_mul_pd(set(2.0), _mm256_round_pd(_mm256_mul_pd(k, set(0.5)), _MM_FROUND_TO_NEG_INF | _MM_FROUND_NO_EXC)));
  const __m256d negative = _mm256_cmp_pd(parity, set(0.0), _CMP_NEQ_OQ);

  const __m256d small = _mm256_cmp_pd(abs_pd(eps), set(1e-7), _CMP_LT_OQ);
  const double nn = static_cast<double>(n) * n;
  const __m256d series = _mm256_fnmadd_pd(_mm256_mul_pd(eps, eps), set((nn - 1.0) / 6.0), set(1.0));
  const __m256d safe = _mm256_blendv_pd(eps, set(0.5), small);
  const __m256d direct = _mm256_div_pd(sin4(_mm256_mul_pd(set(static_cast<double>(n)), safe)),
                                       _mm256_mul_pd(set(static_cast<double>(n)), sin4(safe)));
  const __m256d r = _mm256_blendv_pd(direct, series, small);
  return _mm256_xor_pd(r, _mm256_and_pd(negative, set(-0.0)));
}

inline __m256d linear_slit_shape4(__m256d t) {
  const __m256d t2 = _mm256_mul_pd(t, t);
  const __m256d series =
      _mm256_fmadd_pd(t2, _mm256_fmadd_pd(t2, set(-1.0 / 420.0), set(1.0 / 15.0)), set(-2.0 / 3.0));
  const __m256d small = _mm256_cmp_pd(abs_pd(t), set(1e-2), _CMP_LT_OQ);
  const __m256d safe = _mm256_blendv_pd(t, set(1.0), small);
  __m256d s, c;
  sincos4(safe, s, c);
  const __m256d num = _mm256_sub_pd(_mm256_mul_pd(set(2.0), _mm256_mul_pd(safe, c)), _mm256_mul_pd(set(2.0), s));
  const __m256d direct = _mm256_div_pd(num, _mm256_mul_pd(safe, _mm256_mul_pd(safe, safe)));
  return _mm256_blendv_pd(direct, series, small);
}

template <class Vector, class Scalar>
void run(std::span<const double> in, std::span<double> out, Vector vec, Scalar sca) {
  if (in.size() != out.size()) throw std::invalid_argument("kernel: input and output sizes differ");
  std::size_t i = 0;
  for (; i + 4 <= in.size(); i += 4) _mm256_storeu_pd(out.data() + i, vec(_mm256_loadu_pd(in.data() + i)));
  for (; i < in.size(); ++i) out[i] = sca(in[i]);
}

}  // namespace

void sincos(std::span<const double> x, std::span<double> s, std::span<double> c) {
  if (x.size() != s.size() || x.size() != c.size()) throw std::invalid_argument("sincos: size mismatch");
  std::size_t i = 0;
  for (; i + 4 <= x.size(); i += 4) {
    __m256d vs, vc;
    sincos4(_mm256_loadu_pd(x.data() + i), vs, vc);
    _mm256_storeu_pd(s.data() + i, vs);
    _mm256_storeu_pd(c.data() + i, vc);
  }
  for (; i < x.size(); ++i) {
    alignas(32) double lane[4] = {x[i], 0.0, 0.0, 0.0};
    __m256d vs, vc;
    sincos4(_mm256_load_pd(lane), vs, vc);
    alignas(32) double rs[4], rc[4];
    _mm256_store_pd(rs, vs);
    _mm256_store_pd(rc, vc);
    s[i] = rs[0];
    c[i] = rc[0];
  }
}

void grating_amplitude(const GratingParams& p, std::span<const double> theta, std::span<double> out) {
  const __m256d beta = set(p.beta);
  const __m256d gamma = set(p.gamma);
  run(
      theta, out,
      [&](__m256d t) {
        const __m256d s = sin4(t);
        return _mm256_mul_pd(sinc4(_mm256_mul_pd(beta, s)), n_slit_ratio4(p.count, _mm256_mul_pd(gamma, s)));
      },
      [&](double t) { return scalar::grating_amplitude(p, t); });
}

void six_slit_intensity(const SixSlitParams& p, std::span<const double> theta, std::span<double> out) {
  const double half_b = 0.5 * p.thickness;
  const double b3 = half_b * half_b * half_b;
  const __m256d k = set(p.wave_number);
  const __m256d hb = set(half_b);
  const __m256d half_d = set(0.5 * p.pitch);
  const __m256d prefactor = set(p.scale * (b3 * b3));
  run(
      theta, out,
      [&](__m256d t) {
        const __m256d x = _mm256_mul_pd(k, sin4(t));
        const __m256d h = linear_slit_shape4(_mm256_mul_pd(hb, x));
        const __m256d phase = _mm256_mul_pd(half_d, x);
        const __m256d s = _mm256_add_pd(_mm256_sub_pd(sin4(phase), sin4(_mm256_mul_pd(set(3.0), phase))),
                                        sin4(_mm256_mul_pd(set(5.0), phase)));
        const __m256d hx = _mm256_mul_pd(h, x);
        const __m256d hxs = _mm256_mul_pd(hx, s);
        return _mm256_mul_pd(prefactor, _mm256_mul_pd(hxs, hxs));
      },
      [&](double t) { return scalar::six_slit_intensity(p, t); });
}

}  // namespace wiregrid::kernels::avx2
