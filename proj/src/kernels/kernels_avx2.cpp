// AVX2 + FMA variants. This translation unit is the only one compiled with
// -mavx2 -mfma; nothing here may be called unless the CPU check in
// kernels_dispatch.cpp passed.

#include <immintrin.h>

#include <cfloat>
#include <cmath>
#include <cstdint>
#include <vector>

#include "kernels_internal.hpp"

namespace timqd::kernels {

namespace {

constexpr std::size_t kLanes = 4;

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// log2 for finite, positive, normal inputs. Splits x = 2^e m with
// m in [sqrt(1/2), sqrt(2)) and uses ln m = 2 atanh(t), t = (m-1)/(m+1),
// |t| <= 0.1716, truncated after t^21 (remainder < 1e-18 relative).
inline __m256d log2_pd(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
  const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
  __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));

  // Biased exponent -> double via the 2^52 magic-number trick (AVX2 has no
  // int64 -> double conversion).
  const __m256i exp_bits = _mm256_srli_epi64(bits, 52);
  const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);
  __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(exp_bits, magic)),
                            _mm256_set1_pd(4503599627370496.0 + 1023.0));

  const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(1.4142135623730951), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
  e = _mm256_add_pd(e, _mm256_and_pd(big, _mm256_set1_pd(1.0)));

  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d t = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
  const __m256d t2 = _mm256_mul_pd(t, t);

  __m256d poly = _mm256_set1_pd(1.0 / 21.0);
  poly = _mm256_fmadd_pd(poly, t2, _mm256_set1_pd(1.0 / 19.0));
  poly = _mm256_fmadd_pd(poly, t2, _mm256_set1_pd(1.0 / 17.0));
  poly = _mm256_fmadd_pd(poly, t2, _mm256_set1_pd(1.0 / 15.0));
  poly = _mm256_fmadd_pd(poly, t2, _mm256_set1_pd(1.0 / 13.0));
  poly = _mm256_fmadd_pd(poly, t2, _mm256_set1_pd(1.0 / 11.0));
  poly = _mm256_fmadd_pd(poly, t2, _mm256_set1_pd(1.0 / 9.0));
  poly = _mm256_fmadd_pd(poly, t2, _mm256_set1_pd(1.0 / 7.0));
  poly = _mm256_fmadd_pd(poly, t2, _mm256_set1_pd(1.0 / 5.0));
  poly = _mm256_fmadd_pd(poly, t2, _mm256_set1_pd(1.0 / 3.0));
  poly = _mm256_fmadd_pd(poly, t2, one);

  // 2 / ln 2
  const __m256d ln_m_over_ln2 = _mm256_mul_pd(_mm256_mul_pd(t, poly), _mm256_set1_pd(2.8853900817779268));
  return _mm256_add_pd(e, ln_m_over_ln2);
}

// -p log2 p - q log2 q for p = (1 + x) / 2, q = (1 - x) / 2, x clamped to [0, 1].
inline __m256d binary_entropy_pd(__m256d x) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  x = _mm256_andnot_pd(sign_mask, x);
  x = _mm256_min_pd(x, _mm256_set1_pd(1.0));
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d p = _mm256_fmadd_pd(half, x, half);
  const __m256d q = _mm256_fnmadd_pd(half, x, half);
  const __m256d tiny = _mm256_set1_pd(DBL_MIN);
  const __m256d lp = log2_pd(_mm256_max_pd(p, tiny));
  const __m256d lq = log2_pd(_mm256_max_pd(q, tiny));
  // p * lp is exactly 0 when p == 0 since lp is finite.
  return _mm256_sub_pd(_mm256_setzero_pd(), _mm256_fmadd_pd(p, lp, _mm256_mul_pd(q, lq)));
}

void g_moments_avx2(double lambda, int kmax, std::span<const double> cos_phi,
                    std::span<const double> sin_phi, std::span<double> acc) {
  const std::size_t n = cos_phi.size();
  const std::size_t components = 2 * static_cast<std::size_t>(kmax + 1);
  // Lane-wise partial sums, kLanes doubles per component.
  std::vector<double> lanes(components * kLanes, 0.0);
  auto slot = [&](std::size_t k) { return lanes.data() + k * kLanes; };

  const __m256d vl = _mm256_set1_pd(lambda);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d zero = _mm256_setzero_pd();

  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d c = _mm256_loadu_pd(cos_phi.data() + i);
    const __m256d s = _mm256_loadu_pd(sin_phi.data() + i);
    const __m256d re = _mm256_fmadd_pd(vl, c, one);
    const __m256d im = _mm256_mul_pd(vl, s);
    const __m256d omega = _mm256_sqrt_pd(_mm256_fmadd_pd(im, im, _mm256_mul_pd(re, re)));
    const __m256d gapless = _mm256_cmp_pd(omega, zero, _CMP_EQ_OQ);
    const __m256d safe_omega = _mm256_blendv_pd(omega, one, gapless);
    const __m256d A = _mm256_blendv_pd(_mm256_div_pd(re, safe_omega), zero, gapless);
    const __m256d B = _mm256_blendv_pd(_mm256_div_pd(im, safe_omega), one, gapless);

    __m256d c_prev = one, c_cur = c;
    __m256d s_prev = zero, s_cur = s;
    _mm256_storeu_pd(slot(0), _mm256_add_pd(_mm256_loadu_pd(slot(0)), A));
    for (int k = 1; k <= kmax; ++k) {
      double* ck = slot(2 * static_cast<std::size_t>(k));
      double* sk = ck + kLanes;
      _mm256_storeu_pd(ck, _mm256_fmadd_pd(c_cur, A, _mm256_loadu_pd(ck)));
      _mm256_storeu_pd(sk, _mm256_fmadd_pd(s_cur, B, _mm256_loadu_pd(sk)));
      const __m256d c2 = _mm256_mul_pd(two, c);
      const __m256d c_next = _mm256_fmsub_pd(c2, c_cur, c_prev);
      const __m256d s_next = _mm256_fmsub_pd(c2, s_cur, s_prev);
      c_prev = c_cur;
      c_cur = c_next;
      s_prev = s_cur;
      s_cur = s_next;
    }
  }
  for (std::size_t k = 0; k < components; ++k) acc[k] += hsum(_mm256_loadu_pd(slot(k)));

  if (i < n) {
    scalar_table().g_moments(lambda, kmax, cos_phi.subspan(i), sin_phi.subspan(i), acc);
  }
}

void conditional_entropy_avx2(const BlochCoefficients& bl, std::span<const double> nx,
                              std::span<const double> ny, std::span<const double> nz,
                              std::span<double> out) {
  const std::size_t n = nx.size();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d min_weight = _mm256_set1_pd(kMinOutcomeWeight);

  __m256d r[3], s[3], t[3][3];
  for (int a = 0; a < 3; ++a) {
    r[a] = _mm256_set1_pd(bl.r[a]);
    s[a] = _mm256_set1_pd(bl.s[a]);
    for (int b = 0; b < 3; ++b) t[a][b] = _mm256_set1_pd(bl.t[a][b]);
  }

  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d dir[3] = {_mm256_loadu_pd(nx.data() + i), _mm256_loadu_pd(ny.data() + i),
                            _mm256_loadu_pd(nz.data() + i)};
    const __m256d sn =
        _mm256_fmadd_pd(s[2], dir[2], _mm256_fmadd_pd(s[1], dir[1], _mm256_mul_pd(s[0], dir[0])));
    __m256d tn[3];
    for (int a = 0; a < 3; ++a) {
      tn[a] = _mm256_fmadd_pd(t[a][2], dir[2],
                              _mm256_fmadd_pd(t[a][1], dir[1], _mm256_mul_pd(t[a][0], dir[0])));
    }

    __m256d total = _mm256_setzero_pd();
    for (int branch = 0; branch < 2; ++branch) {
      const bool plus = branch == 0;
      const __m256d weight = plus ? _mm256_add_pd(one, sn) : _mm256_sub_pd(one, sn);
      const __m256d live = _mm256_cmp_pd(weight, min_weight, _CMP_GT_OQ);
      const __m256d safe_weight = _mm256_blendv_pd(one, weight, live);
      __m256d norm2 = _mm256_setzero_pd();
      for (int a = 0; a < 3; ++a) {
        const __m256d v = plus ? _mm256_add_pd(r[a], tn[a]) : _mm256_sub_pd(r[a], tn[a]);
        norm2 = _mm256_fmadd_pd(v, v, norm2);
      }
      const __m256d x = _mm256_div_pd(_mm256_sqrt_pd(norm2), safe_weight);
      const __m256d h = binary_entropy_pd(x);
      const __m256d term = _mm256_mul_pd(_mm256_mul_pd(half, weight), h);
      total = _mm256_add_pd(total, _mm256_and_pd(live, term));
    }
    _mm256_storeu_pd(out.data() + i, total);
  }

  if (i < n) {
    scalar_table().conditional_entropy(bl, nx.subspan(i), ny.subspan(i), nz.subspan(i),
                                       out.subspan(i));
  }
}

void log2_avx2(std::span<const double> x, std::span<double> out) {
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    _mm256_storeu_pd(out.data() + i, log2_pd(_mm256_loadu_pd(x.data() + i)));
  }
  for (; i < n; ++i) out[i] = std::log2(x[i]);
}

constexpr KernelTable kAvx2Table{"avx2", &g_moments_avx2, &conditional_entropy_avx2, &log2_avx2};

}  // namespace

const KernelTable& avx2_table_unchecked() { return kAvx2Table; }

}  // namespace timqd::kernels
