// Compiled with -mavx2 -ffp-contract=off; dispatched to only after a runtime
// CPU check.

#include <immintrin.h>

#include "polyadic/kernels.hpp"

namespace polyadic::kernels {

void encode_slope_avx2(const SlopeCoding& coding, std::span<const double> x, std::span<double> value,
                       std::span<double> slope) {
  const int r = coding.alphabet_size;
  const std::size_t lanes = 4;
  const std::size_t full = x.size() / lanes * lanes;

  for (std::size_t i = 0; i < full; i += lanes) {
    const __m256d xi = _mm256_loadu_pd(x.data() + i);
    // x = 1 stays on the top letter whatever the rounding of lo does
    const __m256d at_top = _mm256_cmp_pd(xi, _mm256_set1_pd(1.0), _CMP_GE_OQ);
    __m256d lo = _mm256_setzero_pd();
    __m256d width = _mm256_set1_pd(1.0);
    __m256d v = _mm256_setzero_pd();
    __m256d s = _mm256_setzero_pd();
    __m256d wv = _mm256_set1_pd(1.0);
    __m256d ws = _mm256_setzero_pd();

    for (int depth = 0; depth < coding.depth; ++depth) {
      // Letter 0 tables, overwritten lane by lane for every boundary at or
      // below x.
      __m256d cum = _mm256_set1_pd(coding.cumulative[0]);
      __m256d wt = _mm256_set1_pd(coding.weight[0]);
      __m256d cv = _mm256_set1_pd(coding.cum_value[0]);
      __m256d cs = _mm256_set1_pd(coding.cum_slope[0]);
      __m256d wtv = _mm256_set1_pd(coding.weight_value[0]);
      __m256d wts = _mm256_set1_pd(coding.weight_slope[0]);
      for (int b = 1; b < r; ++b) {
        const std::size_t k = static_cast<std::size_t>(b);
        const __m256d bound = _mm256_add_pd(lo, _mm256_mul_pd(width, _mm256_set1_pd(coding.cumulative[k])));
        const __m256d take = _mm256_or_pd(_mm256_cmp_pd(bound, xi, _CMP_LE_OQ), at_top);
        cum = _mm256_blendv_pd(cum, _mm256_set1_pd(coding.cumulative[k]), take);
        wt = _mm256_blendv_pd(wt, _mm256_set1_pd(coding.weight[k]), take);
        cv = _mm256_blendv_pd(cv, _mm256_set1_pd(coding.cum_value[k]), take);
        cs = _mm256_blendv_pd(cs, _mm256_set1_pd(coding.cum_slope[k]), take);
        wtv = _mm256_blendv_pd(wtv, _mm256_set1_pd(coding.weight_value[k]), take);
        wts = _mm256_blendv_pd(wts, _mm256_set1_pd(coding.weight_slope[k]), take);
      }
      lo = _mm256_add_pd(lo, _mm256_mul_pd(width, cum));
      width = _mm256_mul_pd(width, wt);
      const __m256d nv = _mm256_mul_pd(wv, cv);
      const __m256d ns = _mm256_add_pd(_mm256_mul_pd(wv, cs), _mm256_mul_pd(ws, cv));
      v = _mm256_add_pd(v, nv);
      s = _mm256_add_pd(s, ns);
      const __m256d tv = _mm256_mul_pd(wv, wtv);
      const __m256d ts = _mm256_add_pd(_mm256_mul_pd(wv, wts), _mm256_mul_pd(ws, wtv));
      wv = tv;
      ws = ts;
    }
    _mm256_storeu_pd(value.data() + i, v);
    _mm256_storeu_pd(slope.data() + i, s);
  }

  if (full < x.size()) {
    encode_slope_scalar(coding, x.subspan(full), value.subspan(full), slope.subspan(full));
  }
}

}  // namespace polyadic::kernels
