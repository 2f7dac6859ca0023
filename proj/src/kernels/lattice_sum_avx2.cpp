#include "qnk/kernels.hpp"

#include <immintrin.h>

namespace qnk::kernels {

namespace {

inline double hsum(__m256d x) {
  __m128d lo = _mm256_castpd256_pd128(x);
  __m128d hi = _mm256_extractf128_pd(x, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sw = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sw));
}

}  // namespace

std::complex<double> lattice_sum_avx2(const LatticeSumView& v) {
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= v.terms; j += 4) {
    __m256d pr = _mm256_loadu_pd(v.coef_re + j);
    __m256d pi = _mm256_loadu_pd(v.coef_im + j);
    for (std::size_t d = 0; d < v.dims; ++d) {
      __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(v.offsets + d * v.terms + j));
      __m256d tr = _mm256_i32gather_pd(v.table_re, idx, 8);
      __m256d ti = _mm256_i32gather_pd(v.table_im, idx, 8);
      __m256d nr = _mm256_fmsub_pd(pr, tr, _mm256_mul_pd(pi, ti));
      pi = _mm256_fmadd_pd(pr, ti, _mm256_mul_pd(pi, tr));
      pr = nr;
    }
    acc_re = _mm256_add_pd(acc_re, pr);
    acc_im = _mm256_add_pd(acc_im, pi);
  }
  double re = hsum(acc_re), im = hsum(acc_im);
  for (; j < v.terms; ++j) {
    double pr = v.coef_re[j], pi = v.coef_im[j];
    for (std::size_t d = 0; d < v.dims; ++d) {
      std::int32_t o = v.offsets[d * v.terms + j];
      double tr = v.table_re[o], ti = v.table_im[o];
      double nr = pr * tr - pi * ti;
      pi = pr * ti + pi * tr;
      pr = nr;
    }
    re += pr;
    im += pi;
  }
  return {re, im};
}

}  // namespace qnk::kernels
