#include "qnk/kernels.hpp"

#include <arm_neon.h>

namespace qnk::kernels {

std::complex<double> lattice_sum_neon(const LatticeSumView& v) {
  float64x2_t acc_re = vdupq_n_f64(0.0);
  float64x2_t acc_im = vdupq_n_f64(0.0);
  std::size_t j = 0;
  for (; j + 2 <= v.terms; j += 2) {
    float64x2_t pr = vld1q_f64(v.coef_re + j);
    float64x2_t pi = vld1q_f64(v.coef_im + j);
    for (std::size_t d = 0; d < v.dims; ++d) {
      const std::int32_t* o = v.offsets + d * v.terms + j;
      float64x2_t tr = {v.table_re[o[0]], v.table_re[o[1]]};
      float64x2_t ti = {v.table_im[o[0]], v.table_im[o[1]]};
      float64x2_t nr = vfmsq_f64(vmulq_f64(pr, tr), pi, ti);
      pi = vfmaq_f64(vmulq_f64(pi, tr), pr, ti);
      pr = nr;
    }
    acc_re = vaddq_f64(acc_re, pr);
    acc_im = vaddq_f64(acc_im, pi);
  }
  double re = vaddvq_f64(acc_re), im = vaddvq_f64(acc_im);
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
