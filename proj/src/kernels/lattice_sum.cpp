#include "qnk/kernels.hpp"

#include "qnk/bigint.hpp"

#include <atomic>

namespace qnk::kernels {

std::complex<double> lattice_sum_scalar(const LatticeSumView& v) {
  double acc_re = 0, acc_im = 0;
  for (std::size_t j = 0; j < v.terms; ++j) {
    double pr = v.coef_re[j], pi = v.coef_im[j];
    for (std::size_t d = 0; d < v.dims; ++d) {
      std::int32_t o = v.offsets[d * v.terms + j];
      double tr = v.table_re[o], ti = v.table_im[o];
      double nr = pr * tr - pi * ti;
      pi = pr * ti + pi * tr;
      pr = nr;
    }
    acc_re += pr;
    acc_im += pi;
  }
  return {acc_re, acc_im};
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(QNK_BUILD_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(QNK_BUILD_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

std::complex<double> lattice_sum_with(Isa isa, const LatticeSumView& v) {
  if (!isa_available(isa)) throw PreconditionError("kernel variant not available on this CPU");
  switch (isa) {
#if defined(QNK_BUILD_AVX2)
    case Isa::Avx2: return lattice_sum_avx2(v);
#endif
#if defined(QNK_BUILD_NEON)
    case Isa::Neon: return lattice_sum_neon(v);
#endif
    default: return lattice_sum_scalar(v);
  }
}

namespace {

Isa detect() {
  if (isa_available(Isa::Avx2)) return Isa::Avx2;
  if (isa_available(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void select_isa(Isa isa) {
  if (!isa_available(isa)) throw PreconditionError("kernel variant not available on this CPU");
  current().store(isa, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

std::complex<double> lattice_sum(const LatticeSumView& v) { return lattice_sum_with(active_isa(), v); }

}  // namespace qnk::kernels
