#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace qnk::kernels {

/// Sum over terms j of coef_j * prod_d table[offsets[d*terms + j]].
/// Arrays are split into real and imaginary parts; offsets are dimension-major.
struct LatticeSumView {
  const double* coef_re;
  const double* coef_im;
  const std::int32_t* offsets;
  std::size_t terms;
  std::size_t dims;
  const double* table_re;
  const double* table_im;
};

enum class Isa { Scalar, Avx2, Neon };

std::complex<double> lattice_sum_scalar(const LatticeSumView& v);
#if defined(QNK_BUILD_AVX2)
std::complex<double> lattice_sum_avx2(const LatticeSumView& v);
#endif
#if defined(QNK_BUILD_NEON)
std::complex<double> lattice_sum_neon(const LatticeSumView& v);
#endif

/// Dispatched entry point; the variant is chosen once from CPU features.
std::complex<double> lattice_sum(const LatticeSumView& v);

/// Whether `isa` was compiled in and is supported by this CPU.
bool isa_available(Isa isa);
/// Runs a specific variant; throws if unavailable.
std::complex<double> lattice_sum_with(Isa isa, const LatticeSumView& v);
Isa active_isa();
/// Overrides the dispatched variant (for equivalence testing and benchmarking).
void select_isa(Isa isa);
std::string_view isa_name(Isa isa);

}  // namespace qnk::kernels
