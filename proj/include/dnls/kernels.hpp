#pragma once

#include <complex>
#include <cstddef>

namespace dnls::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

// Best instruction set available on this CPU, unless overridden.
Isa active_isa();
bool isa_supported(Isa isa);
// Override for testing; throws if the CPU lacks the requested set.
void force_isa(Isa isa);
void reset_isa();

// Trapezoid-weighted Cauchy sum  sum_j w_j f_j / (s_j - z),  s_j = s0 + j h,
// w_j = 1 except w_0 = w_{n-1} = 1/2.
cplx cauchy_sum(const cplx* f, std::size_t n, double s0, double h, cplx z);

// out_j = a_j * b_j (out may alias a or b).
void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n);

namespace scalar {
cplx cauchy_sum(const cplx* f, std::size_t n, double s0, double h, cplx z);
void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n);
} // namespace scalar

namespace avx2 {
cplx cauchy_sum(const cplx* f, std::size_t n, double s0, double h, cplx z);
void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n);
} // namespace avx2

} // namespace dnls::kernels
