// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include "dnls/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#define DNLS_HAVE_AVX2 1
#endif

namespace dnls::kernels::avx2 {

#ifdef DNLS_HAVE_AVX2

// Four nodes per iteration, real and imaginary parts held in separate lanes.
cplx cauchy_sum(const cplx* f, std::size_t n, double s0, double h, cplx z)
{
    if (n < 2)
        return scalar::cauchy_sum(f, n, s0, h, z);

    const double* fp = reinterpret_cast<const double*>(f);
    const __m256d vzr = _mm256_set1_pd(z.real());
    const __m256d vdi = _mm256_set1_pd(-z.imag());
    const __m256d vdi2 = _mm256_mul_pd(vdi, vdi);
    const __m256d vh = _mm256_set1_pd(h);
    const __m256d vs0 = _mm256_set1_pd(s0);
    const __m256d one = _mm256_set1_pd(1.0);
    __m256d accr = _mm256_setzero_pd();
    __m256d acci = _mm256_setzero_pd();

    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d idx = _mm256_set_pd(double(j + 3), double(j + 2), double(j + 1), double(j));
        const __m256d dr = _mm256_sub_pd(_mm256_fmadd_pd(idx, vh, vs0), vzr);
        const __m256d inv = _mm256_div_pd(one, _mm256_fmadd_pd(dr, dr, vdi2));
        // deinterleave f[j..j+3]
        const __m256d a = _mm256_loadu_pd(fp + 2 * j);     // r0 i0 r1 i1
        const __m256d b = _mm256_loadu_pd(fp + 2 * j + 4); // r2 i2 r3 i3
        const __m256d lo = _mm256_permute2f128_pd(a, b, 0x20); // r0 i0 r2 i2
        const __m256d hi = _mm256_permute2f128_pd(a, b, 0x31); // r1 i1 r3 i3
        __m256d fr = _mm256_unpacklo_pd(lo, hi); // r0 r1 r2 r3
        __m256d fi = _mm256_unpackhi_pd(lo, hi); // i0 i1 i2 i3
        fr = _mm256_mul_pd(fr, inv);
        fi = _mm256_mul_pd(fi, inv);
        accr = _mm256_fmadd_pd(fr, dr, accr);
        accr = _mm256_fmadd_pd(fi, vdi, accr);
        acci = _mm256_fmadd_pd(fi, dr, acci);
        acci = _mm256_fnmadd_pd(fr, vdi, acci);
    }
    alignas(32) double rr[4], ii[4];
    _mm256_store_pd(rr, accr);
    _mm256_store_pd(ii, acci);
    cplx total((rr[0] + rr[1]) + (rr[2] + rr[3]), (ii[0] + ii[1]) + (ii[2] + ii[3]));
    auto term = [&](std::size_t k) {
        return f[k] / cplx(s0 + double(k) * h - z.real(), -z.imag());
    };
    for (; j < n; ++j)
        total += term(j);
    total -= 0.5 * (term(0) + term(n - 1));
    return total;
}

void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n)
{
    const double* ap = reinterpret_cast<const double*>(a);
    const double* bp = reinterpret_cast<const double*>(b);
    double* op = reinterpret_cast<double*>(out);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const __m256d va = _mm256_loadu_pd(ap + 2 * j);
        const __m256d vb = _mm256_loadu_pd(bp + 2 * j);
        const __m256d br = _mm256_movedup_pd(vb);           // br br
        const __m256d bi = _mm256_permute_pd(vb, 0xF);      // bi bi
        const __m256d asw = _mm256_permute_pd(va, 0x5);     // ai ar
        const __m256d t = _mm256_mul_pd(asw, bi);           // ai*bi ar*bi
        _mm256_storeu_pd(op + 2 * j, _mm256_fmaddsub_pd(va, br, t));
    }
    if (j < n)
        scalar::cmul(a + j, b + j, out + j, n - j);
}

#else

cplx cauchy_sum(const cplx* f, std::size_t n, double s0, double h, cplx z)
{
    return scalar::cauchy_sum(f, n, s0, h, z);
}

void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n)
{
    scalar::cmul(a, b, out, n);
}

#endif

} // namespace dnls::kernels::avx2
