#include "dnls/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace dnls::kernels {

namespace {

bool cpu_has_avx2()
{
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa detect()
{
    return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<int> forced{-1};

} // namespace

bool isa_supported(Isa isa)
{
    return isa == Isa::scalar || (isa == Isa::avx2 && cpu_has_avx2());
}

Isa active_isa()
{
    static const Isa best = detect();
    const int f = forced.load(std::memory_order_relaxed);
    return f < 0 ? best : static_cast<Isa>(f);
}

void force_isa(Isa isa)
{
    if (!isa_supported(isa))
        throw std::runtime_error("requested instruction set not supported by this CPU");
    forced.store(static_cast<int>(isa), std::memory_order_relaxed);
}

void reset_isa()
{
    forced.store(-1, std::memory_order_relaxed);
}

cplx cauchy_sum(const cplx* f, std::size_t n, double s0, double h, cplx z)
{
    if (active_isa() == Isa::avx2)
        return avx2::cauchy_sum(f, n, s0, h, z);
    return scalar::cauchy_sum(f, n, s0, h, z);
}

void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n)
{
    if (active_isa() == Isa::avx2)
        avx2::cmul(a, b, out, n);
    else
        scalar::cmul(a, b, out, n);
}

namespace scalar {

cplx cauchy_sum(const cplx* f, std::size_t n, double s0, double h, cplx z)
{
    double sr = 0.0, si = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double dr = s0 + static_cast<double>(j) * h - z.real();
        const double di = -z.imag();
        const double inv = 1.0 / (dr * dr + di * di);
        // f / d = f * conj(d) / |d|^2
        const double fr = f[j].real(), fi = f[j].imag();
        double w = inv;
        if (j == 0 || j + 1 == n)
            w *= 0.5;
        sr += (fr * dr + fi * di) * w;
        si += (fi * dr - fr * di) * w;
    }
    return {sr, si};
}

void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n)
{
    for (std::size_t j = 0; j < n; ++j) {
        const double ar = a[j].real(), ai = a[j].imag();
        const double br = b[j].real(), bi = b[j].imag();
        out[j] = cplx(ar * br - ai * bi, ar * bi + ai * br);
    }
}

} // namespace scalar

} // namespace dnls::kernels
