#include "fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <vector>

namespace dnls::fft {

namespace {
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}
} // namespace

Plan::Plan(std::size_t n, Direction dir) : n_(n)
{
    std::vector<std::complex<double>> a(n), b(n);
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_ = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(a.data()),
                             reinterpret_cast<fftw_complex*>(b.data()),
                             dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
}

Plan::~Plan()
{
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
}

void Plan::execute(const std::complex<double>* in, std::complex<double>* out) const
{
    fftw_execute_dft(static_cast<fftw_plan>(plan_),
                     reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

} // namespace dnls::fft
