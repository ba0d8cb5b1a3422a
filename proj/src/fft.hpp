#pragma once

// Thin RAII wrapper over FFTW plans (internal header).

#include <complex>
#include <cstddef>

namespace dnls::fft {

enum class Direction { forward, backward };

// Unnormalised DFT of fixed length. Plans are created with FFTW_ESTIMATE so
// results are reproducible run to run; execute() is thread-safe.
class Plan {
public:
    Plan(std::size_t n, Direction dir);
    ~Plan();
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;

    std::size_t size() const { return n_; }
    void execute(const std::complex<double>* in, std::complex<double>* out) const;

private:
    std::size_t n_;
    void* plan_;
};

} // namespace dnls::fft
