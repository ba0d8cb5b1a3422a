#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace dnls {

using cplx = std::complex<double>;

// Uniform grid of n points including both end points.
class Grid {
public:
    Grid(double xmin, double xmax, std::size_t n);

    double xmin() const { return xmin_; }
    double xmax() const { return xmax_; }
    std::size_t size() const { return n_; }
    double spacing() const { return h_; }
    double operator[](std::size_t i) const { return xmin_ + static_cast<double>(i) * h_; }
    std::vector<double> points() const;

    // Index of the grid point closest to x (clamped to the grid).
    std::size_t nearest(double x) const;
    bool symmetric(double tol = 1e-12) const;

    bool operator==(const Grid& o) const
    {
        return xmin_ == o.xmin_ && xmax_ == o.xmax_ && n_ == o.n_;
    }

private:
    double xmin_, xmax_;
    std::size_t n_;
    double h_;
};

struct GridFunction {
    Grid grid;
    std::vector<cplx> values;

    GridFunction(Grid g, std::vector<cplx> v);
    explicit GridFunction(Grid g) : grid(g), values(g.size(), cplx(0.0)) {}
};

// Trapezoid rule for the integral of f over its grid.
cplx trapezoid(const GridFunction& f);
cplx trapezoid(const std::vector<cplx>& f, double h);

// Boundary values from above / below of (1/2 pi i) int f(s)/(s - lambda) ds
// on the real line. The principal value part is the discrete Cauchy kernel
// 2/(pi m) on odd offsets m, applied as a Fourier multiplier on a grid zero
// padded by a factor 2 (linear, not circular, convolution). The zero mode of
// the kernel vanishes, so the constant mode splits half/half and
// C+ - C- = I holds exactly.
GridFunction cauchy_plus(const GridFunction& f);
GridFunction cauchy_minus(const GridFunction& f);

// Plain trapezoid quadrature of (1/2 pi i) int f(s)/(s - z) ds. Rejects z
// closer than spacing/2 to the real axis.
cplx cauchy_at(const GridFunction& f, cplx z);
cplx cauchy_at(const Grid& g, const cplx* f, cplx z);

// Reusable projector for a fixed grid length. Thread-safe after construction.
class CauchyProjector {
public:
    explicit CauchyProjector(std::size_t n);
    ~CauchyProjector();
    CauchyProjector(const CauchyProjector&) = delete;
    CauchyProjector& operator=(const CauchyProjector&) = delete;

    std::size_t size() const { return n_; }

    // out = (1/(pi i)) * sum_{m odd} f[i+m]/m, the principal value part.
    void principal(const cplx* f, cplx* out) const;
    void plus(const cplx* f, cplx* out) const;
    void minus(const cplx* f, cplx* out) const;

    // Column j of the principal-value matrix (used for basis assembly).
    cplx principal_entry(std::ptrdiff_t i, std::ptrdiff_t j) const;

private:
    struct Impl;
    std::size_t n_;
    std::unique_ptr<Impl> impl_;
};

// Shared projector instance for length n (cached, thread-safe).
const CauchyProjector& projector_for(std::size_t n);

} // namespace dnls
