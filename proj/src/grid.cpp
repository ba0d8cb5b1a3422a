#include "dnls/grid.hpp"

#include "dnls/errors.hpp"
#include "dnls/kernels.hpp"
#include "fft.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace dnls {

Grid::Grid(double xmin, double xmax, std::size_t n) : xmin_(xmin), xmax_(xmax), n_(n)
{
    if (!(std::isfinite(xmin) && std::isfinite(xmax)) || !(xmin < xmax))
        throw InvalidArgument("grid requires finite xmin < xmax");
    if (n < 8)
        throw InvalidArgument("grid requires at least 8 points");
    h_ = (xmax - xmin) / static_cast<double>(n - 1);
}

std::vector<double> Grid::points() const
{
    std::vector<double> p(n_);
    for (std::size_t i = 0; i < n_; ++i)
        p[i] = (*this)[i];
    return p;
}

std::size_t Grid::nearest(double x) const
{
    const double r = std::round((x - xmin_) / h_);
    if (r <= 0.0)
        return 0;
    if (r >= static_cast<double>(n_ - 1))
        return n_ - 1;
    return static_cast<std::size_t>(r);
}

bool Grid::symmetric(double tol) const
{
    return std::abs(xmin_ + xmax_) <= tol * std::max(1.0, std::abs(xmax_));
}

GridFunction::GridFunction(Grid g, std::vector<cplx> v) : grid(g), values(std::move(v))
{
    if (values.size() != grid.size())
        throw InvalidArgument("grid function length does not match its grid");
    for (const auto& z : values)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw InvalidArgument("grid function has non-finite values");
}

cplx trapezoid(const std::vector<cplx>& f, double h)
{
    if (f.empty())
        return 0.0;
    cplx s = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i)
        s += f[i];
    return s * h;
}

cplx trapezoid(const GridFunction& f)
{
    return trapezoid(f.values, f.grid.spacing());
}

struct CauchyProjector::Impl {
    std::size_t padded;
    std::vector<cplx> kernel_hat; // DFT of the convolution kernel, scaled by 1/padded
    fft::Plan forward, backward;

    explicit Impl(std::size_t n)
        : padded(2 * n), kernel_hat(2 * n, 0.0), forward(2 * n, fft::Direction::forward),
          backward(2 * n, fft::Direction::backward)
    {
        // out_i = sum_j kappa_{i-j} f_j with kappa_d = -1/(pi i d) for odd d.
        std::vector<cplx> kappa(padded, 0.0);
        const cplx c = -1.0 / (std::numbers::pi * cplx(0.0, 1.0));
        for (std::ptrdiff_t d = 1; d < static_cast<std::ptrdiff_t>(n); d += 2) {
            kappa[static_cast<std::size_t>(d)] = c / static_cast<double>(d);
            kappa[padded - static_cast<std::size_t>(d)] = -c / static_cast<double>(d);
        }
        forward.execute(kappa.data(), kernel_hat.data());
        const double scale = 1.0 / static_cast<double>(padded);
        for (auto& k : kernel_hat)
            k *= scale;
    }
};

CauchyProjector::CauchyProjector(std::size_t n) : n_(n), impl_(std::make_unique<Impl>(n))
{
    if (n < 2)
        throw InvalidArgument("projector length must be at least 2");
}

CauchyProjector::~CauchyProjector() = default;

void CauchyProjector::principal(const cplx* f, cplx* out) const
{
    std::vector<cplx> buf(impl_->padded, 0.0), spec(impl_->padded);
    std::copy(f, f + n_, buf.begin());
    impl_->forward.execute(buf.data(), spec.data());
    kernels::cmul(spec.data(), impl_->kernel_hat.data(), spec.data(), impl_->padded);
    impl_->backward.execute(spec.data(), buf.data());
    std::copy(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(n_), out);
}

void CauchyProjector::plus(const cplx* f, cplx* out) const
{
    std::vector<cplx> pv(n_);
    principal(f, pv.data());
    for (std::size_t i = 0; i < n_; ++i)
        out[i] = 0.5 * f[i] + pv[i];
}

void CauchyProjector::minus(const cplx* f, cplx* out) const
{
    std::vector<cplx> pv(n_);
    principal(f, pv.data());
    for (std::size_t i = 0; i < n_; ++i)
        out[i] = -0.5 * f[i] + pv[i];
}

cplx CauchyProjector::principal_entry(std::ptrdiff_t i, std::ptrdiff_t j) const
{
    const std::ptrdiff_t m = j - i;
    if (m % 2 == 0)
        return 0.0;
    return 1.0 / (std::numbers::pi * cplx(0.0, 1.0) * static_cast<double>(m));
}

const CauchyProjector& projector_for(std::size_t n)
{
    static std::mutex mtx;
    static std::map<std::size_t, std::unique_ptr<CauchyProjector>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto& slot = cache[n];
    if (!slot)
        slot = std::make_unique<CauchyProjector>(n);
    return *slot;
}

GridFunction cauchy_plus(const GridFunction& f)
{
    GridFunction out(f.grid);
    projector_for(f.grid.size()).plus(f.values.data(), out.values.data());
    return out;
}

GridFunction cauchy_minus(const GridFunction& f)
{
    GridFunction out(f.grid);
    projector_for(f.grid.size()).minus(f.values.data(), out.values.data());
    return out;
}

cplx cauchy_at(const Grid& g, const cplx* f, cplx z)
{
    if (!(std::abs(z.imag()) >= 0.5 * g.spacing()))
        throw NumericalError("cauchy_at: evaluation point closer than spacing/2 to the real axis");
    const cplx s = kernels::cauchy_sum(f, g.size(), g.xmin(), g.spacing(), z);
    return s * g.spacing() / (2.0 * std::numbers::pi * cplx(0.0, 1.0));
}

cplx cauchy_at(const GridFunction& f, cplx z)
{
    return cauchy_at(f.grid, f.values.data(), z);
}

} // namespace dnls
