#include "dnls/potential.hpp"

#include "dnls/errors.hpp"

#include <cmath>

namespace dnls {

int check_epsilon(int eps)
{
    if (eps != 1 && eps != -1)
        throw InvalidArgument("epsilon must be +1 or -1");
    return eps;
}

PotentialSamples::PotentialSamples(Grid g, std::vector<cplx> v, int eps, double tail_tol)
    : grid(g), values(std::move(v)), epsilon(check_epsilon(eps))
{
    if (values.size() != grid.size())
        throw InvalidArgument("potential length does not match its grid");
    for (const auto& z : values)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw InvalidArgument("potential has non-finite samples");
    if (std::abs(values.front()) > tail_tol || std::abs(values.back()) > tail_tol)
        throw InvalidArgument("potential does not decay to the tail tolerance at the grid ends");
}

double PotentialSamples::l2_norm_squared() const
{
    std::vector<cplx> a(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        a[i] = std::norm(values[i]);
    return trapezoid(a, grid.spacing()).real();
}

} // namespace dnls
