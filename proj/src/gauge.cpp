#include "dnls/gauge.hpp"

#include "dnls/errors.hpp"

#include <limits>

namespace dnls {

namespace {

PotentialSamples apply_phase(const PotentialSamples& f, double sign)
{
    const std::size_t n = f.values.size();
    const double h = f.grid.spacing();
    std::vector<cplx> out(n);
    double tail = 0.0; // int_{x_i}^{x_max} |f|^2
    for (std::size_t k = n; k-- > 0;) {
        if (k + 1 < n)
            tail += 0.5 * h * (std::norm(f.values[k]) + std::norm(f.values[k + 1]));
        out[k] = std::polar(1.0, sign * f.epsilon * tail) * f.values[k];
    }
    return PotentialSamples(f.grid, std::move(out), f.epsilon, std::numeric_limits<double>::infinity());
}

} // namespace

PotentialSamples gauge_forward(const PotentialSamples& u) { return apply_phase(u, 1.0); }

PotentialSamples gauge_inverse(const PotentialSamples& q) { return apply_phase(q, -1.0); }

PotentialSamples reflect_epsilon(const PotentialSamples& u)
{
    if (!u.grid.symmetric())
        throw InvalidArgument("reflect_epsilon requires a grid symmetric about 0");
    std::vector<cplx> v(u.values.rbegin(), u.values.rend());
    return PotentialSamples(u.grid, std::move(v), -u.epsilon, std::numeric_limits<double>::infinity());
}

} // namespace dnls
