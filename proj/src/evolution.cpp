#include "dnls/evolution.hpp"

#include <cmath>

namespace dnls {

namespace {
constexpr cplx I{0.0, 1.0};
}

ScatteringData evolve(const ScatteringData& data, double t)
{
    if (t == 0.0)
        return data;
    std::vector<cplx> rho = data.rho.values;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        const double lam = data.rho.grid[i];
        // the phase is reduced exactly so that |factor| = 1 to rounding
        rho[i] *= std::polar(1.0, -4.0 * lam * lam * t);
    }
    std::vector<DiscretePair> pairs = data.pairs;
    for (auto& p : pairs)
        p.C *= std::exp(4.0 * I * p.lambda * p.lambda * t);
    return ScatteringData{ReflectionCoefficient(data.rho.grid, std::move(rho), data.epsilon), std::move(pairs),
                          data.epsilon};
}

} // namespace dnls
