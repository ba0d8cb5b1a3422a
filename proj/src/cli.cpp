#include "dnls/cli.hpp"

#include "dnls/errors.hpp"
#include "dnls/evolution.hpp"
#include "dnls/inverse.hpp"
#include "dnls/io.hpp"
#include "dnls/parallel.hpp"

#include "json.hpp"

#include <cmath>
#include <ostream>

namespace dnls {

namespace {

const Grid default_xgrid(-30.0, 30.0, 1201);

void require(const std::string& s, const char* what)
{
    if (s.empty())
        throw InvalidArgument(std::string("missing --") + what);
}

// Inputs to the direct map must decay to the default tail tolerance.
PotentialSamples decayed(const PotentialSamples& q)
{
    try {
        return PotentialSamples(q.grid, q.values, q.epsilon);
    } catch (const InvalidArgument&) {
        throw MembershipError("potential does not decay to 1e-10 at the grid ends");
    }
}

ScatteringData direct_map(const PotentialSamples& q, const RunConfig& c)
{
    const JostSolver solver(decayed(q));
    const Grid lg = c.lgrid.value_or(CauchyOptions{}.lambda_grid);
    ReflectionCoefficient rho = reflection(solver, lg);
    std::vector<DiscretePair> pairs;
    for (cplx z : find_zeros(solver, c.search, c.tol))
        pairs.push_back({z, norming_constant(solver, z)});
    ScatteringData d{std::move(rho), std::move(pairs), q.epsilon};
    d.validate();
    return d;
}

nlohmann::json cjson(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

PotentialSamples generate(const RunConfig& c)
{
    const Grid g = c.xgrid.value_or(default_xgrid);
    check_epsilon(c.epsilon);
    if (c.family == "tv") {
        TVParameters p = c.tv;
        p.epsilon = c.epsilon;
        return tv_potential(p, g, HUGE_VAL);
    }
    if (c.family == "gaussian") {
        if (!(c.width > 0.0))
            throw InvalidArgument("gaussian width must be positive");
        std::vector<cplx> v(g.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = c.amp * std::exp(-(g[i] / c.width) * (g[i] / c.width));
        return PotentialSamples(g, std::move(v), c.epsilon, HUGE_VAL);
    }
    if (c.family == "soliton")
        return reflectionless_inverse({{c.lambda, c.C}}, c.epsilon, g);
    throw InvalidArgument("unknown family '" + c.family + "' (tv, gaussian, soliton)");
}

int dispatch(const RunConfig& c, std::ostream& report)
{
    using nlohmann::json;
    switch (c.command) {
    case Command::gen: {
        require(c.out, "out");
        const PotentialSamples q = generate(c);
        write_potential(c.out, q);
        report << json{{"command", "gen"}, {"family", c.family}, {"points", q.grid.size()},
                       {"l2_norm_squared", q.l2_norm_squared()}}
                      .dump()
               << "\n";
        return exit_ok;
    }
    case Command::direct: {
        require(c.in, "in");
        require(c.out, "out");
        const ScatteringData d = direct_map(read_potential(c.in), c);
        write_scattering(c.out, {d, 0.0});
        report << json{{"command", "direct"}, {"lambda_points", d.rho.grid.size()}, {"eigenvalues", d.pairs.size()}}
                      .dump()
               << "\n";
        return exit_ok;
    }
    case Command::evolve: {
        require(c.in, "in");
        require(c.out, "out");
        const ScatteringFile f = read_scattering(c.in);
        write_scattering(c.out, {evolve(f.data, c.t), f.t + c.t});
        report << json{{"command", "evolve"}, {"t", f.t + c.t}}.dump() << "\n";
        return exit_ok;
    }
    case Command::inverse: {
        require(c.in, "in");
        require(c.out, "out");
        const ScatteringFile f = read_scattering(c.in);
        const PotentialSamples q = inverse_transform(f.data, c.xgrid.value_or(default_xgrid));
        write_potential(c.out, q);
        report << json{{"command", "inverse"}, {"points", q.grid.size()}, {"l2_norm_squared", q.l2_norm_squared()}}
                      .dump()
               << "\n";
        return exit_ok;
    }
    case Command::solve: {
        require(c.in, "in");
        require(c.out, "out");
        const PotentialSamples q0 = read_potential(c.in);
        const ScatteringData d = direct_map(q0, c);
        const PotentialSamples q = inverse_transform(evolve(d, c.t), c.xgrid.value_or(q0.grid));
        write_potential(c.out, q);
        report << json{{"command", "solve"}, {"t", c.t}, {"eigenvalues", d.pairs.size()},
                       {"l2_norm_squared_initial", q0.l2_norm_squared()},
                       {"l2_norm_squared_final", q.l2_norm_squared()}}
                      .dump()
               << "\n";
        return exit_ok;
    }
    case Command::roundtrip: {
        require(c.in, "in");
        const PotentialSamples q0 = read_potential(c.in);
        const ScatteringData d = direct_map(q0, c);
        // evaluate on the nodes of the input grid inside the requested window
        const Grid win = c.xgrid.value_or(q0.grid);
        std::vector<double> xs;
        std::vector<cplx> ref;
        for (std::size_t i = 0; i < q0.grid.size(); ++i)
            if (q0.grid[i] >= win.xmin() - 1e-12 && q0.grid[i] <= win.xmax() + 1e-12) {
                xs.push_back(q0.grid[i]);
                ref.push_back(q0.values[i]);
            }
        if (xs.size() < 2)
            throw InvalidArgument("roundtrip window contains fewer than two input nodes");
        std::vector<cplx> rec(xs.size());
        parallel_for(xs.size(), [&](std::size_t i) { rec[i] = reconstruct_point(d, xs[i]); });
        double sup = 0.0, l2 = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double e = std::abs(rec[i] - ref[i]);
            sup = std::max(sup, e);
            const double w = (i == 0 || i + 1 == xs.size()) ? 0.5 : 1.0;
            l2 += w * e * e * q0.grid.spacing();
        }
        json r{{"command", "roundtrip"}, {"sup_error", sup}, {"l2_error", std::sqrt(l2)},
               {"points", xs.size()}, {"eigenvalues", d.pairs.size()}};
        report << r.dump() << "\n";
        if (!c.out.empty()) {
            const Grid og(xs.front(), xs.back(), xs.size());
            write_potential(c.out, PotentialSamples(og, rec, q0.epsilon, HUGE_VAL));
        }
        return exit_ok;
    }
    case Command::spectrum: {
        require(c.in, "in");
        const PotentialSamples q0 = decayed(read_potential(c.in));
        const JostSolver solver(q0);
        const int count = count_zeros(solver, c.search);
        json pairs = json::array();
        for (cplx z : find_zeros(solver, c.search, c.tol)) {
            const NormingDetail nd = norming_detail(solver, z);
            pairs.push_back({{"lambda", cjson(z)}, {"C", cjson(nd.C)}, {"B", cjson(nd.B)},
                             {"alpha_prime", cjson(nd.alpha_prime)}});
        }
        json r{{"command", "spectrum"},
               {"rectangle", {c.search.re_min, c.search.re_max, c.search.im_min, c.search.im_max}},
               {"count", count},
               {"pairs", pairs}};
        report << r.dump(2) << "\n";
        return exit_ok;
    }
    }
    return exit_ok;
}

} // namespace

Command parse_command(const std::string& name)
{
    static const std::pair<const char*, Command> names[] = {
        {"gen", Command::gen},         {"direct", Command::direct},       {"evolve", Command::evolve},
        {"inverse", Command::inverse}, {"solve", Command::solve},         {"roundtrip", Command::roundtrip},
        {"spectrum", Command::spectrum}};
    for (const auto& [n, c] : names)
        if (name == n)
            return c;
    throw InvalidArgument("unknown command '" + name + "'");
}

int run(const RunConfig& config, std::ostream& report, std::ostream& errors)
{
    try {
        return dispatch(config, report);
    } catch (const IoError& e) {
        errors << "I/O error: " << e.what() << "\n";
        return exit_io;
    } catch (const InvalidArgument& e) {
        errors << "invalid input: " << e.what() << "\n";
        return exit_io;
    } catch (const MembershipError& e) {
        errors << "not in the admissible class: " << e.what() << "\n";
        return exit_membership;
    } catch (const NumericalError& e) {
        errors << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    } catch (const std::exception& e) {
        errors << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    }
}

} // namespace dnls
