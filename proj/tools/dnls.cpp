// Command-line front end: gen, direct, evolve, inverse, solve, roundtrip, spectrum.
#include "dnls/cli.hpp"
#include "dnls/errors.hpp"
#include "dnls/io.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace {

dnls::Rectangle parse_rect(const std::string& s)
{
    std::vector<double> v;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const auto comma = s.find(',', pos);
        v.push_back(std::stod(s.substr(pos, comma - pos)));
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    if (v.size() != 4)
        throw dnls::InvalidArgument("rectangle must be given as re_min,re_max,im_min,im_max");
    dnls::Rectangle r{v[0], v[1], v[2], v[3]};
    r.validate();
    return r;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Inverse scattering toolkit for the derivative NLS equation"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    std::string epsilon = "-1", xgrid, lgrid, rect, family = "tv";
    dnls::RunConfig cfg;
    double lre = 0.0, lim = 1.0, cre = 1.0, cim = 0.0;

    app.add_option("--epsilon", epsilon, "sign of the nonlinearity (+1 or -1)");
    app.add_option("--xgrid", xgrid, "x-grid a,b,n");
    app.add_option("--lgrid", lgrid, "lambda-grid a,b,n (default -10,10,512)");
    app.add_option("--t", cfg.t, "evolution time");
    app.add_option("--tol", cfg.tol, "eigenvalue Newton tolerance");
    app.add_option("--in", cfg.in, "input file");
    app.add_option("--out", cfg.out, "output file");
    app.add_option("--rect", rect, "eigenvalue search rectangle re_min,re_max,im_min,im_max");
    app.add_option("--family", family, "gen source: tv, gaussian or soliton");
    app.add_option("--nu", cfg.tv.nu, "tv amplitude");
    app.add_option("--mu", cfg.tv.mu, "tv chirp");
    app.add_option("--delta", cfg.tv.delta, "tv velocity offset");
    app.add_option("--s0", cfg.tv.s0, "tv phase");
    app.add_option("--amp", cfg.amp, "gaussian amplitude");
    app.add_option("--width", cfg.width, "gaussian width");
    app.add_option("--lambda-re", lre, "soliton eigenvalue, real part");
    app.add_option("--lambda-im", lim, "soliton eigenvalue, imaginary part");
    app.add_option("--c-re", cre, "soliton norming constant, real part");
    app.add_option("--c-im", cim, "soliton norming constant, imaginary part");

    for (const char* name : {"gen", "direct", "evolve", "inverse", "solve", "roundtrip", "spectrum"})
        app.add_subcommand(name)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : dnls::exit_io;
    }

    try {
        cfg.command = dnls::parse_command(app.get_subcommands().front()->get_name());
        if (epsilon == "+1" || epsilon == "1")
            cfg.epsilon = 1;
        else if (epsilon == "-1")
            cfg.epsilon = -1;
        else
            throw dnls::InvalidArgument("--epsilon must be +1 or -1");
        if (!xgrid.empty())
            cfg.xgrid = dnls::parse_grid(xgrid);
        if (!lgrid.empty())
            cfg.lgrid = dnls::parse_grid(lgrid);
        if (!rect.empty())
            cfg.search = parse_rect(rect);
        cfg.family = family;
        cfg.lambda = {lre, lim};
        cfg.C = {cre, cim};
    } catch (const std::exception& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return dnls::exit_io;
    }
    return dnls::run(cfg, std::cout, std::cerr);
}
