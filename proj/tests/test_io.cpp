#include "doctest.h"

#include "dnls/cli.hpp"
#include "dnls/errors.hpp"
#include "dnls/io.hpp"
#include "dnls/oracle.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dnls;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() / ("dnls_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

int run_quiet(const RunConfig& c, std::string* report = nullptr)
{
    std::ostringstream out, err;
    const int code = run(c, out, err);
    if (report)
        *report = out.str();
    return code;
}

} // namespace

TEST_CASE("grid specification")
{
    const Grid g = parse_grid("-3.5,2,11");
    CHECK(g.xmin() == -3.5);
    CHECK(g.xmax() == 2.0);
    CHECK(g.size() == 11);
    CHECK_THROWS_AS(parse_grid("1,2"), InvalidArgument);
    CHECK_THROWS_AS(parse_grid("a,2,10"), InvalidArgument);
    CHECK_THROWS_AS(parse_grid("0,1,-4"), InvalidArgument);
}

TEST_CASE("potential files round-trip exactly")
{
    const Grid g(-7.3, 9.1, 37);
    std::vector<cplx> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        v[i] = {std::sin(1.0 / (i + 0.3)), std::exp(-0.1 * i) / 3.0};
    v[0] = {4.9406564584124654e-324, -0.0}; // subnormal and signed zero
    v[1] = {1e-310, 1.7976931348623157e308};
    const PotentialSamples q(g, v, 1, HUGE_VAL);
    const auto r = parse_potential(format_potential(q));
    CHECK(r.grid == q.grid);
    CHECK(r.epsilon == 1);
    CHECK(r.values == q.values);
    CHECK(std::signbit(r.values[0].imag()));
}

TEST_CASE("scattering files round-trip exactly")
{
    const Grid lg(-2.5, 3.0, 17);
    std::vector<cplx> rho(lg.size());
    for (std::size_t i = 0; i < lg.size(); ++i)
        rho[i] = {0.1 * std::cos(i * 0.7), -1.0 / 7.0 * std::sin(i * 1.3)};
    rho[3] = {9.8813129168249309e-324, 0.0};
    const ScatteringFile f{{ReflectionCoefficient(lg, rho, -1), {{cplx(0.1, 1.0 / 3.0), cplx(-2.0 / 3.0, 1e-300)}}, -1},
                           0.125};
    const auto r = parse_scattering(format_scattering(f));
    CHECK(r.t == f.t);
    CHECK(r.data.epsilon == -1);
    CHECK(r.data.rho.grid == lg);
    CHECK(r.data.rho.values == rho);
    REQUIRE(r.data.pairs.size() == 1);
    CHECK(r.data.pairs[0].lambda == f.data.pairs[0].lambda);
    CHECK(r.data.pairs[0].C == f.data.pairs[0].C);
    // the document is valid JSON with the documented fields
    const auto j = nlohmann::json::parse(format_scattering(f));
    CHECK(j.contains("epsilon"));
    CHECK(j.contains("lambda_grid"));
    CHECK(j["rho"].size() == lg.size());
    CHECK(j["pairs"][0]["lambda"].size() == 2);
}

TEST_CASE("malformed files")
{
    CHECK_THROWS_AS(parse_potential("x,re_q,im_q\n0,1,2\n"), IoError);
    CHECK_THROWS_AS(parse_potential("# epsilon: -1\n# grid: 0,1,8\nx,re_q,im_q\n0,1\n"), IoError);
    CHECK_THROWS_AS(parse_potential("# epsilon: 3\n# grid: 0,1,8\nx,re_q,im_q\n"), IoError);
    CHECK_THROWS_AS(parse_scattering("{not json"), IoError);
    CHECK_THROWS_AS(parse_scattering(R"({"epsilon": -1})"), IoError);
    CHECK_THROWS_AS(read_potential("/nonexistent/dir/q.csv"), IoError);
}

TEST_CASE("command line pipeline")
{
    TempDir dir;
    RunConfig gen;
    gen.command = Command::gen;
    gen.family = "tv";
    gen.out = dir / "tv.csv";
    gen.xgrid = Grid(-30.0, 30.0, 1201);
    REQUIRE(run_quiet(gen) == exit_ok);
    const auto q = read_potential(gen.out);
    CHECK(std::abs(q.l2_norm_squared() - 0.72) < 1e-8);

    // determinism
    RunConfig gen2 = gen;
    gen2.out = dir / "tv2.csv";
    REQUIRE(run_quiet(gen2) == exit_ok);
    CHECK(slurp(gen.out) == slurp(gen2.out));

    RunConfig direct;
    direct.command = Command::direct;
    direct.in = gen.out;
    direct.out = dir / "tv.json";
    direct.lgrid = Grid(-10.0, 10.0, 256);
    REQUIRE(run_quiet(direct) == exit_ok);
    RunConfig direct2 = direct;
    direct2.out = dir / "tv2.json";
    REQUIRE(run_quiet(direct2) == exit_ok);
    CHECK(slurp(direct.out) == slurp(direct2.out));

    RunConfig ev;
    ev.command = Command::evolve;
    ev.in = direct.out;
    ev.out = dir / "tv_t.json";
    ev.t = 0.3;
    REQUIRE(run_quiet(ev) == exit_ok);
    CHECK(read_scattering(ev.out).t == 0.3);

    // solve at t = 0 reproduces the input on a subset of nodes
    RunConfig solve;
    solve.command = Command::solve;
    solve.in = gen.out;
    solve.out = dir / "solved.csv";
    solve.xgrid = Grid(-4.0, 4.0, 9);
    REQUIRE(run_quiet(solve) == exit_ok);
    const auto s = read_potential(solve.out);
    for (std::size_t i = 0; i < s.grid.size(); ++i)
        CHECK(std::abs(s.values[i] - q.values[q.grid.nearest(s.grid[i])]) < 1e-9);
}

TEST_CASE("command line roundtrip of the zero potential")
{
    TempDir dir;
    const Grid g(-10.0, 10.0, 41);
    write_potential(dir / "zero.csv", PotentialSamples(g, std::vector<cplx>(g.size(), 0.0), -1));
    RunConfig c;
    c.command = Command::roundtrip;
    c.in = dir / "zero.csv";
    std::string report;
    REQUIRE(run_quiet(c, &report) == exit_ok);
    const auto j = nlohmann::json::parse(report);
    CHECK(j["sup_error"].get<double>() == 0.0);
    CHECK(j["l2_error"].get<double>() == 0.0);
}

TEST_CASE("exit codes")
{
    TempDir dir;
    RunConfig c;
    c.command = Command::direct;
    c.in = dir / "missing.csv";
    c.out = dir / "out.json";
    CHECK(run_quiet(c) == exit_io);

    // a potential whose tails do not decay is outside the admissible class
    const Grid g(-5.0, 5.0, 101);
    write_potential(dir / "flat.csv", PotentialSamples(g, std::vector<cplx>(g.size(), 0.5), -1, HUGE_VAL));
    c.in = dir / "flat.csv";
    CHECK(run_quiet(c) == exit_membership);

    RunConfig gen;
    gen.command = Command::gen;
    gen.family = "nope";
    gen.out = dir / "x.csv";
    CHECK(run_quiet(gen) == exit_io);
    CHECK_THROWS_AS(parse_command("frobnicate"), InvalidArgument);
}
