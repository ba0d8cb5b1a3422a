#pragma once

#include "dnls/oracle.hpp"
#include "dnls/spectrum.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace dnls {

enum class Command { gen, direct, evolve, inverse, solve, roundtrip, spectrum };

Command parse_command(const std::string& name);

struct RunConfig {
    Command command = Command::gen;
    std::string in, out;
    std::optional<Grid> xgrid, lgrid;
    double t = 0.0;
    double tol = 1e-11; // eigenvalue Newton tolerance
    int epsilon = -1;
    std::string family = "tv";
    TVParameters tv;
    double amp = 0.3, width = 1.0; // gaussian: amp exp(-(x/width)^2)
    cplx lambda{0.0, 1.0}, C{1.0, 0.0}; // soliton
    Rectangle search;
};

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_io = 2;
inline constexpr int exit_numerical = 3;
inline constexpr int exit_membership = 4;

// Runs one command. Reports (roundtrip, spectrum, summaries) go to `report`
// as JSON, diagnostics to `errors`. Returns an exit code; never throws.
int run(const RunConfig& config, std::ostream& report, std::ostream& errors);

} // namespace dnls
