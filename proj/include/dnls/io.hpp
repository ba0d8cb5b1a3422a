#pragma once

#include "dnls/spectrum.hpp"

#include <cmath>
#include <string>

namespace dnls {

// "a,b,n" -> Grid(a, b, n). InvalidArgument on malformed text.
Grid parse_grid(const std::string& spec);

// Potential CSV: leading '#' metadata block (epsilon, grid), header
// "x,re_q,im_q", one row per grid point, numbers with 17 significant digits.
void write_potential(const std::string& path, const PotentialSamples& q);
std::string format_potential(const PotentialSamples& q);
// Tail decay is not asserted here (tail_tol defaults to infinity).
PotentialSamples read_potential(const std::string& path, double tail_tol = HUGE_VAL);
PotentialSamples parse_potential(const std::string& text, double tail_tol = HUGE_VAL);

// Scattering JSON: {"epsilon", "t", "lambda_grid": {min, max, n},
// "rho": [[re, im], ...], "pairs": [{"lambda": [re, im], "C": [re, im]}, ...]}.
struct ScatteringFile {
    ScatteringData data;
    double t = 0.0; // accumulated evolution time
};
void write_scattering(const std::string& path, const ScatteringFile& f);
std::string format_scattering(const ScatteringFile& f);
ScatteringFile read_scattering(const std::string& path);
ScatteringFile parse_scattering(const std::string& text);

} // namespace dnls
