#include "dnls/io.hpp"

#include "dnls/errors.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace dnls {

namespace {

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& s)
{
    // strtod rather than stod: subnormal values set ERANGE but are exact
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || !std::isfinite(v))
        throw IoError("not a number: '" + s + "'");
    while (*end != '\0' && std::isspace(static_cast<unsigned char>(*end)))
        ++end;
    if (*end != '\0')
        throw IoError("not a number: '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        out.push_back(cur);
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return "";
    return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out)
        throw IoError("write to '" + path + "' failed");
}

std::string grid_text(const Grid& g)
{
    return num(g.xmin()) + "," + num(g.xmax()) + "," + std::to_string(g.size());
}

} // namespace

Grid parse_grid(const std::string& spec)
{
    const auto parts = split(spec, ',');
    if (parts.size() != 3)
        throw InvalidArgument("grid must be given as a,b,n: '" + spec + "'");
    double a = 0.0, b = 0.0, n = 0.0;
    try {
        a = parse_double(trim(parts[0]));
        b = parse_double(trim(parts[1]));
        n = parse_double(trim(parts[2]));
    } catch (const IoError& e) {
        throw InvalidArgument(std::string("grid: ") + e.what());
    }
    if (n != std::floor(n) || n < 1.0)
        throw InvalidArgument("grid point count must be a positive integer");
    return Grid(a, b, static_cast<std::size_t>(n));
}

std::string format_potential(const PotentialSamples& q)
{
    std::string s;
    s += "# dnls potential\n";
    s += "# epsilon: " + std::to_string(q.epsilon) + "\n";
    s += "# grid: " + grid_text(q.grid) + "\n";
    s += "x,re_q,im_q\n";
    for (std::size_t i = 0; i < q.values.size(); ++i)
        s += num(q.grid[i]) + "," + num(q.values[i].real()) + "," + num(q.values[i].imag()) + "\n";
    return s;
}

void write_potential(const std::string& path, const PotentialSamples& q)
{
    spit(path, format_potential(q));
}

PotentialSamples parse_potential(const std::string& text, double tail_tol)
{
    std::istringstream in(text);
    std::string line;
    int eps = 0;
    std::string grid_spec;
    bool header = false;
    std::vector<cplx> values;
    std::vector<double> xs;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty())
            continue;
        if (line[0] == '#') {
            const auto colon = line.find(':');
            if (colon == std::string::npos)
                continue;
            const std::string key = trim(line.substr(1, colon - 1));
            const std::string val = trim(line.substr(colon + 1));
            if (key == "epsilon")
                eps = static_cast<int>(parse_double(val));
            else if (key == "grid")
                grid_spec = val;
            continue;
        }
        if (!header) {
            if (line != "x,re_q,im_q")
                throw IoError("potential file: expected header 'x,re_q,im_q'");
            header = true;
            continue;
        }
        const auto cols = split(line, ',');
        if (cols.size() != 3)
            throw IoError("potential file: expected 3 columns per row");
        xs.push_back(parse_double(trim(cols[0])));
        values.emplace_back(parse_double(trim(cols[1])), parse_double(trim(cols[2])));
    }
    if (eps != 1 && eps != -1)
        throw IoError("potential file: missing or invalid epsilon");
    if (grid_spec.empty() || !header)
        throw IoError("potential file: missing grid metadata or header");
    const Grid g = [&] {
        try {
            return parse_grid(grid_spec);
        } catch (const InvalidArgument& e) {
            throw IoError(std::string("potential file: ") + e.what());
        }
    }();
    if (values.size() != g.size())
        throw IoError("potential file: row count does not match the grid");
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (std::abs(xs[i] - g[i]) > 1e-9 * std::max(1.0, std::abs(g[i])))
            throw IoError("potential file: x column does not match the grid");
    return PotentialSamples(g, std::move(values), eps, tail_tol);
}

PotentialSamples read_potential(const std::string& path, double tail_tol)
{
    return parse_potential(slurp(path), tail_tol);
}

std::string format_scattering(const ScatteringFile& f)
{
    const ScatteringData& d = f.data;
    const Grid& g = d.rho.grid;
    std::string s = "{\n";
    s += "  \"epsilon\": " + std::to_string(d.epsilon) + ",\n";
    s += "  \"t\": " + num(f.t) + ",\n";
    s += "  \"lambda_grid\": {\"min\": " + num(g.xmin()) + ", \"max\": " + num(g.xmax()) +
         ", \"n\": " + std::to_string(g.size()) + "},\n";
    s += "  \"rho\": [";
    for (std::size_t i = 0; i < d.rho.values.size(); ++i) {
        s += (i ? ",\n    " : "\n    ");
        s += "[" + num(d.rho.values[i].real()) + ", " + num(d.rho.values[i].imag()) + "]";
    }
    s += "\n  ],\n  \"pairs\": [";
    for (std::size_t j = 0; j < d.pairs.size(); ++j) {
        const auto& p = d.pairs[j];
        s += (j ? ",\n    " : "\n    ");
        s += "{\"lambda\": [" + num(p.lambda.real()) + ", " + num(p.lambda.imag()) + "], \"C\": [" +
             num(p.C.real()) + ", " + num(p.C.imag()) + "]}";
    }
    s += d.pairs.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return s;
}

void write_scattering(const std::string& path, const ScatteringFile& f)
{
    spit(path, format_scattering(f));
}

ScatteringFile parse_scattering(const std::string& text)
{
    using nlohmann::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw IoError(std::string("scattering file: ") + e.what());
    }
    try {
        const int eps = j.at("epsilon").get<int>();
        const auto& lg = j.at("lambda_grid");
        const Grid g(lg.at("min").get<double>(), lg.at("max").get<double>(), lg.at("n").get<std::size_t>());
        std::vector<cplx> rho;
        for (const auto& r : j.at("rho")) {
            if (r.size() != 2)
                throw IoError("scattering file: rho entries must be [re, im]");
            rho.emplace_back(r[0].get<double>(), r[1].get<double>());
        }
        std::vector<DiscretePair> pairs;
        for (const auto& p : j.at("pairs")) {
            const auto& l = p.at("lambda");
            const auto& c = p.at("C");
            if (l.size() != 2 || c.size() != 2)
                throw IoError("scattering file: pair entries must be [re, im]");
            pairs.push_back({cplx(l[0].get<double>(), l[1].get<double>()), cplx(c[0].get<double>(), c[1].get<double>())});
        }
        ScatteringFile f{ScatteringData{ReflectionCoefficient(g, std::move(rho), eps), std::move(pairs), eps},
                         j.value("t", 0.0)};
        f.data.validate();
        return f;
    } catch (const json::exception& e) {
        throw IoError(std::string("scattering file: ") + e.what());
    } catch (const InvalidArgument& e) {
        throw IoError(std::string("scattering file: ") + e.what());
    }
}

ScatteringFile read_scattering(const std::string& path)
{
    return parse_scattering(slurp(path));
}

} // namespace dnls
