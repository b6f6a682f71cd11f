#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ivc/interval.hpp"
#include "ivc/inverse.hpp"
#include "ivc/ivfun.hpp"
#include "ivc/volterra.hpp"

namespace ivc::io {

/// All floating-point output uses 17 significant digits so that emitted files
/// parse back to bit-identical doubles.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string ivfun_to_csv(const IvFun1D& f) {
    if (!f.is_grid())
        throw std::invalid_argument("ivfun_to_csv: only grid functions are serializable");
    std::ostringstream out;
    out << "t,lower,upper\n";
    for (std::size_t i = 0; i < f.size(); ++i)
        out << format_double(f.node(i)) << ',' << format_double(f.lower_values()[i]) << ','
            << format_double(f.upper_values()[i]) << '\n';
    return out.str();
}

inline void write_ivfun_csv(const IvFun1D& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_ivfun_csv: cannot open '" + path + "'");
    out << ivfun_to_csv(f);
    if (!out) throw std::runtime_error("write_ivfun_csv: write to '" + path + "' failed");
}

namespace detail {
inline double parse_double(const std::string& s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw std::runtime_error("CSV: malformed number '" + s + "'");
    return v;
}
} // namespace detail

/// Reads `t,lower,upper` rows back into a grid function. The nodes must be
/// the 2^k + 1 uniformly spaced dyadic nodes of their own range.
inline IvFun1D read_ivfun_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_ivfun_csv: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,lower,upper", 0) != 0)
        throw std::runtime_error("read_ivfun_csv: missing 't,lower,upper' header in '" + path + "'");
    std::vector<double> t, lo, hi;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        if (cells.size() != 3)
            throw std::runtime_error("read_ivfun_csv: expected 3 columns, got " +
                                     std::to_string(cells.size()));
        t.push_back(detail::parse_double(cells[0]));
        lo.push_back(detail::parse_double(cells[1]));
        hi.push_back(detail::parse_double(cells[2]));
    }
    if (t.size() < 2) throw std::runtime_error("read_ivfun_csv: need at least 2 rows");
    const double a = t.front(), b = t.back();
    if (!(a < b)) throw std::runtime_error("read_ivfun_csv: nodes must increase");
    const double h = (b - a) / static_cast<double>(t.size() - 1);
    for (std::size_t i = 1; i + 1 < t.size(); ++i)
        if (std::abs(t[i] - (a + static_cast<double>(i) * h)) > 1e-9 * (b - a))
            throw std::runtime_error("read_ivfun_csv: nodes are not uniformly spaced");
    return IvFun1D::grid(a, b, std::move(lo), std::move(hi));
}

// ---------------------------------------------------------------------------
// JSON configuration
// ---------------------------------------------------------------------------

/// Forcing term descriptor:
///   {"type": "affine", "lower": [c0, c1], "upper": [c0, c1]}  (c0 + c1*t)
///   {"type": "grid", "t": [...], "lower": [...], "upper": [...]}
///   {"type": "csv", "path": "..."}
inline IvFun1D forcing_from_json(const nlohmann::json& descriptor, double a, double b) {
    const std::string type = descriptor.at("type").get<std::string>();
    if (type == "affine") {
        const auto lo = descriptor.at("lower").get<std::vector<double>>();
        const auto hi = descriptor.at("upper").get<std::vector<double>>();
        if (lo.size() != 2 || hi.size() != 2)
            throw std::runtime_error("forcing: affine coefficients must be [c0, c1]");
        return IvFun1D(
            a, b, [lo](double t) { return lo[0] + lo[1] * t; },
            [hi](double t) { return hi[0] + hi[1] * t; });
    }
    if (type == "grid") {
        const auto t = descriptor.at("t").get<std::vector<double>>();
        auto lo = descriptor.at("lower").get<std::vector<double>>();
        auto hi = descriptor.at("upper").get<std::vector<double>>();
        if (t.size() != lo.size() || t.size() != hi.size() || t.size() < 2)
            throw std::runtime_error("forcing: grid arrays must have equal length >= 2");
        if (t.front() != a || t.back() != b)
            throw std::runtime_error("forcing: grid range must match the problem domain");
        return IvFun1D::grid(a, b, std::move(lo), std::move(hi));
    }
    if (type == "csv") {
        IvFun1D f = read_ivfun_csv(descriptor.at("path").get<std::string>());
        if (f.domain_lo() != a || f.domain_hi() != b)
            throw std::runtime_error("forcing: CSV range must match the problem domain");
        return f;
    }
    throw std::runtime_error("forcing: unknown type '" + type + "'");
}

/// Problem file:
///   {"domain": [a, b],
///    "kernel": {"name": "...", "params": [...]},
///    "forcing": {...}}
inline VolterraProblem problem_from_json(const nlohmann::json& j) {
    const auto domain = j.at("domain").get<std::vector<double>>();
    if (domain.size() != 2) throw std::runtime_error("problem: domain must be [a, b]");
    const auto& kj = j.at("kernel");
    const Kernel kernel =
        make_kernel(kj.at("name").get<std::string>(), kj.at("params").get<std::vector<double>>());
    IvFun1D forcing = forcing_from_json(j.at("forcing"), domain[0], domain[1]);
    return VolterraProblem(domain[0], domain[1], std::move(forcing), kernel);
}

/// Family file:
///   {"kernel": "affine-product" | "cos-arctan",
///    "box": [[lo, hi], ...],
///    "forcing": {...},
///    "domain": [a, b]}
inline ParamFamily family_from_json(const nlohmann::json& j) {
    const auto domain = j.at("domain").get<std::vector<double>>();
    if (domain.size() != 2) throw std::runtime_error("family: domain must be [a, b]");
    const auto box_sides = j.at("box").get<std::vector<std::vector<double>>>();
    std::vector<Interval> box;
    for (const auto& side : box_sides) {
        if (side.size() != 2) throw std::runtime_error("family: box sides must be [lo, hi]");
        box.emplace_back(side[0], side[1]);
    }
    IvFun1D forcing = forcing_from_json(j.at("forcing"), domain[0], domain[1]);
    return ParamFamily(std::move(box), j.at("kernel").get<std::string>(), domain[0], domain[1],
                       std::move(forcing));
}

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    nlohmann::json j;
    in >> j;
    return j;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

inline nlohmann::json inverse_result_to_json(const InverseResult& r) {
    return nlohmann::json{{"lambda_star", r.lambda_star},
                          {"objective", r.objective},
                          {"rho_bound", r.rho_bound},
                          {"certificate", r.certificate},
                          {"eps_proj", r.eps_proj},
                          {"no_descent", r.no_descent},
                          {"evals", r.evals},
                          {"starts", r.starts}};
}

} // namespace ivc::io
