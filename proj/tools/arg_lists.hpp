#pragma once

// Parsing of list-valued command-line arguments.
//
//   "1.2x6"          six copies of 1.2
//   "1.2x3,1.3x3"    repeated groups, comma separated
//   "10:30:5"        10, 15, ..., 30 (inclusive range)

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "curvlab/common.hpp"

namespace curvlab::cli {

inline double parse_real(const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw InvalidInput("not a number: '" + s + "'");
    }
    if (pos != s.size() || !std::isfinite(v)) throw InvalidInput("not a number: '" + s + "'");
    return v;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t p = s.find(sep, start);
        out.push_back(s.substr(start, p == std::string::npos ? std::string::npos : p - start));
        if (p == std::string::npos) break;
        start = p + 1;
    }
    return out;
}

inline std::vector<double> parse_repeat_list(const std::string& spec) {
    if (spec.empty()) throw InvalidInput("empty list");
    std::vector<double> out;
    for (const auto& item : split(spec, ',')) {
        auto x = item.find('x');
        if (x == std::string::npos) {
            out.push_back(parse_real(item));
            continue;
        }
        double v = parse_real(item.substr(0, x));
        std::string count = item.substr(x + 1);
        char* end = nullptr;
        long n = std::strtol(count.c_str(), &end, 10);
        if (count.empty() || *end != '\0' || n < 1 || n > 1000) throw InvalidInput("bad repeat count in '" + item + "'");
        out.insert(out.end(), static_cast<std::size_t>(n), v);
    }
    return out;
}

inline std::vector<double> parse_range_list(const std::string& spec) {
    if (spec.find(':') == std::string::npos) return parse_repeat_list(spec);
    auto parts = split(spec, ':');
    if (parts.size() != 3) throw InvalidInput("range must be start:stop:step, got '" + spec + "'");
    double a = parse_real(parts[0]), b = parse_real(parts[1]), h = parse_real(parts[2]);
    if (!(h > 0) || b < a) throw InvalidInput("range needs step > 0 and stop >= start");
    std::vector<double> out;
    long n = std::lround(std::floor((b - a) / h + 1e-9));
    if (n > 100000) throw InvalidInput("range too long");
    for (long i = 0; i <= n; ++i) out.push_back(a + static_cast<double>(i) * h);
    return out;
}

}  // namespace curvlab::cli
