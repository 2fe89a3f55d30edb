// textio.hpp — helpers shared by the text artifact formats.
//
// Doubles are printed with 17 significant digits so every binary64 value
// round-trips exactly (and reruns produce byte-identical files).

#pragma once

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "ltloracle/errors.hpp"

namespace ltloracle {

inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline double parse_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw DataError("bad number '" + s + "'");
    return v;
}

inline std::uint64_t parse_u64(const std::string& s) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0') throw DataError("bad integer '" + s + "'");
    return v;
}

inline std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> words;
    std::istringstream is(line);
    std::string w;
    while (is >> w) words.push_back(w);
    return words;
}

} // namespace ltloracle
