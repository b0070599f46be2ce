#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "waitlaw/distort.hpp"
#include "waitlaw/processes.hpp"

namespace waitlaw {

// Shortest exact decimal form; byte-stable across runs.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string waiting_record_csv_header() { return "n,Z,Y,V,in_A_n"; }

inline std::string to_csv(const waiting_record& r) {
    return std::to_string(r.n) + ',' + std::to_string(r.z) + ',' + std::to_string(r.y) + ','
         + std::to_string(r.v) + ',' + (r.in_a ? '1' : '0');
}

inline std::string waiting_record_distorted_csv_header() {
    return "n,Z,Y,V,in_A_n,lambda,gamma,delta,theta";
}

inline std::string to_csv(const waiting_record& r, const distorted_values& d) {
    return to_csv(r) + ',' + format_double(d.lambda) + ',' + format_double(d.gamma) + ','
         + format_double(d.delta) + ',' + format_double(d.theta);
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace waitlaw
