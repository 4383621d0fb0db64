#pragma once

#include "grid.hpp"
#include "spectral.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace helminv {

// ---- HELMFIELD v1 dump: header line, then n^2 little-endian (re, im) pairs ----

inline void write_field(const std::filesystem::path& path, const ScalarField2D& field) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "HELMFIELD v1 n=" << field.grid.n << "\n";
    static_assert(sizeof(double) == 8);
    for (const Complex& v : field.values) {
        const double re = v.real(), im = v.imag();
        out.write(reinterpret_cast<const char*>(&re), 8);
        out.write(reinterpret_cast<const char*>(&im), 8);
    }
    if (!out) throw std::runtime_error("short write to " + path.string());
}

inline ScalarField2D read_field(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string header;
    std::getline(in, header);
    int n = 0;
    if (std::sscanf(header.c_str(), "HELMFIELD v1 n=%d", &n) != 1 || n < 3)
        throw std::runtime_error("bad HELMFIELD header in " + path.string());
    ScalarField2D field(Grid2D::make(n));
    for (Complex& v : field.values) {
        double re = 0.0, im = 0.0;
        in.read(reinterpret_cast<char*>(&re), 8);
        in.read(reinterpret_cast<char*>(&im), 8);
        v = Complex(re, im);
    }
    if (!in) throw std::runtime_error("truncated HELMFIELD dump " + path.string());
    return field;
}

/// Magnitude map as 16-bit PGM (big-endian sample order per the format).
inline void write_magnitude_pgm(const std::filesystem::path& path, const ScalarField2D& field) {
    double maxmag = field_max_abs(field);
    if (maxmag == 0.0) maxmag = 1.0;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "P5\n" << field.grid.n << " " << field.grid.n << "\n65535\n";
    for (int j = field.grid.n - 1; j >= 0; --j) {  // top row first
        for (int i = 0; i < field.grid.n; ++i) {
            const double mag = std::abs(field.at(i, j)) / maxmag;
            const auto s = static_cast<std::uint16_t>(mag * 65535.0 + 0.5);
            const char bytes[2] = {static_cast<char>(s >> 8), static_cast<char>(s & 0xff)};
            out.write(bytes, 2);
        }
    }
}

// ---- CSV helpers; %.17g keeps re-runs byte-for-byte reproducible ----

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_spectrum_csv(const std::filesystem::path& path, const SpectrumTable& t) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "ell,p,q,xi_x,xi_y,re,im,synthetic_flag\n";
    if (t.origin_present)
        out << t.ell << ",0,0,0,0," << fmt_double(t.origin_value.real()) << ","
            << fmt_double(t.origin_value.imag()) << "," << (t.origin_synthetic ? 1 : 0) << "\n";
    for (auto [p, q] : t.freq.points) {
        if (!t.has(p, q)) continue;
        const Complex v = t.at(p, q);
        out << t.ell << "," << p << "," << q << "," << fmt_double(t.freq.xi_x(p)) << ","
            << fmt_double(t.freq.xi_y(q)) << "," << fmt_double(v.real()) << ","
            << fmt_double(v.imag()) << ",0\n";
    }
}

/// Reads a spectrum CSV back into a table with the given band radius/margin.
inline SpectrumTable read_spectrum_csv(const std::filesystem::path& path, double band_radius,
                                       int margin) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    SpectrumTable t(FrequencyGrid::make(band_radius, margin));
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string tok;
        std::vector<std::string> cols;
        while (std::getline(ss, tok, ',')) cols.push_back(tok);
        if (cols.size() != 8) throw std::runtime_error("malformed spectrum CSV row: " + line);
        t.ell = std::stoi(cols[0]);
        const int p = std::stoi(cols[1]);
        const int q = std::stoi(cols[2]);
        const Complex v(std::stod(cols[5]), std::stod(cols[6]));
        if (p == 0 && q == 0) {
            t.origin_value = v;
            t.origin_present = true;
            t.origin_synthetic = cols[7] == "1";
        } else if (t.in_range(p, q)) {
            t.set(p, q, v);
        }
    }
    return t;
}

inline std::uint64_t fnv1a_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::uint64_t h = 14695981039346656037ull;
    char buf[8192];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
        if (!in) break;
    }
    return h;
}

inline std::uint64_t fnv1a_string(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace helminv
