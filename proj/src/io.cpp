#include "fracmhd/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace fracmhd {

void save_field(const std::filesystem::path& path, const SpectralField& f) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("save_field: cannot open " + path.string());
    out << "fracmhd-field v1 d=" << f.grid().dim() << " n=" << f.grid().n() << "\n";
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double re = f[i].real(), im = f[i].imag();
        out.write(reinterpret_cast<const char*>(&re), sizeof(double));
        out.write(reinterpret_cast<const char*>(&im), sizeof(double));
    }
    if (!out) throw std::runtime_error("save_field: write failed for " + path.string());
}

SpectralField load_field(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_field: cannot open " + path.string());
    std::string header;
    std::getline(in, header);
    int d = 0, n = 0;
    if (std::sscanf(header.c_str(), "fracmhd-field v1 d=%d n=%d", &d, &n) != 2)
        throw std::runtime_error("load_field: bad header in " + path.string());
    Grid grid(d, n);
    std::vector<Complex> coeffs(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double re = 0.0, im = 0.0;
        in.read(reinterpret_cast<char*>(&re), sizeof(double));
        in.read(reinterpret_cast<char*>(&im), sizeof(double));
        if (!in) throw std::runtime_error("load_field: truncated data in " + path.string());
        coeffs[i] = Complex(re, im);
    }
    return SpectralField(grid, std::move(coeffs));
}

void save_vector_field(const std::filesystem::path& prefix, const VectorField& v) {
    for (int c = 0; c < v.dim(); ++c) {
        std::filesystem::path p = prefix;
        p += "_c" + std::to_string(c) + ".field";
        save_field(p, v[c]);
    }
}

VectorField load_vector_field(const std::filesystem::path& prefix, const Grid& grid) {
    std::vector<SpectralField> comps;
    for (int c = 0; c < grid.dim(); ++c) {
        std::filesystem::path p = prefix;
        p += "_c" + std::to_string(c) + ".field";
        SpectralField f = load_field(p);
        check_same_grid(f.grid(), grid, "load_vector_field");
        comps.push_back(std::move(f));
    }
    return VectorField(std::move(comps));
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("write_text_atomic: cannot open " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write_text_atomic: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace fracmhd
