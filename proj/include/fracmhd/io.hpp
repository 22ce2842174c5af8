#pragma once

#include <filesystem>
#include <string>

#include "fracmhd/field.hpp"

namespace fracmhd {

// Snapshot format: one text header line
//   fracmhd-field v1 d=<d> n=<n>
// followed by binary little-endian (re, im) float64 pairs, one per mode in
// row-major frequency order.
void save_field(const std::filesystem::path& path, const SpectralField& f);
SpectralField load_field(const std::filesystem::path& path);

// VectorFields are stored as one file per component: <prefix>_c0.field, ...
void save_vector_field(const std::filesystem::path& prefix, const VectorField& v);
VectorField load_vector_field(const std::filesystem::path& prefix, const Grid& grid);

// Atomic text write: temp file in the same directory, then rename.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

// Stable float formatting for reports (shortest round-trip form).
std::string format_double(double v);

}  // namespace fracmhd
