#pragma once

#include <string>
#include <utility>

#include "fracmhd/field.hpp"
#include "fracmhd/random.hpp"

namespace fracmhd {

// Named initial-data presets, all divergence-free:
//   taylor-green                       classical vortex pair, b a shifted copy at half amplitude
//   random-band(jlo,jhi,amplitude)     seeded solenoidal-projected band-limited noise
//   single-mode(k1,...,kd,amplitude)   one solenoidal mode
//   zero                               zero pair
//   snapshot:<path-prefix>             component files written by the CLI
std::pair<VectorField, VectorField> make_initial_data(const std::string& preset, const Grid& grid,
                                                      Rng& rng);

// Just the velocity part (used when initial_data_b overrides the pair).
VectorField make_initial_field(const std::string& preset, const Grid& grid, Rng& rng);

VectorField taylor_green(const Grid& grid, double amplitude, double phase_shift = 0.0);
VectorField single_solenoidal_mode(const Grid& grid, const std::array<int, 3>& k, double amplitude);

}  // namespace fracmhd
