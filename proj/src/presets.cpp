#include "fracmhd/presets.hpp"

#include <cmath>
#include <stdexcept>

#include "fracmhd/fft.hpp"
#include "fracmhd/io.hpp"
#include "fracmhd/spectral_ops.hpp"

namespace fracmhd {

namespace {

struct ParsedPreset {
    std::string name;
    std::vector<double> args;
};

ParsedPreset parse_preset(const std::string& text) {
    ParsedPreset p;
    const auto open = text.find('(');
    if (open == std::string::npos) {
        p.name = text;
        return p;
    }
    if (text.back() != ')') throw std::invalid_argument("preset: missing ')' in '" + text + "'");
    p.name = text.substr(0, open);
    std::string args = text.substr(open + 1, text.size() - open - 2);
    std::size_t pos = 0;
    while (pos < args.size()) {
        auto comma = args.find(',', pos);
        if (comma == std::string::npos) comma = args.size();
        p.args.push_back(std::stod(args.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return p;
}

std::vector<double> sample_grid(const Grid& grid, int axis) {
    std::vector<double> x(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto idx = grid.unflatten(i);
        x[i] = kTwoPi * double(idx[std::size_t(axis)]) / double(grid.n());
    }
    return x;
}

}  // namespace

VectorField taylor_green(const Grid& grid, double amplitude, double phase_shift) {
    if (grid.dim() < 2)
        throw std::invalid_argument("taylor_green: needs at least two dimensions");
    auto xs = sample_grid(grid, 0);
    auto ys = sample_grid(grid, 1);
    std::vector<double> u0(grid.size()), u1(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = xs[i] + phase_shift, y = ys[i] + phase_shift;
        u0[i] = amplitude * std::sin(x) * std::cos(y);
        u1[i] = -amplitude * std::cos(x) * std::sin(y);
    }
    std::vector<SpectralField> comps;
    comps.push_back(transform_forward(grid, u0));
    comps.push_back(transform_forward(grid, u1));
    for (int c = 2; c < grid.dim(); ++c) comps.emplace_back(grid);
    VectorField v(std::move(comps));
    hermitian_symmetrize(v);
    v.solenoidal = true;
    return v;
}

VectorField single_solenoidal_mode(const Grid& grid, const std::array<int, 3>& k,
                                   double amplitude) {
    const int d = grid.dim();
    double norm2 = 0.0;
    for (int a = 0; a < d; ++a) norm2 += double(k[std::size_t(a)]) * double(k[std::size_t(a)]);
    if (norm2 == 0.0) throw std::invalid_argument("single_solenoidal_mode: k must be nonzero");
    // perpendicular direction: rotate in the plane of the first two axes
    std::array<double, 3> perp{0.0, 0.0, 0.0};
    if (d >= 2) {
        perp[0] = -double(k[1]);
        perp[1] = double(k[0]);
        if (perp[0] == 0.0 && perp[1] == 0.0) perp[0] = 1.0;  // k along a later axis
    } else {
        throw std::invalid_argument("single_solenoidal_mode: needs at least two dimensions");
    }
    double pn = 0.0;
    for (int a = 0; a < d; ++a) pn += perp[std::size_t(a)] * perp[std::size_t(a)];
    pn = std::sqrt(pn);

    VectorField v(grid);
    std::array<int, 3> mk{0, 0, 0};
    for (int a = 0; a < d; ++a) mk[std::size_t(a)] = -k[std::size_t(a)];
    for (int c = 0; c < d; ++c) {
        const double amp = amplitude * perp[std::size_t(c)] / pn;
        // cos(k.x) direction: amplitude/2 at +-k
        v[c].set_freq(k, Complex(0.5 * amp, 0.0));
        v[c].set_freq(mk, Complex(0.5 * amp, 0.0));
    }
    v.solenoidal = true;
    return v;
}

VectorField make_initial_field(const std::string& preset, const Grid& grid, Rng& rng) {
    if (preset.rfind("snapshot:", 0) == 0)
        return load_vector_field(preset.substr(9), grid);
    ParsedPreset p = parse_preset(preset);
    if (p.name == "zero") return VectorField(grid);
    if (p.name == "taylor-green") {
        const double amp = p.args.empty() ? 1.0 : p.args[0];
        return taylor_green(grid, amp);
    }
    if (p.name == "random-band") {
        if (p.args.size() != 3)
            throw std::invalid_argument("preset: random-band needs (jlo, jhi, amplitude)");
        RandomFieldOpts opts;
        opts.kmin = std::ldexp(1.0, int(p.args[0]));
        opts.kmax = std::ldexp(1.0, int(p.args[1]));
        opts.amplitude = p.args[2];
        return random_solenoidal_field(grid, rng, opts);
    }
    if (p.name == "single-mode") {
        if (int(p.args.size()) != grid.dim() + 1)
            throw std::invalid_argument("preset: single-mode needs (k1..kd, amplitude)");
        std::array<int, 3> k{0, 0, 0};
        for (int a = 0; a < grid.dim(); ++a) k[std::size_t(a)] = int(p.args[std::size_t(a)]);
        return single_solenoidal_mode(grid, k, p.args.back());
    }
    throw std::invalid_argument("preset: unknown preset '" + preset + "'");
}

std::pair<VectorField, VectorField> make_initial_data(const std::string& preset, const Grid& grid,
                                                      Rng& rng) {
    ParsedPreset p;
    if (preset.rfind("snapshot:", 0) == 0) {
        const std::string prefix = preset.substr(9);
        return {load_vector_field(prefix + "_u", grid), load_vector_field(prefix + "_b", grid)};
    }
    p = parse_preset(preset);
    if (p.name == "taylor-green") {
        const double amp = p.args.empty() ? 1.0 : p.args[0];
        return {taylor_green(grid, amp), taylor_green(grid, 0.5 * amp, 0.25 * kTwoPi / 2.0)};
    }
    if (p.name == "random-band") {
        VectorField u = make_initial_field(preset, grid, rng);
        VectorField b = make_initial_field(preset, grid, rng);  // next draws of the stream
        return {std::move(u), std::move(b)};
    }
    if (p.name == "single-mode") {
        VectorField u = make_initial_field(preset, grid, rng);
        return {std::move(u), VectorField(grid)};
    }
    if (p.name == "zero") return {VectorField(grid), VectorField(grid)};
    throw std::invalid_argument("preset: unknown preset '" + preset + "'");
}

}  // namespace fracmhd
