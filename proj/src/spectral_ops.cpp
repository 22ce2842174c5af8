#include "fracmhd/spectral_ops.hpp"

#include <cmath>
#include <stdexcept>

#include "fracmhd/kernels.hpp"

namespace fracmhd {

namespace {
std::span<const Complex> cspan(const SpectralField& f) { return {f.coeffs().data(), f.size()}; }
std::span<Complex> mspan(SpectralField& f) { return {f.coeffs().data(), f.size()}; }
}  // namespace

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
    check_same_grid(a.grid(), b.grid(), "operator+");
    SpectralField out = a;
    kernels::axpby(Complex(1.0, 0.0), cspan(b), Complex(1.0, 0.0), mspan(out));
    return out;
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
    check_same_grid(a.grid(), b.grid(), "operator-");
    SpectralField out = a;
    kernels::axpby(Complex(-1.0, 0.0), cspan(b), Complex(1.0, 0.0), mspan(out));
    return out;
}

SpectralField operator*(double s, const SpectralField& a) {
    SpectralField out = a;
    kernels::axpby(Complex(0.0, 0.0), cspan(a), Complex(s, 0.0), mspan(out));
    return out;
}

SpectralField& operator+=(SpectralField& a, const SpectralField& b) {
    check_same_grid(a.grid(), b.grid(), "operator+=");
    kernels::axpby(Complex(1.0, 0.0), cspan(b), Complex(1.0, 0.0), mspan(a));
    return a;
}

SpectralField& operator-=(SpectralField& a, const SpectralField& b) {
    check_same_grid(a.grid(), b.grid(), "operator-=");
    kernels::axpby(Complex(-1.0, 0.0), cspan(b), Complex(1.0, 0.0), mspan(a));
    return a;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
    check_same_grid(a.grid(), b.grid(), "operator+");
    VectorField out = a;
    for (int c = 0; c < a.dim(); ++c) out[c] += b[c];
    out.solenoidal = a.solenoidal && b.solenoidal;
    return out;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
    check_same_grid(a.grid(), b.grid(), "operator-");
    VectorField out = a;
    for (int c = 0; c < a.dim(); ++c) out[c] -= b[c];
    out.solenoidal = a.solenoidal && b.solenoidal;
    return out;
}

VectorField operator*(double s, const VectorField& a) {
    VectorField out = a;
    for (int c = 0; c < a.dim(); ++c) out[c] = s * out[c];
    return out;
}

SpectralField fractional_laplacian(const SpectralField& f, double alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("fractional_laplacian: alpha must be finite and >= 0");
    const auto& table = mode_table(f.grid());
    SpectralField out(f.grid());
    const std::ptrdiff_t n = std::ptrdiff_t(f.size());
    const double two_alpha = 2.0 * alpha;
#pragma omp parallel for schedule(static) if (f.size() >= 16384)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const double r = table.radius[std::size_t(i)];
        // 0^0 = 1 by the alpha=0 identity convention; 0 otherwise
        const double m = (r == 0.0) ? (alpha == 0.0 ? 1.0 : 0.0) : std::pow(r, two_alpha);
        out[std::size_t(i)] = m * f[std::size_t(i)];
    }
    return out;
}

SpectralField derivative(const SpectralField& f, int axis) {
    if (axis < 0 || axis >= f.grid().dim())
        throw std::invalid_argument("derivative: axis out of range");
    const auto& table = mode_table(f.grid());
    SpectralField out(f.grid());
    const std::ptrdiff_t n = std::ptrdiff_t(f.size());
#pragma omp parallel for schedule(static) if (f.size() >= 16384)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const double k = table.wavevector[std::size_t(i)][std::size_t(axis)];
        out[std::size_t(i)] = Complex(0.0, k) * f[std::size_t(i)];
    }
    return out;
}

VectorField leray_project(const VectorField& v) {
    const Grid& grid = v.grid();
    const int d = grid.dim();
    const auto& table = mode_table(grid);
    VectorField out(grid);
    const std::ptrdiff_t n = std::ptrdiff_t(grid.size());
#pragma omp parallel for schedule(static) if (grid.size() >= 16384)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const std::size_t m = std::size_t(i);
        const auto& k = table.wavevector[m];
        const double r = table.radius[m];
        if (r == 0.0) {
            for (int c = 0; c < d; ++c) out[c][m] = v[c][m];
            continue;
        }
        Complex kdotv(0.0, 0.0);
        for (int c = 0; c < d; ++c) kdotv += k[std::size_t(c)] * v[c][m];
        const double inv_r2 = 1.0 / (r * r);
        for (int c = 0; c < d; ++c) out[c][m] = v[c][m] - k[std::size_t(c)] * kdotv * inv_r2;
    }
    out.solenoidal = true;
    return out;
}

double divergence_residual(const VectorField& v) {
    const auto& table = mode_table(v.grid());
    const int d = v.grid().dim();
    double worst = 0.0;
    for (std::size_t i = 0; i < v.grid().size(); ++i) {
        Complex kdotv(0.0, 0.0);
        for (int c = 0; c < d; ++c) kdotv += table.wavevector[i][std::size_t(c)] * v[c][i];
        worst = std::max(worst, std::abs(kdotv));
    }
    return worst;
}

double max_coeff_magnitude(const VectorField& v) {
    double m = 0.0;
    for (const auto& c : v.components)
        m = std::max(m, kernels::max_abs(std::span<const Complex>(c.coeffs().data(), c.size())));
    return m;
}

bool solenoidal_within(const VectorField& v, double rel_tol) {
    const double scale = max_coeff_magnitude(v);
    if (scale == 0.0) return true;
    return divergence_residual(v) <= rel_tol * scale;
}

void hermitian_symmetrize(SpectralField& f) {
    const Grid& grid = f.grid();
    const int d = grid.dim();
    const int n = grid.n();
    std::vector<Complex>& c = f.coeffs();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto idx = grid.unflatten(i);
        bool nyquist = false;
        std::array<int, 3> pidx{0, 0, 0};
        for (int a = 0; a < d; ++a) {
            if (idx[std::size_t(a)] == n / 2) nyquist = true;
            pidx[std::size_t(a)] = (n - idx[std::size_t(a)]) % n;
        }
        if (nyquist) {
            c[i] = Complex(0.0, 0.0);
            continue;
        }
        const std::size_t p = grid.flatten(pidx);
        if (p == i) {
            c[i] = Complex(c[i].real(), 0.0);
        } else if (p > i) {
            const Complex avg = 0.5 * (c[i] + std::conj(c[p]));
            c[i] = avg;
            c[p] = std::conj(avg);
        }
    }
}

void hermitian_symmetrize(VectorField& v) {
    for (auto& c : v.components) hermitian_symmetrize(c);
}

SpectralField dealiased_product(const SpectralField& f, const SpectralField& g, int pad) {
    check_same_grid(f.grid(), g.grid(), "dealiased_product");
    if (pad < 2) throw std::invalid_argument("dealiased_product: pad factor must be >= 2");
    auto fs = transform_inverse_padded(f, pad);
    auto gs = transform_inverse_padded(g, pad);
    kernels::pointwise_multiply(fs, gs, std::span<double>(fs.data(), fs.size()));
    SpectralField out = transform_forward_truncating(f.grid(), pad, fs);
    // drop Nyquist slots: the truncated product must stay in the clean
    // Hermitian-representable band
    const Grid& grid = f.grid();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto idx = grid.unflatten(i);
        for (int a = 0; a < grid.dim(); ++a)
            if (idx[std::size_t(a)] == grid.n() / 2) {
                out[i] = Complex(0.0, 0.0);
                break;
            }
    }
    return out;
}

namespace {

SpectralField advect_scalar(const std::vector<std::vector<double>>& u_samples,
                            const SpectralField& f, int pad) {
    const Grid& grid = f.grid();
    const int d = grid.dim();
    Grid fine(d, grid.n() * pad);
    std::vector<double> acc(fine.size(), 0.0);
    for (int a = 0; a < d; ++a) {
        auto df = transform_inverse_padded(derivative(f, a), pad);
        kernels::pointwise_multiply_add(u_samples[std::size_t(a)], df,
                                        std::span<double>(acc.data(), acc.size()));
    }
    SpectralField out = transform_forward_truncating(grid, pad, acc);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto idx = grid.unflatten(i);
        for (int a = 0; a < d; ++a)
            if (idx[std::size_t(a)] == grid.n() / 2) {
                out[i] = Complex(0.0, 0.0);
                break;
            }
    }
    return out;
}

std::vector<std::vector<double>> component_samples(const VectorField& u, int pad) {
    std::vector<std::vector<double>> s;
    s.reserve(std::size_t(u.dim()));
    for (int a = 0; a < u.dim(); ++a) s.push_back(transform_inverse_padded(u[a], pad));
    return s;
}

}  // namespace

SpectralField advect(const VectorField& u, const SpectralField& f, AdvectStatus* status) {
    check_same_grid(u.grid(), f.grid(), "advect");
    if (status) status->nonsolenoidal_warning = !u.solenoidal && !solenoidal_within(u);
    constexpr int pad = 2;
    return advect_scalar(component_samples(u, pad), f, pad);
}

VectorField advect(const VectorField& u, const VectorField& f, AdvectStatus* status) {
    check_same_grid(u.grid(), f.grid(), "advect");
    if (status) status->nonsolenoidal_warning = !u.solenoidal && !solenoidal_within(u);
    constexpr int pad = 2;
    auto us = component_samples(u, pad);
    std::vector<SpectralField> comps;
    comps.reserve(std::size_t(f.dim()));
    for (int c = 0; c < f.dim(); ++c) comps.push_back(advect_scalar(us, f[c], pad));
    return VectorField(std::move(comps));
}

double inner_product(const SpectralField& f, const SpectralField& g) {
    check_same_grid(f.grid(), g.grid(), "inner_product");
    const Complex s = kernels::dot(cspan(f), cspan(g));
    return f.grid().volume() * s.real();
}

double inner_product(const VectorField& f, const VectorField& g) {
    check_same_grid(f.grid(), g.grid(), "inner_product");
    double acc = 0.0;
    for (int c = 0; c < f.dim(); ++c) acc += inner_product(f[c], g[c]);
    return acc;
}

double l2_norm(const SpectralField& f) {
    return std::sqrt(f.grid().volume() * kernels::sum_abs2(cspan(f)));
}

double l2_norm(const VectorField& f) {
    double acc = 0.0;
    for (const auto& c : f.components)
        acc += kernels::sum_abs2(std::span<const Complex>(c.coeffs().data(), c.size()));
    return std::sqrt(f.grid().volume() * acc);
}

double triple_integral(const SpectralField& a, const SpectralField& b, const SpectralField& c) {
    check_same_grid(a.grid(), b.grid(), "triple_integral");
    check_same_grid(a.grid(), c.grid(), "triple_integral");
    constexpr int pad = 2;
    auto as = transform_inverse_padded(a, pad);
    auto bs = transform_inverse_padded(b, pad);
    auto cs = transform_inverse_padded(c, pad);
    kernels::pointwise_multiply(as, bs, std::span<double>(as.data(), as.size()));
    kernels::pointwise_multiply(as, cs, std::span<double>(as.data(), as.size()));
    Grid fine(a.grid().dim(), a.grid().n() * pad);
    return fine.cell_volume() * kernels::sum(as);
}

}  // namespace fracmhd
