#include "fracmhd/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>

namespace fracmhd {

namespace {

// fftw_malloc-backed complex buffer so new-array execution keeps the
// alignment the plans were created with.
struct AlignedBuffer {
    explicit AlignedBuffer(std::size_t n)
        : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
        if (!data) throw std::bad_alloc();
    }
    ~AlignedBuffer() { fftw_free(data); }
    AlignedBuffer(const AlignedBuffer&) = delete;
    AlignedBuffer& operator=(const AlignedBuffer&) = delete;
    fftw_complex* data;
};

struct PlanCache {
    std::mutex mu;
    std::map<std::tuple<int, int, int>, fftw_plan> cache;
    ~PlanCache() {
        for (auto& [key, plan] : cache) fftw_destroy_plan(plan);
    }
};

// Plans are cached per (dim, n, sign); creation is serialized, execution via
// the new-array interface is safe to run concurrently.
fftw_plan get_plan(int dim, int n, int sign) {
    static PlanCache plans;
    auto& mu = plans.mu;
    auto& cache = plans.cache;

    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(dim, n, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::size_t total = 1;
    for (int a = 0; a < dim; ++a) total *= std::size_t(n);
    AlignedBuffer in(total), out(total);
    int dims[3] = {n, n, n};
    fftw_plan plan = fftw_plan_dft(dim, dims, in.data, out.data, sign, FFTW_ESTIMATE);
    if (!plan) throw std::runtime_error("fft: plan creation failed");
    cache.emplace(key, plan);
    return plan;
}

void execute(int dim, int n, int sign, fftw_complex* in, fftw_complex* out) {
    fftw_execute_dft(get_plan(dim, n, sign), in, out);
}

// Per-axis embedding targets on a finer grid. A coarse Nyquist coefficient
// represents cos((n/2)x) content and splits evenly between +n/2 and -n/2.
struct AxisTarget {
    int idx[2];
    double w[2];
    int count;
};

std::vector<AxisTarget> axis_targets(const Grid& coarse, const Grid& fine) {
    std::vector<AxisTarget> t(std::size_t(coarse.n()));
    for (int i = 0; i < coarse.n(); ++i) {
        int k = coarse.freq(i);
        AxisTarget& a = t[std::size_t(i)];
        if (k == coarse.n() / 2) {
            a.count = 2;
            a.idx[0] = fine.index_of_freq(k);
            a.idx[1] = fine.index_of_freq(-k);
            a.w[0] = a.w[1] = 0.5;
        } else {
            a.count = 1;
            a.idx[0] = fine.index_of_freq(k);
            a.w[0] = 1.0;
            a.idx[1] = 0;
            a.w[1] = 0.0;
        }
    }
    return t;
}

}  // namespace

SpectralField transform_forward(const Grid& grid, const std::vector<double>& physical_samples) {
    if (physical_samples.size() != grid.size())
        throw std::invalid_argument("transform_forward: sample count does not match grid");
    AlignedBuffer in(grid.size()), out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        in.data[i][0] = physical_samples[i];
        in.data[i][1] = 0.0;
    }
    execute(grid.dim(), grid.n(), FFTW_FORWARD, in.data, out.data);
    SpectralField f(grid);
    const double scale = 1.0 / double(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        f[i] = Complex(out.data[i][0] * scale, out.data[i][1] * scale);
    return f;
}

std::vector<double> transform_inverse(const SpectralField& f) {
    const Grid& grid = f.grid();
    AlignedBuffer in(grid.size()), out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        in.data[i][0] = f[i].real();
        in.data[i][1] = f[i].imag();
    }
    execute(grid.dim(), grid.n(), FFTW_BACKWARD, in.data, out.data);
    std::vector<double> samples(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) samples[i] = out.data[i][0];
    return samples;
}

double imaginary_residual(const SpectralField& f) {
    const Grid& grid = f.grid();
    AlignedBuffer in(grid.size()), out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        in.data[i][0] = f[i].real();
        in.data[i][1] = f[i].imag();
    }
    execute(grid.dim(), grid.n(), FFTW_BACKWARD, in.data, out.data);
    double m = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) m = std::max(m, std::fabs(out.data[i][1]));
    return m;
}

std::vector<double> transform_inverse_padded(const SpectralField& f, int factor) {
    if (factor < 1) throw std::invalid_argument("transform_inverse_padded: factor must be >= 1");
    if (factor == 1) return transform_inverse(f);
    const Grid& coarse = f.grid();
    Grid fine(coarse.dim(), coarse.n() * factor);
    auto targets = axis_targets(coarse, fine);

    AlignedBuffer in(fine.size()), out(fine.size());
    std::memset(in.data, 0, sizeof(fftw_complex) * fine.size());
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        const Complex c = f[i];
        if (c == Complex(0.0, 0.0)) continue;
        auto idx = coarse.unflatten(i);
        // distribute over the <= 2^d fine slots this coarse mode expands to
        int counts[3] = {1, 1, 1};
        for (int a = 0; a < coarse.dim(); ++a) counts[a] = targets[std::size_t(idx[std::size_t(a)])].count;
        for (int c0 = 0; c0 < counts[0]; ++c0)
            for (int c1 = 0; c1 < counts[1]; ++c1)
                for (int c2 = 0; c2 < counts[2]; ++c2) {
                    int pick[3] = {c0, c1, c2};
                    std::array<int, 3> fidx{0, 0, 0};
                    double w = 1.0;
                    for (int a = 0; a < coarse.dim(); ++a) {
                        const AxisTarget& t = targets[std::size_t(idx[std::size_t(a)])];
                        fidx[std::size_t(a)] = t.idx[pick[a]];
                        w *= t.w[pick[a]];
                    }
                    std::size_t flat = fine.flatten(fidx);
                    in.data[flat][0] += w * c.real();
                    in.data[flat][1] += w * c.imag();
                }
    }
    execute(fine.dim(), fine.n(), FFTW_BACKWARD, in.data, out.data);
    std::vector<double> samples(fine.size());
    for (std::size_t i = 0; i < fine.size(); ++i) samples[i] = out.data[i][0];
    return samples;
}

SpectralField transform_forward_truncating(const Grid& coarse, int factor,
                                           const std::vector<double>& padded_samples) {
    if (factor < 1) throw std::invalid_argument("transform_forward_truncating: factor must be >= 1");
    if (factor == 1) return transform_forward(coarse, padded_samples);
    Grid fine(coarse.dim(), coarse.n() * factor);
    if (padded_samples.size() != fine.size())
        throw std::invalid_argument("transform_forward_truncating: sample count does not match padded grid");
    auto targets = axis_targets(coarse, fine);

    AlignedBuffer in(fine.size()), out(fine.size());
    for (std::size_t i = 0; i < fine.size(); ++i) {
        in.data[i][0] = padded_samples[i];
        in.data[i][1] = 0.0;
    }
    execute(fine.dim(), fine.n(), FFTW_FORWARD, in.data, out.data);
    const double scale = 1.0 / double(fine.size());

    SpectralField f(coarse);
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        auto idx = coarse.unflatten(i);
        int counts[3] = {1, 1, 1};
        for (int a = 0; a < coarse.dim(); ++a) counts[a] = targets[std::size_t(idx[std::size_t(a)])].count;
        Complex acc(0.0, 0.0);
        // Nyquist pairs fold back with weight 1: both fine modes alias to the
        // same coarse slot on coarse sample points.
        for (int c0 = 0; c0 < counts[0]; ++c0)
            for (int c1 = 0; c1 < counts[1]; ++c1)
                for (int c2 = 0; c2 < counts[2]; ++c2) {
                    int pick[3] = {c0, c1, c2};
                    std::array<int, 3> fidx{0, 0, 0};
                    for (int a = 0; a < coarse.dim(); ++a)
                        fidx[std::size_t(a)] = targets[std::size_t(idx[std::size_t(a)])].idx[pick[a]];
                    std::size_t flat = fine.flatten(fidx);
                    acc += Complex(out.data[flat][0], out.data[flat][1]);
                }
        f[i] = acc * scale;
    }
    return f;
}

}  // namespace fracmhd
