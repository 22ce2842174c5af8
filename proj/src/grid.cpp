#include "fracmhd/grid.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace fracmhd {

const ModeTable& mode_table(const Grid& grid) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<ModeTable>> cache;

    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(grid.dim(), grid.n());
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;

    auto table = std::make_unique<ModeTable>();
    table->wavevector.resize(grid.size());
    table->radius.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto idx = grid.unflatten(i);
        std::array<double, 3> k{0.0, 0.0, 0.0};
        double r2 = 0.0;
        for (int a = 0; a < grid.dim(); ++a) {
            k[std::size_t(a)] = double(grid.freq(idx[std::size_t(a)]));
            r2 += k[std::size_t(a)] * k[std::size_t(a)];
        }
        table->wavevector[i] = k;
        table->radius[i] = std::sqrt(r2);
        table->max_radius = std::max(table->max_radius, table->radius[i]);
    }
    const ModeTable& ref = *table;
    cache.emplace(key, std::move(table));
    return ref;
}

}  // namespace fracmhd
