#include "stripes/random_sets.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace stripes {

std::uint64_t SplitMix64::next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

int SplitMix64::uniform_int(int lo, int hi) {
    if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    // Rejection-free modulo is fine here: span is tiny relative to 2^64, the
    // bias is far below anything the statistical corpora could resolve.
    return lo + static_cast<int>(next() % span);
}

SplitMix64 SplitMix64::split() {
    return SplitMix64(next() ^ 0x5851f42d4c957f2dULL);
}

PeriodicSet1D random_set(SplitMix64& rng, double L, double delta_min) {
    if (!(L > 0.0)) throw std::invalid_argument("random_set: period must be positive");
    if (delta_min < 0.0) delta_min = L / 100.0;
    if (!(delta_min * 16.0 < L))
        throw std::invalid_argument("random_set: delta_min too large for up to 8 arcs");

    const int n_arcs = rng.uniform_int(1, 8);
    std::vector<double> pts(static_cast<std::size_t>(2 * n_arcs));
    for (int attempt = 0; attempt < 100000; ++attempt) {
        for (double& x : pts) x = rng.uniform01() * L;
        std::sort(pts.begin(), pts.end());
        bool ok = true;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            if (pts[i + 1] - pts[i] < delta_min) { ok = false; break; }
        if (ok && (L - pts.back()) + pts.front() < delta_min) ok = false;
        if (!ok) continue;
        std::vector<std::pair<double, double>> arcs;
        arcs.reserve(static_cast<std::size_t>(n_arcs));
        for (int k = 0; k < n_arcs; ++k)
            arcs.emplace_back(pts[static_cast<std::size_t>(2 * k)],
                              pts[static_cast<std::size_t>(2 * k + 1)]);
        return PeriodicSet1D(L, arcs);
    }
    throw std::runtime_error("random_set: rejection sampling failed to find a feasible set");
}

GridSetND random_grid(SplitMix64& rng, int dim, int n, double L, double fill) {
    if (!(fill >= 0.0 && fill <= 1.0))
        throw std::invalid_argument("random_grid: fill must lie in [0, 1]");
    std::size_t cells = 1;
    for (int a = 0; a < dim; ++a) cells *= static_cast<std::size_t>(n);
    std::vector<std::uint8_t> mask(cells, 0);
    for (std::size_t i = 0; i < cells; ++i)
        if (rng.uniform01() < fill) mask[i] = 1;
    return GridSetND(dim, n, L, std::move(mask));
}

} // namespace stripes
