#include "stripes/verification.hpp"

#include "stripes/energy1d.hpp"
#include "stripes/energynd.hpp"
#include "stripes/kernels.hpp"
#include "stripes/parallel.hpp"
#include "stripes/random_sets.hpp"
#include "stripes/reflection.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace stripes {

namespace {

std::vector<Interval> random_subintervals(SplitMix64& rng, double lo, double hi) {
    const int k = rng.uniform_int(0, 3);
    std::vector<double> pts(static_cast<std::size_t>(2 * k));
    for (double& x : pts) x = lo + rng.uniform01() * (hi - lo);
    std::sort(pts.begin(), pts.end());
    std::vector<Interval> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const double s = pts[static_cast<std::size_t>(2 * i)];
        const double t = pts[static_cast<std::size_t>(2 * i + 1)];
        if (t > s) out.emplace_back(s, t);
    }
    return out;
}

void finalize(SuiteResult& res, const std::vector<double>& margins) {
    res.worst_margin = std::numeric_limits<double>::infinity();
    for (const double m : margins) {
        res.worst_margin = std::min(res.worst_margin, m);
        if (m < -res.tolerance) ++res.violations;
    }
}

} // namespace

std::vector<std::string> suite_names() {
    return {"eta", "chessboard", "rp", "laplace", "nonneg", "splitting", "slicing"};
}

SuiteResult run_suite(const std::string& suite, int trials, std::uint64_t seed,
                      const ModelParams& base, double tol_override, int threads) {
    if (trials < 1)
        throw std::invalid_argument("run_suite: need at least one trial");
    const bool grid_suite = suite == "nonneg" || suite == "splitting" || suite == "slicing";
    if (grid_suite && base.dim != 2)
        throw std::invalid_argument("run_suite: grid suites are pinned to dim 2");

    SuiteResult res;
    res.suite = suite;
    res.trials = trials;
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<double> margins(static_cast<std::size_t>(trials));
    SplitMix64 rng(seed);

    if (suite == "eta") {
        // Difference profile never exceeds the sum of boundary overlap caps.
        res.tolerance = tol_override < 0.0 ? 1e-12 : tol_override;
        std::vector<PeriodicSet1D> sets;
        std::vector<double> zs;
        sets.reserve(margins.size());
        zs.reserve(margins.size());
        for (int i = 0; i < trials; ++i) {
            const double L = 2.0 + 8.0 * rng.uniform01();
            sets.push_back(random_set(rng, L));
            zs.push_back(rng.uniform01() * L);
        }
        parallel_for_index(
            trials,
            [&](int i) {
                const auto& set = sets[static_cast<std::size_t>(i)];
                const double z = zs[static_cast<std::size_t>(i)];
                double cap = 0.0;
                for (const auto& bp : set.boundary()) cap += overlap_cap(set, bp.x, z);
                margins[static_cast<std::size_t>(i)] = cap - difference_profile(set)(z);
            },
            threads);
    } else if (suite == "chessboard") {
        // f0 dominates the boundary stripe-scoring bound.
        res.tolerance = tol_override < 0.0 ? 1e-9 : tol_override;
        std::vector<PeriodicSet1D> sets;
        sets.reserve(margins.size());
        for (int i = 0; i < trials; ++i)
            sets.push_back(random_set(rng, 2.0 + 8.0 * rng.uniform01()));
        parallel_for_index(
            trials,
            [&](int i) {
                const auto& set = sets[static_cast<std::size_t>(i)];
                margins[static_cast<std::size_t>(i)] =
                    f0(set, base, 1e-11).total - chessboard_rhs(set, base);
            },
            threads);
    } else if (suite == "rp") {
        // Reflection-positivity margin of random two-sided configurations.
        res.tolerance = tol_override < 0.0 ? 1e-9 : tol_override;
        std::vector<ReflectionPair> pairs;
        pairs.reserve(margins.size());
        for (int i = 0; i < trials; ++i) {
            const double split = 0.3 + 1.7 * rng.uniform01();
            const double length = split + 0.3 + 1.7 * rng.uniform01();
            const double alpha = 0.25 + 2.25 * rng.uniform01();
            auto left = random_subintervals(rng, 0.0, split);
            auto right = random_subintervals(rng, split, length);
            pairs.emplace_back(split, length, alpha, std::move(left), std::move(right));
        }
        parallel_for_index(
            trials,
            [&](int i) {
                margins[static_cast<std::size_t>(i)] =
                    rp_margin(pairs[static_cast<std::size_t>(i)]);
            },
            threads);
    } else if (suite == "laplace") {
        // Exponential-rate resynthesis reproduces f0 to 1e-5.
        res.tolerance = tol_override < 0.0 ? 0.0 : tol_override;
        std::vector<PeriodicSet1D> sets;
        sets.reserve(margins.size());
        for (int i = 0; i < trials; ++i)
            sets.push_back(random_set(rng, 2.0 + 4.0 * rng.uniform01()));
        parallel_for_index(
            trials,
            [&](int i) {
                const double residual = laplace_identity_residual(
                    sets[static_cast<std::size_t>(i)], base, 1e-6);
                margins[static_cast<std::size_t>(i)] = 1e-5 - residual;
            },
            threads);
    } else if (grid_suite) {
        res.tolerance = tol_override >= 0.0 ? tol_override
                        : suite == "slicing" ? 1e-6
                        : suite == "splitting" ? 1e-12
                                               : 0.0;
        std::vector<GridSetND> grids;
        grids.reserve(margins.size());
        for (int i = 0; i < trials; ++i) grids.push_back(random_grid(rng, 2, 16, 16.0));
        const ModelParams unit_floor = base.with_tau(1.0);
        const ModelParams at_critical = base.with_J(critical_coupling(unit_floor));
        parallel_for_index(
            trials,
            [&](int i) {
                const auto& g = grids[static_cast<std::size_t>(i)];
                double m = 0.0;
                if (suite == "nonneg") {
                    const EnergyReport rep = ftilde(g, at_critical, 1e-6);
                    m = rep.total + rep.err_estimate;
                } else if (suite == "splitting") {
                    m = splitting_margin(g, unit_floor, 1e-6);
                } else {
                    m = std::numeric_limits<double>::infinity();
                    for (const double dm : directional_bound_margins(g, unit_floor, 1e-6))
                        m = std::min(m, dm);
                }
                margins[static_cast<std::size_t>(i)] = m;
            },
            threads);
    } else {
        throw std::invalid_argument("run_suite: unknown suite '" + suite + "'");
    }

    finalize(res, margins);
    res.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    return res;
}

} // namespace stripes
