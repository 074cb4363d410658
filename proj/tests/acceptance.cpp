// Acceptance gate: the ten pinned quantitative criteria, one pass/fail line
// each.  Every criterion also carries a wall-clock budget; exceeding it fails
// the criterion.  Exit code 0 only when all ten pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "stripes/energy1d.hpp"
#include "stripes/params.hpp"
#include "stripes/periodic_set.hpp"
#include "stripes/random_sets.hpp"
#include "stripes/search.hpp"
#include "stripes/verification.hpp"

using namespace stripes;

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

std::string suite_detail(const SuiteResult& r) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "worst margin %.3g (tol %.1g, %d/%d violations)",
                  r.worst_margin, r.tolerance, r.violations, r.trials);
    return buf;
}

bool c1_stripe_closed_form(std::string& detail) {
    const ModelParams pm(2, 5.0);
    double worst = 0.0;
    for (const double h : {0.5, 1.0, 1.5, 2.0}) {
        const double direct = f0(make_stripes(h), pm, 1e-12).total;
        const double closed = stripe_energy_inf(h, pm);
        worst = std::max(worst, std::abs(direct - closed) / std::abs(closed));
    }
    detail = fmt("max relative deviation %.3g (limit 1e-8)", worst);
    return worst <= 1e-8;
}

bool c2_hstar_agreement(std::string& detail) {
    double worst = 0.0;
    for (const ModelParams pm : {ModelParams(2, 5.0), ModelParams(2, 6.0), ModelParams(3, 7.0)}) {
        const HStarResult r = find_hstar(pm); // throws past 1e-8 disagreement
        const double e_closed = -(pm.q - 2.0) / ((pm.q - 1.0) * r.h_star);
        worst = std::max({worst, r.agreement, std::abs(r.e_star - e_closed)});
    }
    detail = fmt("worst deviation %.3g (limit 1e-8)", worst);
    return worst <= 1e-8;
}

bool c3_large_period_minimizer(std::string& detail) {
    const ModelParams pm(2, 5.0);
    const double h_star = optimal_stripe_width(pm);
    double worst_gap = 0.0;
    for (const double mult : {20.0, 50.0, 100.0}) {
        const double L = mult * h_star;
        const StripeMinimum m = minimize_f0_stripes(L, pm);
        if (std::abs(m.h - h_star) > 4.0 * h_star * h_star / L) {
            detail = fmt("half-period drift %.3g exceeds 4 h*^2 / L = %.3g",
                         std::abs(m.h - h_star), 4.0 * h_star * h_star / L);
            return false;
        }
        for (int n = 1; n <= 50; ++n) {
            const double rival = f0(make_stripes(L / (2.0 * n), L), pm, 1e-10).total;
            worst_gap = std::max(worst_gap, m.energy - rival);
        }
    }
    detail = fmt("worst margin over rivals %.3g (limit 1e-9)", worst_gap);
    return worst_gap <= 1e-9;
}

bool c4_chessboard(std::string& detail) {
    const SuiteResult r = run_suite("chessboard", 500, 4);
    detail = suite_detail(r);
    return r.passed();
}

bool c5_reflection_positivity(std::string& detail) {
    const SuiteResult r = run_suite("rp", 200, 5);
    detail = suite_detail(r);
    return r.passed();
}

bool c6_laplace(std::string& detail) {
    const SuiteResult r = run_suite("laplace", 50, 6);
    detail = suite_detail(r);
    return r.passed();
}

bool c7_grid_nonneg(std::string& detail) {
    const SuiteResult r = run_suite("nonneg", 100, 7);
    detail = suite_detail(r);
    return r.passed();
}

bool c8_splitting_slicing_eta(std::string& detail) {
    const SuiteResult split = run_suite("splitting", 100, 7);
    const SuiteResult slice = run_suite("slicing", 100, 7);
    const SuiteResult eta = run_suite("eta", 500, 8);
    detail = "splitting " + suite_detail(split) + "; slicing " + suite_detail(slice) +
             "; eta " + suite_detail(eta);
    return split.passed() && slice.passed() && eta.passed();
}

bool c9_scaling_slope(std::string& detail) {
    const ModelParams pm =
        ModelParams(2, 5.0).with_L(10.0 * optimal_stripe_width(ModelParams(2, 5.0)));
    const std::vector<SweepRecord> recs =
        tau_sweep(log_spaced_grid(1e-1, 1e-3, 8), pm, 1e-8);
    const double slope = fitted_scaling_slope(recs);
    detail = fmt("fitted slope %.5f vs 1.5 (band 5%%)", slope);
    return std::abs(slope - 1.5) <= 0.075;
}

bool c10_floor_monotone_limit(std::string& detail) {
    const ModelParams pm(2, 5.0);
    SplitMix64 rng(10);
    double worst = 0.0; // most negative monotonicity increment
    for (int i = 0; i < 100; ++i) {
        const PeriodicSet1D set = random_set(rng, 2.0 + 8.0 * rng.uniform01());
        double prev = g1d(set, pm.with_tau(0.5), 1e-10);
        for (const double tau : {0.1, 0.01, 0.0}) {
            const double cur = g1d(set, pm.with_tau(tau), 1e-10);
            worst = std::min(worst, cur - prev);
            prev = cur;
        }
    }
    if (worst < -1e-9) {
        detail = fmt("monotonicity violated by %.3g (tol 1e-9)", -worst);
        return false;
    }
    const ModelParams pm_sweep = pm.with_L(10.0 * optimal_stripe_width(pm));
    const std::vector<SweepRecord> recs =
        tau_sweep(log_spaced_grid(1e-1, 1e-3, 4), pm_sweep, 1e-8);
    const double tail_sym = recs.back().symdiff_to_limit;
    detail = fmt("worst increment %.3g; final sym-diff %.3g (limit 1e-3)", worst, tail_sym);
    return tail_sym <= 1e-3;
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    bool (*fn)(std::string&);
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "stripe energies match the closed form (rel 1e-8)", 1.0, c1_stripe_closed_form},
        {2, "optimal width search equals stationarity (1e-8)", 1.0, c2_hstar_agreement},
        {3, "large-period minimizers near h*, beat all N<=50", 5.0, c3_large_period_minimizer},
        {4, "sharp energy >= boundary-scoring bound (500 sets)", 30.0, c4_chessboard},
        {5, "reflection-positivity margins >= -1e-9 (200 pairs)", 5.0, c5_reflection_positivity},
        {6, "exponential-rate resynthesis of f0 <= 1e-5 (50 sets)", 60.0, c6_laplace},
        {7, "grid energy >= -certified error at J_c (100 grids)", 120.0, c7_grid_nonneg},
        {8, "splitting/slicing margins + overlap caps", 120.0, c8_splitting_slicing_eta},
        {9, "stripe-minimum scaling slope = 1.5 +- 5%", 60.0, c9_scaling_slope},
        {10, "kernel-floor monotonicity and limit recovery", 120.0, c10_floor_monotone_limit},
    };

    bool all_ok = true;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
            ok = false;
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= c.budget_s;
        all_ok = all_ok && ok && in_time;
        std::printf("%s  criterion %2d: %s  [%.2fs/%.0fs]%s%s%s\n",
                    (ok && in_time) ? "PASS" : "FAIL", c.id, c.name, secs, c.budget_s,
                    in_time ? "" : "  OVER BUDGET", detail.empty() ? "" : "  -- ",
                    detail.c_str());
    }
    return all_ok ? 0 : 1;
}
