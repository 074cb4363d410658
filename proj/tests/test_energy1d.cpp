#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "stripes/energy1d.hpp"
#include "stripes/kernels.hpp"
#include "stripes/params.hpp"
#include "stripes/periodic_set.hpp"

using namespace stripes;

namespace {

ModelParams pm25() { return ModelParams(2, 5.0); }
ModelParams pm37() { return ModelParams(3, 7.0); }

// Frozen reference constants, computed independently (series/quadrature
// oracles at 30+ digits; see kernel tests for the primary anchors).
constexpr double kCbar25 = 0.731081807488100638432;   // = 2*pi^2/27
constexpr double kCbar37 = 0.377637313616307892720;
constexpr double kHstar25 = 1.48096097938612208234;   // = sqrt(2*pi^2/9)
constexpr double kEstar25 = -0.450158158078553034778; // = -2/(3*h*)

double rel_diff(double a, double b) {
    return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-300});
}

// Independent overlap of [0,1) with its translate by z inside period 3.
double overlap_unit_in_three(double z) {
    double s = std::fmod(z, 3.0);
    if (s < 0.0) s += 3.0;
    double len1 = std::max(0.0, std::min(1.0, s + 1.0) - std::max(0.0, s));
    double len2 = std::max(0.0, std::min(1.0, s - 2.0));
    return len1 + len2;
}

double omega_unit_in_three(double z) { return 2.0 * (1.0 - overlap_unit_in_three(z)); }

// Composite Simpson on [a,b] with n (even) subintervals.
template <typename F>
double simpson(F f, double a, double b, int n) {
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace

TEST_CASE("empty and full sets carry zero energy") {
    PeriodicSet1D empty = PeriodicSet1D::empty(3.0);
    PeriodicSet1D full = PeriodicSet1D::full(3.0);
    CHECK(g1d(empty, pm25()) == 0.0);
    CHECK(g1d(full, pm25()) == 0.0);
    EnergyReport r = f0(empty, pm25());
    CHECK(r.total == 0.0);
    CHECK(r.perimeter_term == 0.0);
    CHECK(r.nonlocal_term == 0.0);
    CHECK(r.per_direction.size() == 1);
    CHECK(chessboard_rhs(empty, pm25()) == 0.0);
    CHECK(chessboard_rhs(full, pm25()) == 0.0);
}

TEST_CASE("stripe nonlocal energy matches the closed form") {
    // g1d(stripes(h), period 2h) = Cbar_q * (2h) * h^{-(q-1)}
    for (double h : {0.5, 1.0, 2.0}) {
        PeriodicSet1D stripe = make_stripes(h, 2.0 * h);
        double expected = kCbar25 * 2.0 * h * std::pow(h, -3.0);
        CHECK(rel_diff(g1d(stripe, pm25(), 1e-12), expected) < 1e-10);
    }
    PeriodicSet1D stripe = make_stripes(1.0, 2.0);
    double expected37 = kCbar37 * 2.0;
    CHECK(rel_diff(g1d(stripe, pm37(), 1e-12), expected37) < 1e-10);
}

TEST_CASE("stripe energy density closed form and f0 agree") {
    // e_inf(h) = -1/h + Cbar_q h^{-(q-1)}; frozen values for d=2, p=5.
    CHECK(rel_diff(stripe_energy_inf(1.0, pm25()), -0.268918192511899361568) < 1e-14);
    CHECK(rel_diff(stripe_energy_inf(2.0, pm25()), -0.408614774063987420196) < 1e-14);
    CHECK(rel_diff(stripe_energy_inf(0.5, pm25()), 3.848654459904805107456) < 1e-14);
    CHECK(rel_diff(stripe_energy_inf(1.0, pm37()), -0.622362686383692107280) < 1e-14);

    for (double h : {0.5, 1.0, 1.5, 2.0}) {
        EnergyReport r = f0(make_stripes(h, 2.0 * h), pm25(), 1e-12);
        CHECK(rel_diff(r.total, stripe_energy_inf(h, pm25())) < 1e-9);
        CHECK(r.err_estimate < 1e-10);
    }
    // Multi-stripe period gives the same density.
    EnergyReport multi = f0(make_stripes(1.2, 7.2), pm25(), 1e-12);
    CHECK(rel_diff(multi.total, stripe_energy_inf(1.2, pm25())) < 1e-9);
}

TEST_CASE("optimal stripe width and its energy") {
    double h = optimal_stripe_width(pm25());
    CHECK(rel_diff(h, kHstar25) < 1e-12);
    CHECK(rel_diff(stripe_energy_inf(h, pm25()), kEstar25) < 1e-12);
    // Interior minimum: both neighbors are worse and the derivative vanishes.
    CHECK(stripe_energy_inf(h - 0.05, pm25()) > stripe_energy_inf(h, pm25()));
    CHECK(stripe_energy_inf(h + 0.05, pm25()) > stripe_energy_inf(h, pm25()));
    double d1 = (stripe_energy_inf(h + 1e-6, pm25()) -
                 stripe_energy_inf(h - 1e-6, pm25())) / 2e-6;
    CHECK(std::fabs(d1) < 1e-8);
    // d=3, p=7: closed form versus frozen series constant.
    double h37 = optimal_stripe_width(pm37());
    CHECK(rel_diff(h37, std::pow(4.0 * kCbar37, 1.0 / 3.0)) < 1e-12);
}

TEST_CASE("sharp-interface energy matches a brute-force quadrature oracle") {
    // E = [0,1) in period 3, d=2, p=5, tau=0.  The integrand bracket
    // 2|z| - omega(z) vanishes on [0,1]; integrate z in [1, 6000] by
    // kink-aligned Simpson and add the mean-profile power tail.
    ModelParams pm = pm25();
    const double cq = marginal_kernel_constant(pm);
    auto integrand = [&](double z) {
        return cq * std::pow(z, -4.0) * (2.0 * z - omega_unit_in_three(z));
    };
    double acc = 0.0;
    const double zmax = 6000.0;
    for (double a = 1.0; a < zmax - 0.5; a += 1.0) acc += simpson(integrand, a, a + 1.0, 64);
    // omega has period-mean 4/3; tail of C_q z^{-4} (2z - 4/3).
    acc += cq * (std::pow(zmax, -2.0) - (4.0 / 9.0) * std::pow(zmax, -3.0));
    double oracle = 2.0 * acc;

    PeriodicSet1D set(3.0, {{0.0, 1.0}});
    double exact = g1d(set, pm, 1e-10);
    CHECK(rel_diff(exact, oracle) < 1e-4);
    CHECK(exact >= 0.0);

    EnergyReport r = f0(set, pm, 1e-10);
    CHECK(rel_diff(r.total, (-2.0 + exact) / 3.0) < 1e-12);
    CHECK(std::fabs(r.total - (r.perimeter_term + r.per_direction[0] + r.cross_term)) <=
          r.err_estimate + 1e-12);
}

TEST_CASE("positive-tau energy matches a marginal-kernel quadrature oracle") {
    ModelParams pm = pm25().with_tau(0.3);
    auto integrand = [&](double z) {
        return marginal_kernel(z, pm, 1e-12) * (2.0 * z - omega_unit_in_three(z));
    };
    double acc = 0.0;
    const double zmax = 300.0;
    for (double a = 1.0; a < zmax - 0.5; a += 1.0) acc += simpson(integrand, a, a + 1.0, 64);
    const double cq = marginal_kernel_constant(pm);
    acc += cq * (std::pow(zmax, -2.0) - (4.0 / 9.0) * std::pow(zmax, -3.0));
    double oracle = 2.0 * acc;

    PeriodicSet1D set(3.0, {{0.0, 1.0}});
    double value = g1d(set, pm, 1e-8);
    CHECK(rel_diff(value, oracle) < 1e-4);
}

TEST_CASE("kernel smoothing decreases the energy monotonically") {
    PeriodicSet1D set(3.0, {{0.0, 1.0}});
    ModelParams pm = pm25();
    double sharp = g1d(set, pm, 1e-10);
    double prev = -1.0;
    for (double tau : {0.5, 0.2, 0.05, 0.01}) {
        double value = g1d(set, pm.with_tau(tau), 1e-10);
        CHECK(value >= prev - 1e-9);
        CHECK(value <= sharp + 1e-9);
        prev = value;
    }
    // Convergence to the sharp kernel as tau -> 0.
    CHECK(std::fabs(g1d(set, pm.with_tau(1e-3), 1e-10) - sharp) < 1e-5);
}

TEST_CASE("dilation scaling of the sharp energy") {
    // Scaling z -> s z sends g1d to s^{2-q} g1d; here q = 4, s = 2.
    PeriodicSet1D base(3.0, {{0.0, 1.0}});
    PeriodicSet1D dilated(6.0, {{0.0, 2.0}});
    double a = g1d(base, pm25(), 1e-12);
    double b = g1d(dilated, pm25(), 1e-12);
    CHECK(rel_diff(b, a / 4.0) < 1e-9);
}

TEST_CASE("boundary scoring lower bound: value, equality, and margin") {
    ModelParams pm = pm25();
    // Frozen value for E = [0,1) in period 3:
    // (1/6) (2*1*e(1) + 2*2*e(2)).
    PeriodicSet1D set(3.0, {{0.0, 1.0}});
    CHECK(rel_diff(chessboard_rhs(set, pm), -0.362049246879958067320) < 1e-14);

    // Equality on stripe patterns, including multi-stripe periods.
    for (double h : {0.8, 1.48, 2.5}) {
        PeriodicSet1D stripe = make_stripes(h, 6.0 * h);
        double lhs = f0(stripe, pm, 1e-12).total;
        double rhs = chessboard_rhs(stripe, pm);
        CHECK(std::fabs(lhs - rhs) < 1e-9);
    }

    // Strict inequality (margin >= 0) on assorted non-stripe sets.
    std::vector<PeriodicSet1D> sets;
    sets.emplace_back(3.0, std::vector<std::pair<double, double>>{{0.0, 1.0}});
    sets.emplace_back(4.0, std::vector<std::pair<double, double>>{{0.0, 1.0}, {1.7, 2.2}});
    sets.emplace_back(5.0, std::vector<std::pair<double, double>>{
                               {0.0, 0.3}, {1.0, 1.9}, {2.5, 3.1}});
    sets.emplace_back(6.0, std::vector<std::pair<double, double>>{{0.2, 1.5}, {2.9, 5.8}});
    for (const PeriodicSet1D& s : sets) {
        double margin = f0(s, pm, 1e-10).total - chessboard_rhs(s, pm);
        CHECK(margin >= -1e-9);
    }
}

TEST_CASE("energy of sets with sharp features stays finite and nonnegative") {
    PeriodicSet1D thin(5.0, {{0.0, 0.01}});
    double value = g1d(thin, pm25(), 1e-8);
    CHECK(std::isfinite(value));
    CHECK(value >= 0.0);
    // A 1/L prefactor sends the density of a fixed set to zero.
    PeriodicSet1D sparse(100.0, {{0.0, 1.0}});
    EnergyReport r = f0(sparse, pm25(), 1e-8);
    CHECK(r.total < 0.0);
    CHECK(r.total > -0.05);
}

TEST_CASE("width/gap comparison ratio is a positive diagnostic") {
    ModelParams pm = pm25().with_tau(0.3);
    PeriodicSet1D set(3.0, {{0.0, 1.0}});
    double ratio = width_gap_comparison_ratio(set, pm);
    CHECK(ratio > 0.0);
    CHECK(std::isfinite(ratio));
    CHECK_THROWS_AS(width_gap_comparison_ratio(set, pm25()), std::invalid_argument);
}

TEST_CASE("invalid arguments are rejected") {
    PeriodicSet1D set(3.0, {{0.0, 1.0}});
    CHECK_THROWS_AS(g1d(set, pm25(), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(stripe_energy_inf(0.0, pm25()), std::invalid_argument);
    CHECK_THROWS_AS(stripe_energy_inf(-1.0, pm25()), std::invalid_argument);
}
