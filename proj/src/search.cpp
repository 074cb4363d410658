#include "stripes/search.hpp"

#include "stripes/energy1d.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace stripes {

namespace {

constexpr double kInvPhi = 0.6180339887498948482; // (sqrt(5) - 1) / 2

// Golden-section search for the minimum of fn on [a, b], assuming fn is
// unimodal there; shrinks the bracket to the requested width and returns
// (lo, hi) of the final bracket.
template <typename Fn>
std::pair<double, double> golden_section(Fn&& fn, double a, double b, double width) {
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = fn(x1);
    double f2 = fn(x2);
    while (b - a > width) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = fn(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = fn(x2);
        }
    }
    return {a, b};
}

// Vertex of the parabola through (m - s, fl), (m, fm), (m + s, fr); falls
// back to m when the three points fail to bend upward.
template <typename Fn>
double parabolic_refine(Fn&& fn, double m, double s) {
    const double fl = fn(m - s);
    const double fm = fn(m);
    const double fr = fn(m + s);
    const double curvature = fl - 2.0 * fm + fr;
    if (!(curvature > 0.0)) return m;
    return m + 0.5 * s * (fl - fr) / curvature;
}

void append_number(std::string& out, double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

} // namespace

HStarResult find_hstar(const ModelParams& params) {
    if (!(params.q > 3.0))
        throw std::domain_error("find_hstar: requires q = p - d + 1 > 3");
    const auto e_inf = [&](double h) { return stripe_energy_inf(h, params); };

    // Bracket the minimum on a geometric grid: e_inf blows up as h -> 0+ and
    // rises back toward 0- as h -> infinity, so exactly one local-min triple
    // appears.
    double bracket_lo = 0.0, bracket_hi = 0.0;
    {
        const double base = 1e-3;
        double h_prev = base, h_mid = base * 1.5;
        double f_prev = e_inf(h_prev), f_mid = e_inf(h_mid);
        bool found = false;
        for (int k = 0; k < 80; ++k) {
            const double h_next = h_mid * 1.5;
            const double f_next = e_inf(h_next);
            if (f_mid <= f_prev && f_mid <= f_next) {
                bracket_lo = h_prev;
                bracket_hi = h_next;
                found = true;
                break;
            }
            h_prev = h_mid;
            f_prev = f_mid;
            h_mid = h_next;
            f_mid = f_next;
        }
        if (!found)
            throw std::runtime_error("find_hstar: failed to bracket a minimum of e_inf");
    }

    // Golden-section down to a width where function differences still dominate
    // rounding noise, then two parabolic polishes with shrinking stencils.
    auto [lo, hi] = golden_section(e_inf, bracket_lo, bracket_hi, 1e-4);
    double h_search = 0.5 * (lo + hi);
    h_search = parabolic_refine(e_inf, h_search, 1e-4);
    h_search = parabolic_refine(e_inf, h_search, 1e-6);

    HStarResult r;
    r.h_star = optimal_stripe_width(params);
    r.e_star = stripe_energy_inf(r.h_star, params);
    r.h_search = h_search;
    r.agreement = std::abs(r.h_star - h_search);
    if (!(r.agreement <= 1e-8))
        throw std::runtime_error(
            "find_hstar: numeric minimizer and stationarity closed form disagree");
    return r;
}

StripeMinimum minimize_f0_stripes(double L, const ModelParams& params) {
    if (!(L > 0.0))
        throw std::invalid_argument("minimize_f0_stripes: period must be positive");
    if (!(params.q > 3.0))
        throw std::domain_error("minimize_f0_stripes: requires q > 3");
    const double h_star = optimal_stripe_width(params);
    const double ratio = L / (2.0 * h_star);
    const long n_dn = static_cast<long>(std::floor(ratio));

    StripeMinimum best;
    best.energy = std::numeric_limits<double>::infinity();
    for (long n : {n_dn, n_dn + 1}) {
        if (n < 1) continue;
        const double h = L / (2.0 * static_cast<double>(n));
        const double e = stripe_energy_inf(h, params);
        if (e < best.energy) { // strict: ties keep the smaller arc count
            best.n_arcs = static_cast<int>(n);
            best.h = h;
            best.energy = e;
        }
    }
    return best;
}

FreeMinimum minimize_f0_free(const PeriodicSet1D& initial, const ModelParams& params,
                             int max_sweeps, double min_gap) {
    if (initial.arc_count() < 1)
        throw std::invalid_argument("minimize_f0_free: initial set needs at least one arc");
    if (max_sweeps < 1)
        throw std::invalid_argument("minimize_f0_free: sweep budget must be positive");
    const double L = initial.period();
    if (min_gap < 0.0) min_gap = L / 1000.0;
    if (!(min_gap > 0.0) || initial.min_feature() < min_gap)
        throw std::invalid_argument(
            "minimize_f0_free: initial features must respect the feature floor");

    // Endpoint coordinates c_0 < c_1 < ... < c_{2N-1} < c_0 + L; arcs are the
    // pairs (c_{2k}, c_{2k+1}).
    std::vector<double> c;
    for (const auto& [s, t] : initial.arcs()) {
        c.push_back(s);
        c.push_back(t);
    }
    const std::size_t m = c.size();

    const auto eval = [&](const std::vector<double>& coords) {
        std::vector<std::pair<double, double>> arcs;
        arcs.reserve(coords.size() / 2);
        for (std::size_t k = 0; k + 1 < coords.size(); k += 2)
            arcs.emplace_back(coords[k], coords[k + 1]);
        return f0(PeriodicSet1D(L, arcs), params).total;
    };

    FreeMinimum out{initial, eval(c), 0, false};
    double step = L / (8.0 * static_cast<double>(initial.arc_count()));
    const double step_floor = 1e-8 * L;

    std::vector<double> trial = c;
    while (out.sweeps_used < max_sweeps) {
        ++out.sweeps_used;
        bool accepted_any = false;
        for (std::size_t i = 0; i < m; ++i) {
            const double lo = (i == 0 ? c[m - 1] - L : c[i - 1]) + min_gap;
            const double hi = (i == m - 1 ? c[0] + L : c[i + 1]) - min_gap;
            if (!(lo < hi)) continue;
            double best_value = out.energy;
            double best_coord = c[i];
            for (const double delta : {step, -step}) {
                const double x = std::clamp(c[i] + delta, lo, hi);
                if (std::abs(x - c[i]) < 1e-15 * L) continue;
                trial[i] = x;
                const double e = eval(trial);
                if (e < best_value) {
                    best_value = e;
                    best_coord = x;
                }
            }
            trial[i] = best_coord;
            if (best_coord != c[i]) {
                c[i] = best_coord;
                out.energy = best_value;
                accepted_any = true;
            }
        }
        if (!accepted_any) {
            step *= 0.5;
            if (step < step_floor) {
                out.converged = true;
                break;
            }
        }
    }

    std::vector<std::pair<double, double>> arcs;
    for (std::size_t k = 0; k + 1 < m; k += 2) arcs.emplace_back(c[k], c[k + 1]);
    out.set = PeriodicSet1D(L, arcs);
    return out;
}

std::vector<SweepRecord> tau_sweep(const std::vector<double>& taus,
                                   const ModelParams& params, double tol, int max_arcs) {
    if (taus.empty())
        throw std::invalid_argument("tau_sweep: empty grid");
    for (std::size_t i = 0; i < taus.size(); ++i) {
        if (!(taus[i] > 0.0))
            throw std::invalid_argument("tau_sweep: kernel floors must be positive");
        if (i > 0 && !(taus[i] < taus[i - 1]))
            throw std::invalid_argument("tau_sweep: grid must be strictly decreasing");
    }
    if (max_arcs < 1)
        throw std::invalid_argument("tau_sweep: max_arcs must be positive");

    const double L = params.L;
    const double h_star = optimal_stripe_width(params);
    const StripeMinimum limit = minimize_f0_stripes(L, params);
    const PeriodicSet1D limit_set = make_stripes(limit.h, L);
    const ModelParams unit_floor = params.with_tau(1.0);

    std::vector<SweepRecord> records;
    records.reserve(taus.size());
    for (const double tau : taus) {
        const auto t0 = std::chrono::steady_clock::now();
        SweepRecord rec;
        rec.tau = tau;

        // Fixed-period family minimizer.
        {
            const ModelParams pm_tau = params.with_tau(tau);
            double best_e = std::numeric_limits<double>::infinity();
            PeriodicSet1D best_set = limit_set;
            for (int n = 1; n <= max_arcs; ++n) {
                const PeriodicSet1D s = make_stripes(L / (2.0 * n), L);
                const double e = (-2.0 * n + g1d(s, pm_tau, tol)) / L;
                if (e < best_e) {
                    best_e = e;
                    best_set = s;
                    rec.n_arcs = n;
                }
            }
            rec.symdiff_to_limit = sym_diff_measure(best_set, limit_set);
        }

        // Original-variable stripe minimum: the kernel floor is fixed at 1 and
        // tau enters as the perimeter coefficient.
        {
            const auto density = [&](double h) {
                return -tau / h + g1d(make_stripes(h), unit_floor, tol) / (2.0 * h);
            };
            const double center = h_star * std::pow(tau, -1.0 / params.beta);
            double lo = center / 6.0, hi = center * 6.0;
            const double fc = density(center);
            for (int grow = 0; grow < 3 && !(density(lo) > fc && density(hi) > fc); ++grow) {
                lo *= 0.25;
                hi *= 4.0;
            }
            const auto [a, b] = golden_section(density, lo, hi, 1e-6 * center);
            rec.h = 0.5 * (a + b);
            const BoundedIntegral gb = g1d_bounded(make_stripes(rec.h), unit_floor, tol);
            rec.energy = -tau / rec.h + gb.value / (2.0 * rec.h);
            rec.err_estimate = gb.err / (2.0 * rec.h);
        }

        rec.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        records.push_back(rec);
    }
    return records;
}

std::vector<double> log_spaced_grid(double from, double to, int per_decade) {
    if (!(from > to && to > 0.0))
        throw std::invalid_argument("log_spaced_grid: need from > to > 0");
    if (per_decade < 1)
        throw std::invalid_argument("log_spaced_grid: need at least one point per decade");
    const double decades = std::log10(from / to);
    const int steps = std::max(1, static_cast<int>(std::lround(decades * per_decade)));
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i)
        grid.push_back(from * std::pow(to / from, static_cast<double>(i) / steps));
    grid.back() = to;
    return grid;
}

double fitted_scaling_slope(const std::vector<SweepRecord>& records) {
    if (records.size() < 2)
        throw std::invalid_argument("fitted_scaling_slope: need at least two records");
    double sx = 0.0, sy = 0.0;
    for (const auto& r : records) {
        if (!(r.energy < 0.0))
            throw std::runtime_error("fitted_scaling_slope: energies must be negative");
        sx += std::log(r.tau);
        sy += std::log(-r.energy);
    }
    const double mx = sx / static_cast<double>(records.size());
    const double my = sy / static_cast<double>(records.size());
    double cov = 0.0, var = 0.0;
    for (const auto& r : records) {
        const double dx = std::log(r.tau) - mx;
        cov += dx * (std::log(-r.energy) - my);
        var += dx * dx;
    }
    if (!(var > 0.0))
        throw std::runtime_error("fitted_scaling_slope: grid has no spread");
    return cov / var;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
    out << "tau,N,h,energy,err_estimate,symdiff_to_limit,wall_ms\n";
    std::string line;
    for (const auto& r : records) {
        line.clear();
        append_number(line, r.tau);
        line += ',';
        line += std::to_string(r.n_arcs);
        line += ',';
        append_number(line, r.h);
        line += ',';
        append_number(line, r.energy);
        line += ',';
        append_number(line, r.err_estimate);
        line += ',';
        append_number(line, r.symdiff_to_limit);
        line += ',';
        append_number(line, r.wall_ms);
        line += '\n';
        out << line;
    }
}

double aligned_sym_diff(const PeriodicSet1D& a, const PeriodicSet1D& b) {
    double best = sym_diff_measure(a, b);
    for (const auto& [sa, ea] : a.arcs()) {
        (void)ea;
        for (const auto& [sb, eb] : b.arcs()) {
            (void)eb;
            best = std::min(best, sym_diff_measure(a.translated(sb - sa), b));
        }
    }
    return best;
}

} // namespace stripes
