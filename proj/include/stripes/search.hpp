#pragma once

#include "stripes/params.hpp"
#include "stripes/periodic_set.hpp"

#include <iosfwd>
#include <vector>

namespace stripes {

// Minimizer of the closed-form stripe energy density e_inf(h).
struct HStarResult {
    double h_star = 0.0;    // stationarity closed form ((q-1) Cbar_q)^{1/(q-2)}
    double e_star = 0.0;    // e_inf(h_star) = -(q-2) / ((q-1) h_star)
    double h_search = 0.0;  // independent derivative-free (golden-section) minimizer
    double agreement = 0.0; // |h_star - h_search|
};

// Locates the minimizer of e_inf twice -- bracketing plus golden-section
// search, and the stationarity closed form -- and requires the two to agree
// to 1e-8 (absolute, h_star is O(1)); throws std::runtime_error otherwise.
// Requires q > 3 (else e_inf has no interior minimum); throws
// std::domain_error.
HStarResult find_hstar(const ModelParams& params);

// Best stripe pattern commensurate with the period L.
struct StripeMinimum {
    int n_arcs = 0;       // arcs per period
    double h = 0.0;       // half-period L / (2 n_arcs)
    double energy = 0.0;  // e_inf(h), the f0 density of that pattern
};

// Minimizes N |-> e_inf(L / (2N)) over positive integers.  Only the two
// integers around L / (2 h_star) can win (the profile is unimodal in N);
// both are evaluated and ties resolve to the smaller N.
StripeMinimum minimize_f0_stripes(double L, const ModelParams& params);

// Result of the free-boundary descent.
struct FreeMinimum {
    PeriodicSet1D set;      // best configuration found
    double energy = 0.0;    // f0(set).total
    int sweeps_used = 0;    // full coordinate sweeps performed
    bool converged = false; // step size shrank below threshold within budget
};

// Cyclic coordinate descent on the 2N arc endpoints of `initial`, minimizing
// the sharp-interface density f0 at fixed arc count.  Each proposal moves one
// endpoint by +-step, clamped so every arc and gap keeps length at least
// min_gap (default: period / 1000, a tenth of the random-corpus feature
// floor); the step halves after any sweep with no accepted move and the
// search stops once it drops below 1e-8 * period.  Accepted moves strictly
// decrease the energy, so the reported energy never exceeds f0(initial).
// If the sweep budget runs out first the best-so-far is returned with
// converged = false.
FreeMinimum minimize_f0_free(const PeriodicSet1D& initial, const ModelParams& params,
                             int max_sweeps = 400, double min_gap = -1.0);

// One row of a kernel-floor sweep.  Two minimizations are reported:
//  - h, energy, err_estimate: the original-variable stripe problem
//      E(h) = -tau/h + g1d(stripes(h), kernel floor 1) / (2h)
//    minimized over the half-period h by golden-section search; err_estimate
//    is the certified quadrature bound on E at the reported h.
//  - n_arcs, symdiff_to_limit: the fixed-period family minimizer of
//      (1/L) (-2N + g1d(stripes(L/2N, L), tau))
//    over N, and its symmetric-difference distance to the tau = 0 minimizer
//    of minimize_f0_stripes(L).
struct SweepRecord {
    double tau = 0.0;
    int n_arcs = 0;
    double h = 0.0;
    double energy = 0.0;
    double err_estimate = 0.0;
    double symdiff_to_limit = 0.0;
    double wall_ms = 0.0;
};

// Runs the two stripe minimizations above for each tau.  `taus` must be
// positive and strictly decreasing (throws std::invalid_argument otherwise);
// params carries dim, p and the fixed period L for the family minimization.
// max_arcs caps the family search.
std::vector<SweepRecord> tau_sweep(const std::vector<double>& taus,
                                   const ModelParams& params, double tol = 1e-8,
                                   int max_arcs = 64);

// Log-spaced grid from `from` down to `to` (both positive, from > to),
// `per_decade` points per factor of 10, endpoints included.
std::vector<double> log_spaced_grid(double from, double to, int per_decade);

// Least-squares slope of log(-energy) against log(tau) across the records;
// all energies must be negative.  For the original-variable stripe minimum
// this approaches (p - d) / (p - d - 1) as tau -> 0.
double fitted_scaling_slope(const std::vector<SweepRecord>& records);

// CSV with header tau,N,h,energy,err_estimate,symdiff_to_limit,wall_ms and
// one row per record; locale-independent formatting, 17 significant digits.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records);

// Minimum of sym_diff_measure(a translated by t, b) over the translations t
// aligning some arc start of a with some arc start of b (plus t = 0).
double aligned_sym_diff(const PeriodicSet1D& a, const PeriodicSet1D& b);

} // namespace stripes
