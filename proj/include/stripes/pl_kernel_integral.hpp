#pragma once

#include "stripes/params.hpp"
#include "stripes/periodic_set.hpp"

namespace stripes {

// A definite integral together with a rigorous bound on the truncation and
// quadrature error committed while computing it.
struct BoundedIntegral {
    double value = 0;
    double err = 0;
};

// Exact integral of z^{-q} (m z + c) over [a, b], 0 < a <= b, q > 3.
double power_piece_integral(double a, double b, double m, double c, double q);

// Half-line moment against the tau = 0 marginal power law:
//   integral over z in [support_floor, inf) of
//       C_q z^{-q} * (slope_at_infinity * z - profile(z)) dz
// where profile is an L-periodic piecewise-linear function.  The bracket
// slope_at_infinity * z - profile(z) must vanish on [0, support_floor];
// support_floor must be one of the profile's breakpoints (or 0).
//
// The integral is exact piece-by-piece out to a cutoff Z chosen so that the
// analytic remainder bound
//   C_q * (L/2) * osc(profile) * Z^{-q}
// (from summation by parts of the mean-free part, plus the closed-form tail
// of the mean) is below tol; `err` reports the bound actually achieved.
BoundedIntegral power_kernel_bracket_integral(const PiecewiseLinearProfile& profile,
                                              double slope_at_infinity, double support_floor,
                                              const ModelParams& pm, double tol = 1e-12);

// Finite-range correction for tau > 0: the deficit kernel
//   D(z) = C_q z^{-q} - marginal(z)  (>= 0, and <= tau^{p/beta} C_{2p} z^{-(2p-d+1)})
// integrated against the same bracket as above:
//   integral over [support_floor, inf) of D(z) (slope * z - profile(z)) dz.
// Adaptive quadrature on [support_floor, Z] with Z fixed from the analytic
// tail bound; requires pm.tau > 0.
BoundedIntegral marginal_deficit_bracket_integral(const PiecewiseLinearProfile& profile,
                                                  double slope_at_infinity, double support_floor,
                                                  const ModelParams& pm, double tol = 1e-10);

} // namespace stripes
