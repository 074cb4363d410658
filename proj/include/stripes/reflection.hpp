#pragma once

#include <utility>
#include <vector>

#include "stripes/params.hpp"
#include "stripes/periodic_set.hpp"

namespace stripes {

using Interval = std::pair<double, double>;

// A two-sided configuration on the segment [0, length] split at x = split:
// `left` is a finite union of intervals in [0, split], `right` one in
// [split, length], and `alpha` the exponential interaction rate.
struct ReflectionPair {
    double split = 0.0;
    double length = 0.0;
    double alpha = 1.0;
    std::vector<Interval> left;
    std::vector<Interval> right;

    ReflectionPair(double split_, double length_, double alpha_,
                   std::vector<Interval> left_, std::vector<Interval> right_);
};

enum class ReflectSide { left, right };

// J(pair) = -(double integral over [0,length]^2) |chi(x)-chi(y)| e^{-alpha|x-y|},
// where chi is the indicator of left UNION right.  Exact closed form via
// rectangle integrals; always <= 0.
double exp_interaction(const ReflectionPair& pair);

// Complement-reflection across x = split.  For side == left the result is
//   { x in (split, 2*split] : 2*split - x NOT in left },
// the mirror image of the complement; side == right maps `right` to the
// matching union in [2*split - length, split].  Applying the operator twice
// restores the original union.
std::vector<Interval> reflect(const ReflectionPair& pair, ReflectSide side);

// Reflection-positivity margin
//   J(E1,E2) - (1/2) [ J(E1, theta E1) + J(theta E2, E2) ]  >=  0,
// evaluated from three exact interactions.  Nonnegative up to roundoff.
double rp_margin(const ReflectionPair& pair);

// The same margin via the algebraic square completion (a-D)^2 + (b-C)^2,
// where a,b (resp. C,D) are the exponentially weighted contents of the set
// and its complement on the left (resp. right) window.  Exact; used as a
// cross-check of rp_margin.
double rp_margin_closed(const ReflectionPair& pair);

// Energy density of the infinite stripe pattern of half-period h under the
// exponential kernel e^{-alpha|x-y|}:
//   e_alpha(h) = -(1/2h) * (integral over [0,2h] x R of |chi-chi| e^{-alpha|x-y|}).
// Summed as a geometric series over periodic images, truncated once the
// remainder drops below tol.  Equals -(2/(alpha^2 h)) tanh(alpha h / 2).
double stripe_energy_alpha(double h, double alpha, double tol = 1e-12);

// W_alpha(E) = integral over [0,L] x R of |chi_E(x)-chi_E(y)| e^{-alpha|x-y|}
//            = integral over R of omega(z) e^{-alpha|z|} dz  >=  0,
// in exact closed form by summing rectangle integrals over periodic images.
double periodic_exp_content(const PeriodicSet1D& set, double alpha);

// Margin of the exponential-kernel boundary-scoring bound:
//   lhs - (1/2) sum over x in dE of [h(x) e_alpha(h(x)) + g(x) e_alpha(g(x))],
// where lhs = -W_alpha(E) is reached as the limit of free-boundary
// interactions on k periods; k is doubled until increments agree to 1e-8.
double chessboard_exp_margin(const PeriodicSet1D& set, double alpha);

// Same margin with lhs taken from the exact periodic-image closed form.
double chessboard_exp_margin_exact(const PeriodicSet1D& set, double alpha);

// Laplace-transform consistency of the sharp-interface energy: rebuilds
// f0(set) as an integral over exponential rates,
//   integral over alpha of (1/L) [ rhohat(alpha) per - (C_q alpha^{q-1}/Gamma(q)) W_alpha(E) ],
// with rhohat(alpha) = -e^{-alpha} + 2 C_q alpha^{q-3}/Gamma(q), and returns
// the absolute difference from f0 computed directly.  Requires tau = 0.
// Throws QuadratureError if the alpha-integral cannot reach tol.
double laplace_identity_residual(const PeriodicSet1D& set,
                                 const ModelParams& params, double tol = 1e-6);

}  // namespace stripes
