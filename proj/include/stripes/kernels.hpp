#pragma once

#include <span>

#include "stripes/params.hpp"
#include "stripes/quadrature.hpp"

namespace stripes {

// Surface measure of the unit sphere S^{d-1} in R^d.
double sphere_area(int dim);

// First absolute moment of the unit sphere: integral of |w_1| over S^{d-1}.
double sphere_first_moment(int dim);

// Pointwise kernel K_tau(v) = 1/(|v|^p + tau^{p/beta}).  v must have pm.dim
// entries.  Returns +infinity at v = 0 when tau = 0.
double kernel_value(std::span<const double> v, const ModelParams& pm);

// One-variable marginal of the kernel: integral of K_tau(z, y) over
// y in R^{dim-1}.  For tau = 0 this is the exact power law C_q |z|^{-q};
// for tau > 0 it is computed by radial reduction and adaptive quadrature
// with relative error <= tol (throws QuadratureError past the node budget).
double marginal_kernel(double z, const ModelParams& pm, double tol = 1e-10);

// The marginal decay constant C_q = pi^{(dim-1)/2} Gamma(q/2)/Gamma(p/2),
// i.e. the tau = 0 marginal is C_q |z|^{-q}.
double marginal_kernel_constant(const ModelParams& pm);

// The coefficient of h^{-(q-1)} in the per-length energy of ideal stripes
// of half-period h:
//   Cbar_q = 4 C_q (1 - 2^{-(q-3)}) / ((q-2)(q-1)) * sum_{k>=1} k^{-(q-2)}.
// Requires q > 3 (throws std::domain_error otherwise).  The series is summed
// with an Euler-Maclaurin tail whose analytic remainder is below 1e-13
// relative, and is cross-checked against std::riemann_zeta in the tests.
double stripe_series_constant(const ModelParams& pm);

// Critical coupling J_c = integral of |v_1|/(1+|v|^p) over R^dim, via the
// radial-angular factorization.  The Beta-integral closed form is returned;
// a radial quadrature recomputation must agree to relative tol or a
// QuadratureError is thrown.
double critical_coupling(const ModelParams& pm, double tol = 1e-9);

// Tail integral of the radial kernel profile: integral over r in [A, inf)
// of r^s / (r^p + floor_term) dr, for s < p - 1, A > 0.  Used by the
// far-field corrections of the lattice energies.
double radial_kernel_tail(double p, double floor_term, double s, double A, double tol = 1e-10);

// Total mass of the smoothed kernel over R^dim (requires tau > 0):
//   integral of K_tau = sphere_area(dim) * T^{dim/p - 1} * (pi/p) / sin(pi dim / p),
// with T = tau^{p/beta}.  The sharp kernel (tau = 0) has infinite mass.
double kernel_total_mass(const ModelParams& pm);

// First absolute moment along one axis (requires tau > 0):
//   integral of K_tau(v) |v_1| over R^dim = critical_coupling / tau.
double kernel_first_moment(const ModelParams& pm, double tol = 1e-9);

} // namespace stripes
