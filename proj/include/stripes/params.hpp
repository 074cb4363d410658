#pragma once

#include <stdexcept>

namespace stripes {

// Parameter pack for the anisotropic power-law model.  The kernel is
//   K_tau(v) = 1 / (|v|^p + tau^{p/beta}),  beta = p - dim - 1,
// and its one-variable marginal decays like |z|^{-q} with q = p - dim + 1.
// Validity requires dim >= 2 and p > 2*dim (so q > 3 and beta > 1).
struct ModelParams {
    int    dim  = 2;    // ambient dimension d
    double p    = 5.0;  // kernel decay exponent
    double tau  = 0.0;  // kernel floor parameter (>= 0; 0 means pure power law)
    double J    = 0.0;  // perimeter coupling, used by the original-variable energy
    double L    = 1.0;  // period of the torus cell
    double q    = 4.0;  // derived: p - dim + 1
    double beta = 2.0;  // derived: p - dim - 1

    ModelParams() = default;
    ModelParams(int dim_, double p_, double tau_ = 0.0, double J_ = 0.0, double L_ = 1.0);

    // Copy with one field replaced; derived exponents stay consistent.
    ModelParams with_tau(double t) const;
    ModelParams with_J(double j) const;
    ModelParams with_L(double l) const;

    // tau^{e}, evaluated in log space so tiny tau underflows cleanly to zero
    // instead of producing garbage via repeated multiplication.
    double tau_power(double e) const;

    // The floor term tau^{p/beta} appearing in the kernel denominator.
    double kernel_floor() const { return tau_power(p / beta); }
};

} // namespace stripes
