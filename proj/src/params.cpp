#include "stripes/params.hpp"

#include <cmath>
#include <string>

namespace stripes {

ModelParams::ModelParams(int dim_, double p_, double tau_, double J_, double L_)
    : dim(dim_), p(p_), tau(tau_), J(J_), L(L_) {
    if (dim < 2)
        throw std::invalid_argument("ModelParams: dim must be >= 2, got " + std::to_string(dim));
    if (!(p > 2.0 * dim))
        throw std::invalid_argument("ModelParams: need p > 2*dim, got p = " + std::to_string(p) +
                                    " with dim = " + std::to_string(dim));
    if (!(tau >= 0.0))
        throw std::invalid_argument("ModelParams: tau must be >= 0");
    if (!(L > 0.0))
        throw std::invalid_argument("ModelParams: L must be > 0");
    q = p - dim + 1;
    beta = p - dim - 1;
}

ModelParams ModelParams::with_tau(double t) const {
    ModelParams r = *this;
    if (!(t >= 0.0)) throw std::invalid_argument("with_tau: tau must be >= 0");
    r.tau = t;
    return r;
}

ModelParams ModelParams::with_J(double j) const {
    ModelParams r = *this;
    r.J = j;
    return r;
}

ModelParams ModelParams::with_L(double l) const {
    ModelParams r = *this;
    if (!(l > 0.0)) throw std::invalid_argument("with_L: L must be > 0");
    r.L = l;
    return r;
}

double ModelParams::tau_power(double e) const {
    if (tau == 0.0) return 0.0;
    return std::exp(e * std::log(tau));
}

} // namespace stripes
