#include "stripes/kernels.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace stripes {
namespace {

constexpr double kPi = std::numbers::pi;

double pow_int_guarded(double base_log, double expo) {
    // exp(expo * base_log) with clean underflow to zero.
    const double t = expo * base_log;
    if (t < -745.0) return 0.0;
    return std::exp(t);
}

} // namespace

double sphere_area(int dim) {
    return 2.0 * std::pow(kPi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

double sphere_first_moment(int dim) {
    return 2.0 * std::pow(kPi, 0.5 * (dim - 1)) / std::tgamma(0.5 * (dim + 1));
}

double kernel_value(std::span<const double> v, const ModelParams& pm) {
    if (static_cast<int>(v.size()) != pm.dim)
        throw std::invalid_argument("kernel_value: vector has wrong dimension");
    double r2 = 0.0;
    for (double c : v) r2 += c * c;
    const double denom = std::pow(r2, 0.5 * pm.p) + pm.kernel_floor();
    if (denom == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / denom;
}

double marginal_kernel_constant(const ModelParams& pm) {
    return std::pow(kPi, 0.5 * (pm.dim - 1)) *
           std::exp(std::lgamma(0.5 * pm.q) - std::lgamma(0.5 * pm.p));
}

double marginal_kernel(double z, const ModelParams& pm, double tol) {
    z = std::abs(z);
    if (pm.tau == 0.0) {
        if (z == 0.0) return std::numeric_limits<double>::infinity();
        return marginal_kernel_constant(pm) * std::pow(z, -pm.q);
    }
    const double floor_term = pm.kernel_floor();
    const double z2 = z * z;
    const double p = pm.p;
    const int m = pm.dim - 2; // transverse radial power
    // Split at R (near field direct, far field via u = 1/r, both smooth).
    const double R = std::max({1.0, 2.0 * z, 2.0 * pm.tau_power(1.0 / pm.beta)});
    QuadratureOptions opts;
    opts.rel_tol = 0.5 * tol;
    opts.abs_tol = 0.0;
    auto near = integrate_adaptive(
        [&](double r) { return std::pow(r, m) / (std::pow(z2 + r * r, 0.5 * p) + floor_term); },
        0.0, R, opts);
    auto far = integrate_adaptive(
        [&](double u) {
            const double zu = z * u;
            return std::pow(u, p - pm.dim) /
                   (std::pow(zu * zu + 1.0, 0.5 * p) + floor_term * std::pow(u, p));
        },
        0.0, 1.0 / R, opts);
    const double prefactor = 2.0 * std::pow(kPi, 0.5 * (pm.dim - 1)) / std::tgamma(0.5 * (pm.dim - 1));
    return prefactor * (near.value + far.value);
}

double stripe_series_constant(const ModelParams& pm) {
    const double q = pm.q;
    if (!(q > 3.0))
        throw std::domain_error("stripe_series_constant: requires q = p - dim + 1 > 3");
    const double s = q - 2.0;

    // Partial sum plus Euler-Maclaurin tail at a = K+1:
    //   sum_{k>=a} k^{-s} = a^{1-s}/(s-1) + a^{-s}/2 + s a^{-s-1}/12
    //                       - s(s+1)(s+2) a^{-s-3}/720 + R,
    //   |R| <= s(s+1)(s+2)(s+3)(s+4) a^{-s-5}/30240.
    constexpr int K = 2000;
    double partial = 0.0;
    for (int k = K; k >= 1; --k) partial += std::pow(static_cast<double>(k), -s);
    const double a = K + 1.0, la = std::log(a);
    const double tail = pow_int_guarded(la, 1.0 - s) / (s - 1.0) +
                        0.5 * pow_int_guarded(la, -s) +
                        s * pow_int_guarded(la, -s - 1.0) / 12.0 -
                        s * (s + 1.0) * (s + 2.0) * pow_int_guarded(la, -s - 3.0) / 720.0;
    const double remainder =
        s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * pow_int_guarded(la, -s - 5.0) / 30240.0;
    const double zeta = partial + tail;
    if (remainder > 1e-13 * zeta)
        throw QuadratureError("stripe_series_constant: tail remainder above target", zeta,
                              remainder, 1e-13 * zeta);

    const double cq = marginal_kernel_constant(pm);
    const double damping = 1.0 - std::exp2(-(q - 3.0));
    return 4.0 * cq * damping * zeta / ((q - 2.0) * (q - 1.0));
}

double critical_coupling(const ModelParams& pm, double tol) {
    const int d = pm.dim;
    const double p = pm.p;
    // Closed form of the radial part via the Beta integral:
    //   integral_0^inf r^d/(1+r^p) dr = pi / (p sin(pi (d+1)/p)).
    const double radial_closed = kPi / (p * std::sin(kPi * (d + 1) / p));
    const double closed = sphere_first_moment(d) * radial_closed;

    // Gate the identity with a direct radial quadrature at the same tol.
    QuadratureOptions opts;
    opts.rel_tol = 0.25 * tol;
    const double R = 4.0;
    auto near = integrate_adaptive(
        [&](double r) { return std::pow(r, d) / (1.0 + std::pow(r, p)); }, 0.0, R, opts);
    auto far = integrate_adaptive(
        [&](double u) { return std::pow(u, p - d - 2.0) / (1.0 + std::pow(u, p)); }, 0.0, 1.0 / R,
        opts);
    const double radial_quad = near.value + far.value;
    if (std::abs(radial_quad - radial_closed) > tol * radial_closed)
        throw QuadratureError("critical_coupling: quadrature disagrees with closed form",
                              closed, std::abs(radial_quad - radial_closed) / radial_closed, tol);
    return closed;
}

double radial_kernel_tail(double p, double floor_term, double s, double A, double tol) {
    if (!(A > 0.0) || !(s < p - 1.0))
        throw std::invalid_argument("radial_kernel_tail: need A > 0 and s < p - 1");
    QuadratureOptions opts;
    opts.rel_tol = tol;
    auto r = integrate_adaptive(
        [&](double u) { return std::pow(u, p - s - 2.0) / (1.0 + floor_term * std::pow(u, p)); },
        0.0, 1.0 / A, opts);
    return r.value;
}

double kernel_total_mass(const ModelParams& pm) {
    if (!(pm.tau > 0.0))
        throw std::domain_error("kernel_total_mass: requires tau > 0 (sharp kernel has infinite mass)");
    const double T = pm.kernel_floor();
    // integral_0^inf r^{d-1}/(r^p + T) dr = T^{d/p - 1} * pi / (p sin(pi d / p)).
    const double radial = kPi / (pm.p * std::sin(kPi * pm.dim / pm.p));
    return sphere_area(pm.dim) * std::pow(T, pm.dim / pm.p - 1.0) * radial;
}

double kernel_first_moment(const ModelParams& pm, double tol) {
    if (!(pm.tau > 0.0))
        throw std::domain_error("kernel_first_moment: requires tau > 0");
    // The floor T = tau^{p/beta} turns the tau = 1 moment (critical_coupling)
    // into critical_coupling * T^{(d+1)/p - 1} = critical_coupling / tau.
    return critical_coupling(pm, tol) / pm.tau;
}

} // namespace stripes
