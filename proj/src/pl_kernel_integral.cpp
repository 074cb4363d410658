#include "stripes/pl_kernel_integral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stripes/kernels.hpp"
#include "stripes/quadrature.hpp"

namespace stripes {

double power_piece_integral(double a, double b, double m, double c, double q) {
    if (!(a > 0) || b < a) throw std::invalid_argument("need 0 < a <= b");
    // antiderivative of z^{-q}(m z + c): m z^{2-q}/(2-q) + c z^{1-q}/(1-q)
    auto F = [&](double z) {
        return m * std::pow(z, 2 - q) / (2 - q) + c * std::pow(z, 1 - q) / (1 - q);
    };
    return F(b) - F(a);
}

namespace {

void check_profile(const PiecewiseLinearProfile& prof, double support_floor) {
    if (prof.z.size() < 2 || prof.z.size() != prof.v.size())
        throw std::invalid_argument("profile needs matching breakpoint/value arrays");
    if (prof.z.front() != 0.0 || prof.z.back() != prof.period)
        throw std::invalid_argument("profile breakpoints must span [0, period]");
    if (support_floor < 0 || support_floor > prof.period)
        throw std::invalid_argument("support floor must lie within one period");
}

double profile_oscillation(const PiecewiseLinearProfile& prof) {
    return prof.max_value() - prof.min_value();
}

} // namespace

BoundedIntegral power_kernel_bracket_integral(const PiecewiseLinearProfile& profile,
                                              double slope_at_infinity, double support_floor,
                                              const ModelParams& pm, double tol) {
    check_profile(profile, support_floor);
    const double L = profile.period;
    const double q = pm.q;
    const double Cq = marginal_kernel_constant(pm);
    const double osc = profile_oscillation(profile);

    // cutoff from the tail remainder bound C_q (L/2) osc Z^{-q} <= tol
    double Z = std::max(2 * L, 4 * support_floor);
    if (osc > 0 && tol > 0) {
        double need = std::pow(Cq * (L / 2) * osc / tol, 1.0 / q);
        Z = std::max(Z, need);
    }
    auto periods = static_cast<long>(std::ceil(Z / L));
    // keep the piece count bounded; the reported error stays honest
    const long max_pieces = 20'000'000;
    auto per_period = static_cast<long>(profile.z.size());
    periods = std::min(periods, std::max<long>(2, max_pieces / std::max<long>(1, per_period)));
    Z = static_cast<double>(periods) * L;

    // exact piecewise integration of z^{-q} (slope z - profile(z)) on [floor, Z]
    double sum = 0;
    const double lo_edge = support_floor * (1 - 1e-12);
    for (long j = 0; j < periods; ++j) {
        double base = static_cast<double>(j) * L;
        for (std::size_t k = 0; k + 1 < profile.z.size(); ++k) {
            double a = base + profile.z[k];
            double b = base + profile.z[k + 1];
            if (b <= lo_edge || b <= a) continue;
            double s = (profile.v[k + 1] - profile.v[k]) / (profile.z[k + 1] - profile.z[k]);
            // bracket on this piece: slope*z - (v_k + s (z - a)) = m z + c
            double m = slope_at_infinity - s;
            double c = s * a - profile.v[k];
            if (m == 0 && c == 0) continue;
            double lo = std::max(a, support_floor);
            if (b <= lo) continue;
            if (!(lo > 0))
                throw std::invalid_argument(
                    "bracket does not vanish near z = 0; divergent power integral");
            sum += power_piece_integral(lo, b, m, c, q);
        }
    }

    // closed-form tail of the asymptotic part beyond Z, using the period mean
    double mean = profile.mean();
    double tail = slope_at_infinity * std::pow(Z, 2 - q) / (q - 2) - mean * std::pow(Z, 1 - q) / (q - 1);
    double err = Cq * (L / 2) * osc * std::pow(Z, -q);
    return {Cq * sum + Cq * tail, err};
}

BoundedIntegral marginal_deficit_bracket_integral(const PiecewiseLinearProfile& profile,
                                                  double slope_at_infinity, double support_floor,
                                                  const ModelParams& pm, double tol) {
    check_profile(profile, support_floor);
    if (!(pm.tau > 0)) throw std::invalid_argument("deficit integral requires tau > 0");
    const double q = pm.q;
    const double Cq = marginal_kernel_constant(pm);
    const double T = pm.kernel_floor(); // tau^{p/beta}
    // deficit bound D(z) <= T C_{2p} z^{-(2p-d+1)}; against bracket <= slope z
    // the tail beyond Z is <= T C_{2p} slope Z^{-(2p-d-1)} / (2p-d-1)
    const ModelParams doubled(pm.dim, 2 * pm.p);
    const double C2p = marginal_kernel_constant(doubled);
    const double decay = 2 * pm.p - pm.dim - 1;

    double floor_z = std::max(support_floor, 1e-6 * profile.period);
    double Z = std::max(2 * profile.period, 4 * floor_z);
    if (slope_at_infinity > 0 && tol > 0) {
        double need = std::pow(T * C2p * slope_at_infinity / (decay * (tol / 2)), 1.0 / decay);
        Z = std::max(Z, need);
    }
    double tail_bound = T * C2p * slope_at_infinity * std::pow(Z, -decay) / decay;

    auto integrand = [&](double z) {
        double bracket = slope_at_infinity * z - profile(z);
        if (bracket <= 0) return 0.0; // analytic nonnegativity; clip rounding noise
        double deficit = Cq * std::pow(z, -q) - marginal_kernel(z, pm, 1e-12);
        return deficit * bracket;
    };
    QuadratureOptions opts;
    opts.rel_tol = 0;
    opts.abs_tol = tol / 2;
    opts.max_intervals = 20000;
    IntegrationResult r = integrate_adaptive(integrand, floor_z, Z, opts);
    return {r.value, r.error + tail_bound};
}

} // namespace stripes
