#include "stripes/energy1d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stripes/kernels.hpp"

namespace stripes {

BoundedIntegral g1d_bounded(const PeriodicSet1D& set, const ModelParams& params,
                            double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("g1d: tol must be > 0");
    if (set.is_empty() || set.is_full()) return {0.0, 0.0};

    const PiecewiseLinearProfile omega = difference_profile(set);
    const double per = static_cast<double>(set.perimeter_count());
    const double floor_z = set.min_feature();

    // Integrand is even in z: integrate the half line and double.
    BoundedIntegral power =
        power_kernel_bracket_integral(omega, per, floor_z, params, tol / 2.0);
    double value = 2.0 * power.value;
    double err = 2.0 * power.err;

    if (params.tau > 0.0) {
        BoundedIntegral deficit =
            marginal_deficit_bracket_integral(omega, per, floor_z, params, tol / 2.0);
        value -= 2.0 * deficit.value;
        err += 2.0 * deficit.err;
    }
    // The exact integral is nonnegative; clip tiny negative round-off.
    if (value < 0.0 && value > -err - 1e-14) value = 0.0;
    return {value, err};
}

double g1d(const PeriodicSet1D& set, const ModelParams& params, double tol) {
    return g1d_bounded(set, params, tol).value;
}

EnergyReport f0(const PeriodicSet1D& set, const ModelParams& params, double tol) {
    const ModelParams sharp = params.with_tau(0.0);
    const double L = set.period();
    EnergyReport report;
    report.per_direction.assign(1, 0.0);
    if (set.is_empty() || set.is_full()) return report;

    BoundedIntegral nonlocal = g1d_bounded(set, sharp, tol);
    report.perimeter_term = -static_cast<double>(set.perimeter_count()) / L;
    report.per_direction[0] = nonlocal.value / L;
    report.nonlocal_term = report.per_direction[0];
    report.cross_term = 0.0;
    report.total = report.perimeter_term + report.nonlocal_term;
    report.err_estimate = nonlocal.err / L;
    return report;
}

double stripe_energy_inf(double h, const ModelParams& params) {
    if (!(h > 0.0)) throw std::invalid_argument("stripe_energy_inf: h must be > 0");
    const double cbar = stripe_series_constant(params);
    return -1.0 / h + cbar * std::pow(h, -(params.q - 1.0));
}

double optimal_stripe_width(const ModelParams& params) {
    const double cbar = stripe_series_constant(params);
    return std::pow((params.q - 1.0) * cbar, 1.0 / (params.q - 2.0));
}

double chessboard_rhs(const PeriodicSet1D& set, const ModelParams& params) {
    if (set.is_empty() || set.is_full()) return 0.0;
    double sum = 0.0;
    for (const BoundaryPoint& bp : set.boundary()) {
        sum += bp.width * stripe_energy_inf(bp.width, params);
        sum += bp.gap * stripe_energy_inf(bp.gap, params);
    }
    return sum / (2.0 * set.period());
}

double width_gap_comparison_ratio(const PeriodicSet1D& set, const ModelParams& params,
                                  double tol) {
    if (!(params.tau > 0.0))
        throw std::invalid_argument("width_gap_comparison_ratio: requires tau > 0");
    if (set.is_empty() || set.is_full())
        throw std::invalid_argument("width_gap_comparison_ratio: set must have interfaces");
    const double inv_tau = 1.0 / params.tau;
    double denom = 0.0;
    for (const BoundaryPoint& bp : set.boundary()) {
        denom += std::min(std::pow(bp.width, -params.beta), inv_tau);
        denom += std::min(std::pow(bp.gap, -params.beta), inv_tau);
    }
    return g1d(set, params, tol) / denom;
}

}  // namespace stripes
