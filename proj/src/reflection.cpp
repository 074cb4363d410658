#include "stripes/reflection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stripes/energy1d.hpp"
#include "stripes/kernels.hpp"
#include "stripes/quadrature.hpp"

namespace stripes {

namespace {

// Cyclic gap in [0, L).  Arc adjacencies produce differences that are 0 mod L
// but can round to just below -L (e.g. x - (x + L) computed in floating
// point); a wrapped result within rounding distance of L is such a zero gap,
// not a genuine near-full-period one.
double wrap_nonneg(double x, double L) {
    double r = std::fmod(x, L);
    if (r < 0.0) r += L;
    if (r > L * (1.0 - 1e-12)) r = 0.0;
    return r;
}

// Sort, clip to [lo, hi], and merge touching or overlapping intervals.
std::vector<Interval> normalize_union(std::vector<Interval> iv, double lo, double hi,
                                      const char* where) {
    const double tol = 1e-12 * std::max(1.0, hi - lo);
    for (auto& piece : iv) {
        if (!(piece.second > piece.first))
            throw std::invalid_argument(std::string(where) + ": degenerate interval");
        if (piece.first < lo - tol || piece.second > hi + tol)
            throw std::invalid_argument(std::string(where) + ": interval outside its window");
        piece.first = std::max(piece.first, lo);
        piece.second = std::min(piece.second, hi);
    }
    std::sort(iv.begin(), iv.end());
    std::vector<Interval> merged;
    for (const auto& piece : iv) {
        if (!merged.empty() && piece.first <= merged.back().second + tol)
            merged.back().second = std::max(merged.back().second, piece.second);
        else
            merged.push_back(piece);
    }
    return merged;
}

// Gaps of a sorted, merged union within [lo, hi].
std::vector<Interval> complement_within(const std::vector<Interval>& iv, double lo,
                                        double hi) {
    const double tol = 1e-12 * std::max(1.0, hi - lo);
    std::vector<Interval> out;
    double cursor = lo;
    for (const auto& piece : iv) {
        if (piece.first > cursor + tol) out.emplace_back(cursor, piece.first);
        cursor = std::max(cursor, piece.second);
    }
    if (hi > cursor + tol) out.emplace_back(cursor, hi);
    return out;
}

// Exact integral of e^{-alpha|x-y|} over [0,len1] x [gap+... ] rectangles:
// two disjoint intervals of lengths len1, len2 separated by gap >= 0.
double rect_integral(double alpha, double len1, double len2, double gap) {
    const double f1 = -std::expm1(-alpha * len1);
    const double f2 = -std::expm1(-alpha * len2);
    return f1 * f2 * std::exp(-alpha * std::max(gap, 0.0)) / (alpha * alpha);
}

// -2 * sum of rectangle integrals between a union and its complement pieces.
double interaction_between(const std::vector<Interval>& a,
                           const std::vector<Interval>& b, double alpha) {
    double acc = 0.0;
    for (const auto& i : a) {
        for (const auto& j : b) {
            const double gap = (i.first <= j.first) ? j.first - i.second
                                                    : i.first - j.second;
            acc += rect_integral(alpha, i.second - i.first, j.second - j.first, gap);
        }
    }
    return -2.0 * acc;
}

// Weighted content sum over x in dE of the boundary-scoring right-hand side.
double boundary_scoring_sum(const PeriodicSet1D& set, double alpha) {
    double acc = 0.0;
    for (const BoundaryPoint& bp : set.boundary()) {
        acc += bp.width * stripe_energy_alpha(bp.width, alpha);
        acc += bp.gap * stripe_energy_alpha(bp.gap, alpha);
    }
    return 0.5 * acc;
}

// Free-boundary interaction of k adjacent period copies of the set.
double free_boundary_interaction(const PeriodicSet1D& set, double alpha, int k) {
    const double L = set.period();
    std::vector<Interval> inside, outside;
    const auto in_pieces = set.split_intervals();
    const auto out_pieces = set.complement().split_intervals();
    inside.reserve(in_pieces.size() * k);
    outside.reserve(out_pieces.size() * k);
    for (int j = 0; j < k; ++j) {
        for (const auto& piece : in_pieces)
            inside.emplace_back(piece.first + j * L, piece.second + j * L);
        for (const auto& piece : out_pieces)
            outside.emplace_back(piece.first + j * L, piece.second + j * L);
    }
    return interaction_between(inside, outside, alpha);
}

}  // namespace

ReflectionPair::ReflectionPair(double split_, double length_, double alpha_,
                               std::vector<Interval> left_, std::vector<Interval> right_)
    : split(split_), length(length_), alpha(alpha_) {
    if (!(split > 0.0) || !(length > split))
        throw std::invalid_argument("ReflectionPair: need 0 < split < length");
    if (!(alpha > 0.0)) throw std::invalid_argument("ReflectionPair: alpha must be > 0");
    left = normalize_union(std::move(left_), 0.0, split, "ReflectionPair.left");
    right = normalize_union(std::move(right_), split, length, "ReflectionPair.right");
}

double exp_interaction(const ReflectionPair& pair) {
    std::vector<Interval> all = pair.left;
    all.insert(all.end(), pair.right.begin(), pair.right.end());
    all = normalize_union(std::move(all), 0.0, pair.length, "exp_interaction");
    if (all.empty()) return 0.0;
    const std::vector<Interval> gaps = complement_within(all, 0.0, pair.length);
    return interaction_between(all, gaps, pair.alpha);
}

std::vector<Interval> reflect(const ReflectionPair& pair, ReflectSide side) {
    const double s = pair.split;
    const std::vector<Interval>& source =
        (side == ReflectSide::left) ? pair.left : pair.right;
    std::vector<Interval> mirrored;
    mirrored.reserve(source.size());
    for (const auto& piece : source)
        mirrored.emplace_back(2.0 * s - piece.second, 2.0 * s - piece.first);
    std::sort(mirrored.begin(), mirrored.end());
    if (side == ReflectSide::left)
        return complement_within(mirrored, s, 2.0 * s);
    const double l2 = pair.length - s;
    return complement_within(mirrored, s - l2, s);
}

double rp_margin(const ReflectionPair& pair) {
    const double j_both = exp_interaction(pair);

    ReflectionPair left_vs_mirror(pair.split, 2.0 * pair.split, pair.alpha, pair.left,
                                  reflect(pair, ReflectSide::left));
    const double j_left = exp_interaction(left_vs_mirror);

    const double l2 = pair.length - pair.split;
    const double shift = pair.split - l2;
    std::vector<Interval> mirrored_right = reflect(pair, ReflectSide::right);
    for (auto& piece : mirrored_right) {
        piece.first -= shift;
        piece.second -= shift;
    }
    std::vector<Interval> right_shifted = pair.right;
    for (auto& piece : right_shifted) {
        piece.first -= shift;
        piece.second -= shift;
    }
    ReflectionPair mirror_vs_right(l2, 2.0 * l2, pair.alpha, mirrored_right,
                                   right_shifted);
    const double j_right = exp_interaction(mirror_vs_right);

    return j_both - 0.5 * (j_left + j_right);
}

double rp_margin_closed(const ReflectionPair& pair) {
    const double alpha = pair.alpha;
    auto toward_split_from_left = [&](const std::vector<Interval>& iv) {
        double acc = 0.0;
        for (const auto& piece : iv)
            acc += (std::exp(-alpha * (pair.split - piece.second)) -
                    std::exp(-alpha * (pair.split - piece.first))) / alpha;
        return acc;
    };
    auto away_from_split_right = [&](const std::vector<Interval>& iv) {
        double acc = 0.0;
        for (const auto& piece : iv)
            acc += (std::exp(-alpha * (piece.first - pair.split)) -
                    std::exp(-alpha * (piece.second - pair.split))) / alpha;
        return acc;
    };
    const double a = toward_split_from_left(pair.left);
    const double b = -std::expm1(-alpha * pair.split) / alpha - a;
    const double c = away_from_split_right(pair.right);
    const double d = -std::expm1(-alpha * (pair.length - pair.split)) / alpha - c;
    return (a - d) * (a - d) + (b - c) * (b - c);
}

double stripe_energy_alpha(double h, double alpha, double tol) {
    if (!(h > 0.0) || !(alpha > 0.0) || !(tol > 0.0))
        throw std::invalid_argument("stripe_energy_alpha: h, alpha, tol must be > 0");
    double frac = -std::expm1(-alpha * h);
    const double base = 2.0 * frac * frac / (alpha * alpha * h);
    const double rho = std::exp(-2.0 * alpha * h);
    double term = base;
    double sum = 0.0;
    for (int k = 0; k < 200000; ++k) {
        sum += term;
        if (term * rho / (1.0 - rho) <= tol) break;
        term *= rho;
    }
    return -sum;
}

double periodic_exp_content(const PeriodicSet1D& set, double alpha) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("periodic_exp_content: alpha must be > 0");
    if (set.is_empty() || set.is_full()) return 0.0;
    const double L = set.period();
    const auto inside = set.arcs();
    const auto outside = set.complement().arcs();
    const double denom = -std::expm1(-alpha * L);
    double acc = 0.0;
    for (const auto& i : inside) {
        const double fi = -std::expm1(-alpha * (i.second - i.first));
        for (const auto& j : outside) {
            const double fj = -std::expm1(-alpha * (j.second - j.first));
            const double gap_right = wrap_nonneg(j.first - i.second, L);
            const double gap_left = wrap_nonneg(i.first - j.second, L);
            acc += fi * fj * (std::exp(-alpha * gap_right) + std::exp(-alpha * gap_left));
        }
    }
    return 2.0 * acc / (alpha * alpha * denom);
}

double chessboard_exp_margin_exact(const PeriodicSet1D& set, double alpha) {
    if (set.is_empty() || set.is_full()) return 0.0;
    return -periodic_exp_content(set, alpha) - boundary_scoring_sum(set, alpha);
}

double chessboard_exp_margin(const PeriodicSet1D& set, double alpha) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("chessboard_exp_margin: alpha must be > 0");
    if (set.is_empty() || set.is_full()) return 0.0;
    double lhs = 0.0;
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (int k = 1; k <= 64; k *= 2) {
        lhs = free_boundary_interaction(set, alpha, k + 1) -
              free_boundary_interaction(set, alpha, k);
        if (!std::isnan(prev) && std::fabs(lhs - prev) <= 1e-8) break;
        prev = lhs;
    }
    return lhs - boundary_scoring_sum(set, alpha);
}

double laplace_identity_residual(const PeriodicSet1D& set, const ModelParams& params,
                                 double tol) {
    if (!(tol > 0.0))
        throw std::invalid_argument("laplace_identity_residual: tol must be > 0");
    if (set.is_empty() || set.is_full()) return 0.0;

    const ModelParams sharp = params.with_tau(0.0);
    const double L = set.period();
    const double per = static_cast<double>(set.perimeter_count());
    const double cq = marginal_kernel_constant(sharp);
    const double gq = std::tgamma(sharp.q);
    const double r0 = set.min_feature();

    auto remainder_v = [&](double a) {
        return 2.0 * per - a * a * periodic_exp_content(set, a);
    };

    // Upper cutoff: the density tail is exact; the kernel-side tail uses the
    // empirical value of the exponentially decaying remainder at the cutoff.
    double cutoff = std::max(8.0, 2.0 * (sharp.q - 3.0) / r0);
    while (cutoff < 4096.0) {
        const double density_tail = per * std::exp(-cutoff) / L;
        const double v_tail = (cq * std::pow(cutoff, sharp.q - 3.0) / (gq * L)) *
                              std::fabs(remainder_v(cutoff)) * 2.0 / r0;
        if (density_tail + v_tail <= tol / 4.0) break;
        cutoff *= 2.0;
    }

    auto integrand = [&](double a) {
        return (-std::exp(-a) * per +
                (cq * std::pow(a, sharp.q - 3.0) / gq) * remainder_v(a)) / L;
    };
    QuadratureOptions opts;
    opts.rel_tol = 0.0;
    opts.abs_tol = tol / 2.0;
    opts.max_intervals = 20000;
    const IntegrationResult rebuilt = integrate_adaptive(integrand, 0.0, cutoff, opts);

    const double direct = f0(set, sharp, 1e-12).total;
    return std::fabs(direct - rebuilt.value);
}

}  // namespace stripes
