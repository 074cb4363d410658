#include "stripes/energynd.hpp"

#include "stripes/kernels.hpp"
#include "stripes/periodic_set.hpp"
#include "stripes/pl_kernel_integral.hpp"
#include "stripes/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace stripes {

namespace {

std::size_t cells_total(int n, int d) {
    std::size_t t = 1;
    for (int i = 0; i < d; ++i) t *= static_cast<std::size_t>(n);
    return t;
}

// Dense local copy of the mask plus the exact lattice difference counts.
// diff_full[j] counts the cells whose value changes under the cyclic shift by
// the offset j; diff_axis[a][k] is the same for the shift k e_a.  Both are
// exact integers, and the continuum difference functions are the multilinear
// interpolations of w^d times these counts between lattice offsets.
struct LatticeTables {
    int dim = 0;
    int n = 0;
    std::vector<std::uint8_t> mask; // row-major, last axis fastest
    std::vector<int> diff_full;
    std::array<std::vector<int>, 3> diff_axis;
};

LatticeTables build_tables(const GridSetND& grid) {
    LatticeTables t;
    t.dim = grid.dim();
    t.n = grid.n();
    const int n = t.n;
    const int d = t.dim;
    const std::size_t total = cells_total(n, d);
    t.mask.resize(total);
    {
        std::vector<int> idx(static_cast<std::size_t>(d), 0);
        for (std::size_t flat = 0; flat < total; ++flat) {
            std::size_t rem = flat;
            for (int k = d - 1; k >= 0; --k) {
                idx[static_cast<std::size_t>(k)] =
                    static_cast<int>(rem % static_cast<std::size_t>(n));
                rem /= static_cast<std::size_t>(n);
            }
            t.mask[flat] = grid.at(idx) ? 1 : 0;
        }
    }
    std::vector<int> wrap(static_cast<std::size_t>(2 * n));
    for (int k = 0; k < 2 * n; ++k) wrap[static_cast<std::size_t>(k)] = k % n;
    const std::uint8_t* m = t.mask.data();
    t.diff_full.assign(total, 0);
    if (d == 2) {
        for (int j0 = 0; j0 < n; ++j0)
            for (int j1 = 0; j1 < n; ++j1) {
                int cnt = 0;
                for (int c0 = 0; c0 < n; ++c0) {
                    const int b0 = c0 * n;
                    const int s0 = wrap[static_cast<std::size_t>(c0 + j0)] * n;
                    for (int c1 = 0; c1 < n; ++c1)
                        cnt += m[b0 + c1] != m[s0 + wrap[static_cast<std::size_t>(c1 + j1)]];
                }
                t.diff_full[static_cast<std::size_t>(j0 * n + j1)] = cnt;
            }
    } else {
        for (int j0 = 0; j0 < n; ++j0)
            for (int j1 = 0; j1 < n; ++j1)
                for (int j2 = 0; j2 < n; ++j2) {
                    int cnt = 0;
                    for (int c0 = 0; c0 < n; ++c0) {
                        const int b0 = c0 * n * n;
                        const int s0 = wrap[static_cast<std::size_t>(c0 + j0)] * n * n;
                        for (int c1 = 0; c1 < n; ++c1) {
                            const int b1 = b0 + c1 * n;
                            const int s1 = s0 + wrap[static_cast<std::size_t>(c1 + j1)] * n;
                            for (int c2 = 0; c2 < n; ++c2)
                                cnt += m[b1 + c2] !=
                                       m[s1 + wrap[static_cast<std::size_t>(c2 + j2)]];
                        }
                    }
                    t.diff_full[static_cast<std::size_t>((j0 * n + j1) * n + j2)] = cnt;
                }
    }
    // Per-axis counts are the full counts at offsets along that axis.
    for (int a = 0; a < d; ++a) {
        t.diff_axis[static_cast<std::size_t>(a)].assign(static_cast<std::size_t>(n), 0);
        std::size_t stride = 1;
        for (int k = d - 1; k > a; --k) stride *= static_cast<std::size_t>(n);
        for (int k = 0; k < n; ++k)
            t.diff_axis[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)] =
                t.diff_full[static_cast<std::size_t>(k) * stride];
    }
    return t;
}

// Sum over axes of the paired-change counts: for each offset j, the number of
// (cell, axis) pairs whose value changes both on the axis leg c -> c + j_a e_a
// and on the remaining leg c + j_a e_a -> c + j.
std::vector<double> x_sum_counts(const LatticeTables& t) {
    const int n = t.n;
    const int d = t.dim;
    const std::size_t total = cells_total(n, d);
    std::vector<int> wrap(static_cast<std::size_t>(2 * n));
    for (int k = 0; k < 2 * n; ++k) wrap[static_cast<std::size_t>(k)] = k % n;
    const std::uint8_t* m = t.mask.data();
    std::vector<double> xs(total, 0.0);
    if (d == 2) {
        for (int j0 = 0; j0 < n; ++j0)
            for (int j1 = 0; j1 < n; ++j1) {
                long cnt = 0;
                for (int c0 = 0; c0 < n; ++c0) {
                    const int s0 = wrap[static_cast<std::size_t>(c0 + j0)] * n;
                    const int b0 = c0 * n;
                    for (int c1 = 0; c1 < n; ++c1) {
                        const int s1 = wrap[static_cast<std::size_t>(c1 + j1)];
                        const std::uint8_t a = m[b0 + c1];
                        const std::uint8_t f = m[s0 + s1];
                        const std::uint8_t leg0 = m[s0 + c1];
                        const std::uint8_t leg1 = m[b0 + s1];
                        cnt += (a != leg0) && (leg0 != f);
                        cnt += (a != leg1) && (leg1 != f);
                    }
                }
                xs[static_cast<std::size_t>(j0 * n + j1)] = static_cast<double>(cnt);
            }
    } else {
        for (int j0 = 0; j0 < n; ++j0)
            for (int j1 = 0; j1 < n; ++j1)
                for (int j2 = 0; j2 < n; ++j2) {
                    long cnt = 0;
                    for (int c0 = 0; c0 < n; ++c0) {
                        const int w0 = wrap[static_cast<std::size_t>(c0 + j0)];
                        for (int c1 = 0; c1 < n; ++c1) {
                            const int w1 = wrap[static_cast<std::size_t>(c1 + j1)];
                            for (int c2 = 0; c2 < n; ++c2) {
                                const int w2 = wrap[static_cast<std::size_t>(c2 + j2)];
                                const std::uint8_t a = m[(c0 * n + c1) * n + c2];
                                const std::uint8_t f = m[(w0 * n + w1) * n + w2];
                                const std::uint8_t l0 = m[(w0 * n + c1) * n + c2];
                                const std::uint8_t l1 = m[(c0 * n + w1) * n + c2];
                                const std::uint8_t l2 = m[(c0 * n + c1) * n + w2];
                                cnt += (a != l0) && (l0 != f);
                                cnt += (a != l1) && (l1 != f);
                                cnt += (a != l2) && (l2 != f);
                            }
                        }
                    }
                    xs[static_cast<std::size_t>((j0 * n + j1) * n + j2)] =
                        static_cast<double>(cnt);
                }
    }
    return xs;
}

// ---------------------------------------------------------------------------
// Tent partition of unity: for a function that is multilinear between lattice
// offsets, the kernel integral equals the sum of node values against the tent
// weights U(k) = integral K Lambda_k.  The weights are accumulated onto the
// torus; whatever mass falls outside the computed window is corrected by a
// midpoint rule, with the closed-form total kernel mass certifying the
// leftover exactly.
// ---------------------------------------------------------------------------

constexpr int kMaxWindow = 4096;
constexpr int kMaxDepth = 12;

constexpr std::array<double, 3> kG3x{0.5 - 0.5 * 0.774596669241483377,
                                     0.5,
                                     0.5 + 0.5 * 0.774596669241483377};
constexpr std::array<double, 3> kG3w{5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

struct TentIntegrand {
    int dim = 2;
    double w = 1.0;
    double p_half = 2.5;
    double floor_term = 1.0;
    std::array<int, 3> center{0, 0, 0};

    double operator()(const std::array<double, 3>& z) const {
        double lam = 1.0;
        double r2 = 0.0;
        for (int i = 0; i < dim; ++i) {
            const double t =
                1.0 - std::abs(z[static_cast<std::size_t>(i)] / w -
                               static_cast<double>(center[static_cast<std::size_t>(i)]));
            if (t <= 0.0) return 0.0;
            lam *= t;
            r2 += z[static_cast<std::size_t>(i)] * z[static_cast<std::size_t>(i)];
        }
        return lam / (std::pow(r2, p_half) + floor_term);
    }
};

double gauss3_box(const TentIntegrand& f, const std::array<double, 3>& lo,
                  const std::array<double, 3>& hi) {
    double vol = 1.0;
    for (int i = 0; i < f.dim; ++i)
        vol *= hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)];
    std::array<double, 3> z{0.0, 0.0, 0.0};
    double s = 0.0;
    if (f.dim == 2) {
        for (int a = 0; a < 3; ++a) {
            z[0] = lo[0] + kG3x[static_cast<std::size_t>(a)] * (hi[0] - lo[0]);
            for (int b = 0; b < 3; ++b) {
                z[1] = lo[1] + kG3x[static_cast<std::size_t>(b)] * (hi[1] - lo[1]);
                s += kG3w[static_cast<std::size_t>(a)] * kG3w[static_cast<std::size_t>(b)] * f(z);
            }
        }
    } else {
        for (int a = 0; a < 3; ++a) {
            z[0] = lo[0] + kG3x[static_cast<std::size_t>(a)] * (hi[0] - lo[0]);
            for (int b = 0; b < 3; ++b) {
                z[1] = lo[1] + kG3x[static_cast<std::size_t>(b)] * (hi[1] - lo[1]);
                for (int c = 0; c < 3; ++c) {
                    z[2] = lo[2] + kG3x[static_cast<std::size_t>(c)] * (hi[2] - lo[2]);
                    s += kG3w[static_cast<std::size_t>(a)] * kG3w[static_cast<std::size_t>(b)] *
                         kG3w[static_cast<std::size_t>(c)] * f(z);
                }
            }
        }
    }
    return s * vol;
}

double refine_box(const TentIntegrand& f, const std::array<double, 3>& lo,
                  const std::array<double, 3>& hi, double target, int depth,
                  double& err_accum) {
    const double coarse = gauss3_box(f, lo, hi);
    std::array<double, 3> mid{0.0, 0.0, 0.0};
    for (int i = 0; i < f.dim; ++i)
        mid[static_cast<std::size_t>(i)] =
            0.5 * (lo[static_cast<std::size_t>(i)] + hi[static_cast<std::size_t>(i)]);
    const int children = 1 << f.dim;
    std::array<std::array<double, 3>, 8> clo{};
    std::array<std::array<double, 3>, 8> chi{};
    double fine = 0.0;
    for (int c = 0; c < children; ++c) {
        for (int i = 0; i < f.dim; ++i) {
            const bool upper = (c >> i) & 1;
            clo[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)] =
                upper ? mid[static_cast<std::size_t>(i)] : lo[static_cast<std::size_t>(i)];
            chi[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)] =
                upper ? hi[static_cast<std::size_t>(i)] : mid[static_cast<std::size_t>(i)];
        }
        fine += gauss3_box(f, clo[static_cast<std::size_t>(c)], chi[static_cast<std::size_t>(c)]);
    }
    const double diff = std::abs(fine - coarse);
    if (diff <= target || depth >= kMaxDepth) {
        err_accum += diff;
        return fine;
    }
    double s = 0.0;
    for (int c = 0; c < children; ++c)
        s += refine_box(f, clo[static_cast<std::size_t>(c)], chi[static_cast<std::size_t>(c)],
                        target / children, depth + 1, err_accum);
    return s;
}

struct RepWeight {
    double value = 0.0;
    double err = 0.0;
};

RepWeight tent_weight(TentIntegrand f, double target) {
    RepWeight r;
    const int cells = 1 << f.dim;
    for (int c = 0; c < cells; ++c) {
        std::array<double, 3> lo{0.0, 0.0, 0.0};
        std::array<double, 3> hi{0.0, 0.0, 0.0};
        for (int i = 0; i < f.dim; ++i) {
            const double base = f.center[static_cast<std::size_t>(i)] * f.w;
            const bool upper = (c >> i) & 1;
            lo[static_cast<std::size_t>(i)] = upper ? base : base - f.w;
            hi[static_cast<std::size_t>(i)] = upper ? base + f.w : base;
        }
        r.value += refine_box(f, lo, hi, target / cells, 0, r.err);
    }
    return r;
}

struct TentTable {
    int dim = 0;
    int n = 0;
    double w = 0.0;
    double total_mass = 0.0;
    double leftover = 0.0; // kernel mass outside the computed window, >= 0
    double sum_err = 0.0;  // accumulated per-image quadrature error
    std::vector<double> ubar; // torus-accumulated tent weights, row-major
};

std::size_t rep_index2(int a, int b) {
    return static_cast<std::size_t>(a) * (static_cast<std::size_t>(a) + 1) / 2 +
           static_cast<std::size_t>(b);
}

std::size_t rep_index3(int a, int b, int c) {
    const std::size_t ua = static_cast<std::size_t>(a);
    return ua * (ua + 1) * (ua + 2) / 6 + rep_index2(b, c);
}

std::shared_ptr<const TentTable> tent_table(const ModelParams& kernel_pm, int n, double w,
                                            double tol_energy) {
    using Key = std::tuple<int, double, double, double, int, double>;
    static std::map<Key, std::shared_ptr<const TentTable>> cache;
    static std::mutex mutex;
    const Key key{kernel_pm.dim, kernel_pm.p, kernel_pm.tau, w, n, tol_energy};
    {
        const std::lock_guard<std::mutex> lock(mutex);
        const auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    const int d = kernel_pm.dim;
    auto table = std::make_shared<TentTable>();
    table->dim = d;
    table->n = n;
    table->w = w;
    table->total_mass = kernel_total_mass(kernel_pm);

    // Window radius from the kernel tail: beyond R the leftover mass times the
    // sample oscillation (at most a few unit volumes) stays under tol_energy.
    const double R =
        std::pow(sphere_area(d) * 3.0 / (tol_energy * (kernel_pm.p - d)), 1.0 / (kernel_pm.p - d));
    const int M = std::min(static_cast<int>(std::ceil(R / w)) + 1, kMaxWindow);
    const double images = std::pow(2.0 * M + 1.0, d);
    const double t_img = tol_energy / (8.0 * d * images);

    TentIntegrand f;
    f.dim = d;
    f.w = w;
    f.p_half = 0.5 * kernel_pm.p;
    f.floor_term = kernel_pm.kernel_floor();

    std::vector<RepWeight> reps;
    if (d == 2) {
        reps.resize(rep_index2(M, M) + 1);
        for (int a = 0; a <= M; ++a)
            for (int b = 0; b <= a; ++b) {
                f.center = {a, b, 0};
                reps[rep_index2(a, b)] = tent_weight(f, t_img);
            }
    } else {
        reps.resize(rep_index3(M, M, M) + 1);
        for (int a = 0; a <= M; ++a)
            for (int b = 0; b <= a; ++b)
                for (int c = 0; c <= b; ++c) {
                    f.center = {a, b, c};
                    reps[rep_index3(a, b, c)] = tent_weight(f, t_img);
                }
    }

    table->ubar.assign(cells_total(n, d), 0.0);
    const auto wrap_mod = [n](int k) {
        int r = k % n;
        return r < 0 ? r + n : r;
    };
    double sum_u = 0.0;
    double sum_err = 0.0;
    if (d == 2) {
        for (int k0 = -M; k0 <= M; ++k0)
            for (int k1 = -M; k1 <= M; ++k1) {
                int a = std::abs(k0);
                int b = std::abs(k1);
                if (a < b) std::swap(a, b);
                const RepWeight& r = reps[rep_index2(a, b)];
                table->ubar[static_cast<std::size_t>(wrap_mod(k0) * n + wrap_mod(k1))] += r.value;
                sum_u += r.value;
                sum_err += r.err;
            }
    } else {
        for (int k0 = -M; k0 <= M; ++k0)
            for (int k1 = -M; k1 <= M; ++k1)
                for (int k2 = -M; k2 <= M; ++k2) {
                    std::array<int, 3> s{std::abs(k0), std::abs(k1), std::abs(k2)};
                    std::sort(s.begin(), s.end(), std::greater<int>());
                    const RepWeight& r = reps[rep_index3(s[0], s[1], s[2])];
                    table->ubar[static_cast<std::size_t>(
                        (wrap_mod(k0) * n + wrap_mod(k1)) * n + wrap_mod(k2))] += r.value;
                    sum_u += r.value;
                    sum_err += r.err;
                }
    }
    table->sum_err = sum_err;
    table->leftover = std::max(0.0, table->total_mass - sum_u);

    const std::lock_guard<std::mutex> lock(mutex);
    return cache.emplace(key, std::move(table)).first->second;
}

struct SampleIntegral {
    double value = 0.0;
    double err = 0.0;
};

// Integral of the kernel against the multilinear interpolation of the given
// torus samples.  The window sum is exact up to the tent-weight quadrature;
// the leftover mass is assigned the midrange sample value (far samples repeat
// the torus values, so the midrange bounds the discrepancy by half the
// oscillation).
SampleIntegral integrate_samples(const std::vector<double>& f, const TentTable& tab) {
    double s = 0.0;
    double fmin = std::numeric_limits<double>::infinity();
    double fmax = -std::numeric_limits<double>::infinity();
    double famax = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        s += f[j] * tab.ubar[j];
        fmin = std::min(fmin, f[j]);
        fmax = std::max(fmax, f[j]);
        famax = std::max(famax, std::abs(f[j]));
    }
    SampleIntegral out;
    out.value = s + 0.5 * (fmin + fmax) * tab.leftover;
    out.err = 0.5 * (fmax - fmin) * tab.leftover + 2.0 * famax * tab.sum_err;
    return out;
}

// ---------------------------------------------------------------------------
// Directional pieces via the one-dimensional bracket engines.
// ---------------------------------------------------------------------------

PiecewiseLinearProfile axis_profile(const LatticeTables& t, int axis, double w) {
    PiecewiseLinearProfile pr;
    const int n = t.n;
    pr.period = n * w;
    pr.z.resize(static_cast<std::size_t>(n) + 1);
    pr.v.resize(static_cast<std::size_t>(n) + 1);
    const double wd = std::pow(w, t.dim);
    for (int k = 0; k <= n; ++k) {
        pr.z[static_cast<std::size_t>(k)] = k * w;
        pr.v[static_cast<std::size_t>(k)] =
            wd * t.diff_axis[static_cast<std::size_t>(axis)][static_cast<std::size_t>(k % n)];
    }
    return pr;
}

struct DirectionalPiece {
    double g = 0.0;             // per-volume one-directional bracket energy
    double g_err = 0.0;
    double line_integral = 0.0; // integral over R of the marginal kernel times diff_axis
    double line_err = 0.0;
};

DirectionalPiece directional_piece(const LatticeTables& t, int axis, const ModelParams& kernel_pm,
                                   double w, double volume, double tolG, bool need_line) {
    DirectionalPiece out;
    if (t.diff_axis[static_cast<std::size_t>(axis)][1] == 0) return out; // constant along axis
    const double slope =
        std::pow(w, t.dim - 1) *
        static_cast<double>(t.diff_axis[static_cast<std::size_t>(axis)][1]);
    const auto profile = axis_profile(t, axis, w);
    const auto power = power_kernel_bracket_integral(profile, slope, w, kernel_pm, tolG);
    BoundedIntegral deficit;
    if (kernel_pm.tau > 0.0)
        deficit = marginal_deficit_bracket_integral(profile, slope, w, kernel_pm, tolG);
    double bracket = 2.0 * (power.value - deficit.value);
    const double err = 2.0 * (power.err + deficit.err);
    if (bracket < 0.0 && -bracket <= err + 1e-14) bracket = 0.0;
    out.g = bracket / volume;
    out.g_err = err / volume;
    if (need_line) {
        out.line_integral = slope * kernel_first_moment(kernel_pm) - bracket;
        out.line_err = err;
    }
    return out;
}

struct NonlocalParts {
    std::array<double, 3> g{0.0, 0.0, 0.0};
    double g_err = 0.0;
    double cross = 0.0;
    double cross_err = 0.0;
};

std::vector<double> coupling_samples(const LatticeTables& t, double w) {
    const int n = t.n;
    const int d = t.dim;
    const double wd = std::pow(w, d);
    std::vector<double> s(cells_total(n, d), 0.0);
    if (d == 2) {
        for (int j0 = 0; j0 < n; ++j0)
            for (int j1 = 0; j1 < n; ++j1) {
                const int v = t.diff_axis[0][static_cast<std::size_t>(j0)] +
                              t.diff_axis[1][static_cast<std::size_t>(j1)] -
                              t.diff_full[static_cast<std::size_t>(j0 * n + j1)];
                s[static_cast<std::size_t>(j0 * n + j1)] = wd * v;
            }
    } else {
        for (int j0 = 0; j0 < n; ++j0)
            for (int j1 = 0; j1 < n; ++j1)
                for (int j2 = 0; j2 < n; ++j2) {
                    const std::size_t j = static_cast<std::size_t>((j0 * n + j1) * n + j2);
                    const int v = t.diff_axis[0][static_cast<std::size_t>(j0)] +
                                  t.diff_axis[1][static_cast<std::size_t>(j1)] +
                                  t.diff_axis[2][static_cast<std::size_t>(j2)] -
                                  t.diff_full[j];
                    s[j] = wd * v;
                }
    }
    return s;
}

NonlocalParts nonlocal_parts(const GridSetND& grid, const LatticeTables& t,
                             const ModelParams& kernel_pm, double tol) {
    const int d = t.dim;
    const double w = grid.cell_width();
    const double volume = std::pow(grid.period(), d);
    NonlocalParts parts;
    const double tolG = tol * volume / (8.0 * d);
    for (int a = 0; a < d; ++a) {
        const auto piece = directional_piece(t, a, kernel_pm, w, volume, tolG, false);
        parts.g[static_cast<std::size_t>(a)] = piece.g;
        parts.g_err += piece.g_err;
    }
    const auto samples = coupling_samples(t, w);
    const auto table = tent_table(kernel_pm, t.n, w, 0.5 * tol);
    const auto ci = integrate_samples(samples, *table);
    parts.cross = ci.value / volume;
    parts.cross_err = ci.err / volume;
    return parts;
}

EnergyReport assemble(const GridSetND& grid, const ModelParams& kernel_pm, double perimeter_term,
                      double tol) {
    EnergyReport rep;
    const int d = grid.dim();
    rep.per_direction.assign(static_cast<std::size_t>(d), 0.0);
    rep.below_resolution = kernel_pm.tau < std::pow(grid.cell_width(), kernel_pm.beta);
    rep.perimeter_term = perimeter_term;
    if (grid.perimeter_l1() == 0.0) {
        rep.total = perimeter_term; // uniform set: no interfaces, no nonlocal content
        return rep;
    }
    const auto tables = build_tables(grid);
    const auto parts = nonlocal_parts(grid, tables, kernel_pm, tol);
    double nonlocal = 0.0;
    for (int a = 0; a < d; ++a) {
        rep.per_direction[static_cast<std::size_t>(a)] = parts.g[static_cast<std::size_t>(a)];
        nonlocal += parts.g[static_cast<std::size_t>(a)];
    }
    rep.cross_term = parts.cross;
    nonlocal += parts.cross;
    rep.nonlocal_term = nonlocal;
    rep.total = perimeter_term + nonlocal;
    rep.err_estimate = parts.g_err + parts.cross_err;
    if (rep.err_estimate > tol)
        throw QuadratureError("grid energy: error estimate above tolerance", rep.total,
                              rep.err_estimate, tol);
    return rep;
}

void check_grid_params(const GridSetND& grid, const ModelParams& pm, double tol) {
    if (pm.dim != grid.dim())
        throw std::invalid_argument("grid energy: params dimension must match the grid");
    if (!(tol > 0.0)) throw std::invalid_argument("grid energy: tol must be positive");
}

} // namespace

EnergyReport ftilde(const GridSetND& grid, const ModelParams& pm, double tol) {
    check_grid_params(grid, pm, tol);
    const ModelParams kernel_pm = pm.with_tau(1.0);
    const double volume = std::pow(grid.period(), grid.dim());
    // Absorbing the exact first moment of the unit-smoothing kernel turns the
    // surface coupling J into the effective coefficient J - jc; the remaining
    // nonlocal content is the nonnegative bracket decomposition.
    const double jc = critical_coupling(kernel_pm);
    const double per1 = grid.perimeter_l1();
    return assemble(grid, kernel_pm, (pm.J - jc) * per1 / volume, tol);
}

EnergyReport f_tau(const GridSetND& grid, const ModelParams& pm, double tol) {
    check_grid_params(grid, pm, tol);
    if (!(pm.tau > 0.0))
        throw std::domain_error("f_tau: requires tau > 0 (the sharp-kernel bracket integral "
                                "diverges in d dimensions)");
    const double volume = std::pow(grid.period(), grid.dim());
    return assemble(grid, pm, -grid.perimeter_l1() / volume, tol);
}

double cross_interaction(const GridSetND& grid, const ModelParams& pm, double tol) {
    check_grid_params(grid, pm, tol);
    if (!(pm.tau > 0.0)) throw std::domain_error("cross_interaction: requires tau > 0");
    if (grid.perimeter_l1() == 0.0) return 0.0;
    const auto t = build_tables(grid);
    auto xs = x_sum_counts(t);
    const int d = grid.dim();
    const double scale = (2.0 / d) * std::pow(grid.cell_width(), d);
    for (auto& v : xs) v *= scale;
    const auto table = tent_table(pm, t.n, grid.cell_width(), 0.5 * tol);
    return integrate_samples(xs, *table).value / std::pow(grid.period(), d);
}

double splitting_margin(const GridSetND& grid, const ModelParams& pm, double tol) {
    check_grid_params(grid, pm, tol);
    if (!(pm.tau > 0.0)) throw std::domain_error("splitting_margin: requires tau > 0");
    if (grid.perimeter_l1() == 0.0) return 0.0;
    const auto t = build_tables(grid);
    const auto xs = x_sum_counts(t);
    auto samples = coupling_samples(t, grid.cell_width());
    const int d = grid.dim();
    const double scale = (2.0 / d) * std::pow(grid.cell_width(), d);
    for (std::size_t j = 0; j < samples.size(); ++j) samples[j] -= scale * xs[j];
    const auto table = tent_table(pm, t.n, grid.cell_width(), 0.5 * tol);
    return integrate_samples(samples, *table).value / std::pow(grid.period(), d);
}

std::vector<double> directional_bound_margins(const GridSetND& grid, const ModelParams& pm,
                                              double tol) {
    check_grid_params(grid, pm, tol);
    if (!(pm.tau > 0.0)) throw std::domain_error("directional_bound_margins: requires tau > 0");
    const int d = grid.dim();
    const int n = grid.n();
    const double w = grid.cell_width();
    const double volume = std::pow(grid.period(), d);
    std::vector<double> out(static_cast<std::size_t>(d), 0.0);
    if (grid.perimeter_l1() == 0.0) return out;
    const auto t = build_tables(grid);

    // T(a) = integral Khat_tau(z) min(|z|, a) dz over z > 0, for a = k w.  The
    // tail above Z uses the sharp power-law majorant, which can only enlarge
    // the upper-bound side of the inequality.
    const double q = pm.q;
    const double cq = marginal_kernel_constant(pm);
    const double Z = std::max(4.0 * grid.period(), 16.0);
    std::vector<double> half_moment(static_cast<std::size_t>(n) + 1, 0.0);
    QuadratureOptions qo;
    qo.rel_tol = 1e-8;
    qo.max_intervals = 8000;
    for (int k = 1; k <= n; ++k) {
        const double a = k * w;
        const auto head = integrate_adaptive(
            [&](double z) { return marginal_kernel(z, pm, 1e-10) * z; }, 0.0, a, qo);
        const auto body =
            integrate_adaptive([&](double z) { return marginal_kernel(z, pm, 1e-10); }, a, Z, qo);
        half_moment[static_cast<std::size_t>(k)] =
            head.value + a * (body.value + cq * std::pow(Z, 1.0 - q) / (q - 1.0));
    }

    const double tolG = tol * volume / 8.0;
    std::vector<int> tr(static_cast<std::size_t>(d) - 1, 0);
    const std::size_t lines = cells_total(n, d - 1);
    for (int axis = 0; axis < d; ++axis) {
        if (t.diff_axis[static_cast<std::size_t>(axis)][1] == 0) continue;
        const auto piece = directional_piece(t, axis, pm, w, volume, tolG, true);
        double rhs = 0.0;
        for (std::size_t flat = 0; flat < lines; ++flat) {
            std::size_t rem = flat;
            for (int k = d - 2; k >= 0; --k) {
                tr[static_cast<std::size_t>(k)] =
                    static_cast<int>(rem % static_cast<std::size_t>(n));
                rem /= static_cast<std::size_t>(n);
            }
            const auto line = grid.slice(axis, tr);
            if (line.is_empty() || line.is_full()) continue;
            for (const auto& bp : line.boundary()) {
                const int kw = static_cast<int>(std::llround(bp.width / w));
                const int kg = static_cast<int>(std::llround(bp.gap / w));
                rhs += half_moment[static_cast<std::size_t>(std::clamp(kw, 1, n))] +
                       half_moment[static_cast<std::size_t>(std::clamp(kg, 1, n))];
            }
        }
        rhs *= std::pow(w, d - 1);
        out[static_cast<std::size_t>(axis)] = (rhs - piece.line_integral) / volume;
    }
    return out;
}

ScalingTransform scaling_transform(const ModelParams& pm, ScalingDirection direction) {
    const double jc = critical_coupling(pm);
    ScalingTransform tr;
    if (direction == ScalingDirection::forward) {
        const double tau = jc - pm.J;
        if (!(tau > 0.0))
            throw std::domain_error("scaling_transform: forward direction requires J below the "
                                    "critical coupling");
        tr.coupling = tau;
        tr.period = std::pow(tau, 1.0 / pm.beta) * pm.L;
        tr.energy_factor = std::pow(tau, (pm.p - pm.dim) / pm.beta);
    } else {
        if (!(pm.tau > 0.0))
            throw std::domain_error("scaling_transform: inverse direction requires tau > 0");
        tr.coupling = jc - pm.tau;
        tr.period = std::pow(pm.tau, -1.0 / pm.beta) * pm.L;
        tr.energy_factor = std::pow(pm.tau, -(pm.p - pm.dim) / pm.beta);
    }
    return tr;
}

GridSetND rescale_grid(const GridSetND& grid, double new_period) {
    return GridSetND(grid.dim(), grid.n(), new_period, grid.mask());
}

} // namespace stripes
