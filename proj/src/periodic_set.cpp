#include "stripes/periodic_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace stripes {

namespace {

double wrap_position(double x, double L) {
    double y = std::fmod(x, L);
    if (y < 0) y += L;
    if (y == L) y = 0; // fmod can return L for tiny negative x
    return y;
}

void require_period(double L) {
    if (!(L > 0) || !std::isfinite(L))
        throw std::invalid_argument("period must be positive and finite");
}

} // namespace

PeriodicSet1D PeriodicSet1D::empty(double L) {
    require_period(L);
    return PeriodicSet1D(L, {}, false);
}

PeriodicSet1D PeriodicSet1D::full(double L) {
    require_period(L);
    return PeriodicSet1D(L, {}, true);
}

PeriodicSet1D::PeriodicSet1D(double L, const std::vector<std::pair<double, double>>& intervals)
    : L_(L) {
    require_period(L);

    // Clip every interval into segments within [0, L], splitting at the seam.
    std::vector<std::pair<double, double>> segs;
    for (auto [s, t] : intervals) {
        if (!std::isfinite(s) || !std::isfinite(t) || !(t > s))
            throw std::invalid_argument("interval endpoints must be finite with s < t");
        double len = t - s;
        if (len >= L_) { // covers the whole period
            segs.clear();
            segs.emplace_back(0.0, L_);
            break;
        }
        double a = wrap_position(s, L_);
        double b = a + len;
        if (b <= L_) {
            segs.emplace_back(a, b);
        } else {
            segs.emplace_back(a, L_);
            segs.emplace_back(0.0, b - L_);
        }
    }

    std::sort(segs.begin(), segs.end());
    std::vector<std::pair<double, double>> merged;
    for (auto [a, b] : segs) {
        if (!(b > a)) continue;
        if (!merged.empty() && a <= merged.back().second)
            merged.back().second = std::max(merged.back().second, b);
        else
            merged.emplace_back(a, b);
    }

    if (merged.empty()) { inside_before_zero_ = false; return; }
    if (merged.size() == 1 && merged.front().first == 0.0 && merged.front().second == L_) {
        inside_before_zero_ = true; // full
        return;
    }

    bool wrap = merged.front().first == 0.0 && merged.back().second == L_;
    inside_before_zero_ = merged.back().second == L_;
    for (std::size_t i = 0; i < merged.size(); ++i) {
        if (!(i == 0 && wrap)) bounds_.push_back(merged[i].first);
        if (!(i + 1 == merged.size() && wrap))
            bounds_.push_back(merged[i].second == L_ ? 0.0 : merged[i].second);
    }
    std::sort(bounds_.begin(), bounds_.end());
}

bool PeriodicSet1D::contains(double x) const {
    double y = wrap_position(x, L_);
    auto it = std::upper_bound(bounds_.begin(), bounds_.end(), y);
    auto crossings = static_cast<std::size_t>(it - bounds_.begin());
    return inside_before_zero_ != (crossings % 2 == 1);
}

std::vector<std::pair<double, double>> PeriodicSet1D::arcs() const {
    std::vector<std::pair<double, double>> out;
    if (bounds_.empty()) {
        if (inside_before_zero_) out.emplace_back(0.0, L_);
        return out;
    }
    const auto n = bounds_.size();
    if (!inside_before_zero_) {
        for (std::size_t i = 0; i + 1 < n; i += 2) out.emplace_back(bounds_[i], bounds_[i + 1]);
    } else {
        for (std::size_t i = 1; i + 1 < n; i += 2) out.emplace_back(bounds_[i], bounds_[i + 1]);
        out.emplace_back(bounds_[n - 1], bounds_[0] + L_);
    }
    return out;
}

std::vector<std::pair<double, double>> PeriodicSet1D::split_intervals() const {
    std::vector<std::pair<double, double>> out;
    for (auto [a, b] : arcs()) {
        if (b <= L_) {
            out.emplace_back(a, b);
        } else {
            out.emplace_back(0.0, b - L_);
            out.emplace_back(a, L_);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

double PeriodicSet1D::measure() const {
    double m = 0;
    for (auto [a, b] : arcs()) m += b - a;
    return m;
}

int PeriodicSet1D::arc_count() const { return static_cast<int>(arcs().size()); }

std::vector<BoundaryPoint> PeriodicSet1D::boundary() const {
    std::vector<BoundaryPoint> out;
    auto a = arcs();
    const auto n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        double width = a[i].second - a[i].first;
        double gap_after = (i + 1 < n ? a[i + 1].first : a[0].first + L_) - a[i].second;
        double gap_before = a[i].first - (i > 0 ? a[i - 1].second : a[n - 1].second - L_);
        out.push_back({wrap_position(a[i].first, L_), true, width, gap_before});
        out.push_back({wrap_position(a[i].second, L_), false, width, gap_after});
    }
    return out;
}

BoundaryPoint PeriodicSet1D::boundary_at(double x) const {
    double y = wrap_position(x, L_);
    double tol = 1e-9 * std::max(1.0, L_);
    for (const auto& bp : boundary()) {
        double d = std::abs(bp.x - y);
        d = std::min(d, L_ - d);
        if (d <= tol) return bp;
    }
    std::ostringstream msg;
    msg << "x = " << x << " is not a boundary point of the set";
    throw std::invalid_argument(msg.str());
}

double PeriodicSet1D::min_feature() const {
    double m = 0;
    bool first = true;
    for (const auto& bp : boundary()) {
        double f = std::min(bp.width, bp.gap);
        m = first ? f : std::min(m, f);
        first = false;
    }
    return m;
}

PeriodicSet1D PeriodicSet1D::translated(double shift) const {
    if (bounds_.empty()) return *this;
    std::vector<std::pair<double, double>> moved;
    for (auto [a, b] : arcs()) moved.emplace_back(a + shift, b + shift);
    return PeriodicSet1D(L_, moved);
}

PeriodicSet1D PeriodicSet1D::complement() const {
    return PeriodicSet1D(L_, bounds_, !inside_before_zero_);
}

PeriodicSet1D make_stripes(double h, double L) {
    if (!(h > 0) || !std::isfinite(h)) throw std::invalid_argument("stripe half-period must be positive");
    require_period(L);
    double ratio = L / (2 * h);
    double rounded = std::round(ratio);
    if (rounded < 1 || std::abs(ratio - rounded) > 1e-9 * ratio) {
        double narrower = L / (2 * std::max(1.0, std::ceil(ratio)));
        double wider = std::floor(ratio) >= 1 ? L / (2 * std::floor(ratio))
                                              : std::numeric_limits<double>::infinity();
        std::ostringstream msg;
        msg << "L/(2h) = " << ratio << " is not a positive integer; nearest commensurate "
            << "half-periods are " << narrower << " and " << wider;
        throw IncommensurateError(msg.str(), narrower, wider);
    }
    auto n = static_cast<int>(rounded);
    double snapped = L / (2.0 * n); // exact commensurability for construction
    std::vector<std::pair<double, double>> intervals;
    intervals.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) intervals.emplace_back(2 * k * snapped, (2 * k + 1) * snapped);
    return PeriodicSet1D(L, intervals);
}

PeriodicSet1D make_stripes(double h) { return make_stripes(h, 2 * h); }

double intersection_measure(const PeriodicSet1D& a, const PeriodicSet1D& b) {
    if (std::abs(a.period() - b.period()) > 1e-12 * std::max({a.period(), b.period(), 1.0}))
        throw std::invalid_argument("periods differ");
    auto ia = a.split_intervals();
    auto ib = b.split_intervals();
    double m = 0;
    std::size_t i = 0, j = 0;
    while (i < ia.size() && j < ib.size()) {
        double lo = std::max(ia[i].first, ib[j].first);
        double hi = std::min(ia[i].second, ib[j].second);
        if (hi > lo) m += hi - lo;
        if (ia[i].second < ib[j].second) ++i; else ++j;
    }
    return m;
}

double sym_diff_measure(const PeriodicSet1D& a, const PeriodicSet1D& b) {
    return a.measure() + b.measure() - 2 * intersection_measure(a, b);
}

double overlap_cap(const PeriodicSet1D& set, double x, double z) {
    BoundaryPoint bp = set.boundary_at(x);
    double zp = std::max(z, 0.0), zm = std::max(-z, 0.0);
    double left = bp.is_left ? bp.gap : bp.width;  // feature to the left of x
    double right = bp.is_left ? bp.width : bp.gap; // feature to the right of x
    return std::min(zp, left) + std::min(zm, right);
}

double PiecewiseLinearProfile::operator()(double x) const {
    double y = wrap_position(x, period);
    auto it = std::upper_bound(z.begin(), z.end(), y);
    if (it == z.begin()) return v.front();
    auto k = static_cast<std::size_t>(it - z.begin()) - 1;
    if (k + 1 >= z.size()) return v.back();
    double t = (y - z[k]) / (z[k + 1] - z[k]);
    return v[k] + t * (v[k + 1] - v[k]);
}

double PiecewiseLinearProfile::mean() const {
    double s = 0;
    for (std::size_t k = 0; k + 1 < z.size(); ++k)
        s += (z[k + 1] - z[k]) * (v[k] + v[k + 1]) / 2;
    return s / period;
}

double PiecewiseLinearProfile::max_value() const { return *std::max_element(v.begin(), v.end()); }
double PiecewiseLinearProfile::min_value() const { return *std::min_element(v.begin(), v.end()); }

PiecewiseLinearProfile difference_profile(const PeriodicSet1D& set) {
    const double L = set.period();
    PiecewiseLinearProfile prof;
    prof.period = L;
    if (set.is_empty() || set.is_full()) {
        prof.z = {0.0, L};
        prof.v = {0.0, 0.0};
        return prof;
    }
    // The overlap z -> |E intersect (E - z)| is affine between consecutive
    // pairwise differences of boundary points, so sampling exactly there makes
    // the linear interpolant exact.
    std::vector<double> xs;
    for (const auto& bp : set.boundary()) xs.push_back(bp.x);
    std::vector<double> brk{0.0, L};
    for (double xi : xs)
        for (double xj : xs) brk.push_back(wrap_position(xi - xj, L));
    std::sort(brk.begin(), brk.end());
    brk.erase(std::unique(brk.begin(), brk.end()), brk.end());

    const double m = set.measure();
    prof.z = brk;
    prof.v.reserve(brk.size());
    for (double zz : brk)
        prof.v.push_back(2 * (m - intersection_measure(set, set.translated(-zz))));
    prof.v.back() = prof.v.front(); // breakpoints 0 and L are the same position
    return prof;
}

void to_json(nlohmann::ordered_json& j, const PeriodicSet1D& set) {
    j = nlohmann::ordered_json::object();
    j["L"] = set.period();
    auto ivals = nlohmann::ordered_json::array();
    for (auto [a, b] : set.split_intervals()) ivals.push_back({a, b});
    j["intervals"] = std::move(ivals);
    j["fill"] = set.is_full();
}

PeriodicSet1D set_from_json(const nlohmann::json& j) {
    double L = j.at("L").get<double>();
    std::vector<std::pair<double, double>> intervals;
    for (const auto& iv : j.at("intervals")) {
        if (!iv.is_array() || iv.size() != 2)
            throw std::invalid_argument("each interval must be a [start, end] pair");
        intervals.emplace_back(iv[0].get<double>(), iv[1].get<double>());
    }
    if (intervals.empty())
        return j.value("fill", false) ? PeriodicSet1D::full(L) : PeriodicSet1D::empty(L);
    return PeriodicSet1D(L, intervals);
}

} // namespace stripes
