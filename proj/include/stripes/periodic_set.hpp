#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace stripes {

// Commensurability failure for stripe construction; carries the two nearest
// admissible half-periods so callers can snap.
class IncommensurateError : public std::invalid_argument {
public:
    IncommensurateError(const std::string& what, double narrower, double wider)
        : std::invalid_argument(what), nearest_narrower_(narrower), nearest_wider_(wider) {}
    double nearest_narrower() const { return nearest_narrower_; } // more, thinner stripes
    double nearest_wider() const { return nearest_wider_; }       // fewer, wider (+inf if none)

private:
    double nearest_narrower_, nearest_wider_;
};

// A boundary point of a periodic set, with the lengths of the two features
// it separates.  `is_left` means the set lies to the right of x (an entry
// point scanning rightward).  `width` is the adjacent occupied arc's length,
// `gap` the adjacent empty arc's length: for a left endpoint the gap sits to
// the left of x, for a right endpoint to the right.
struct BoundaryPoint {
    double x;
    bool is_left;
    double width;
    double gap;
};

// An L-periodic subset of the line, stored per period as sorted boundary
// points plus the membership parity just before 0.  This representation is
// closed under wrap-around (an arc crossing the period seam is a single arc
// with a single pair of boundary points), which plain (s, t) interval lists
// cannot express; grid slices need it.
class PeriodicSet1D {
public:
    static PeriodicSet1D empty(double L);
    static PeriodicSet1D full(double L);

    // Build from a union of intervals (s, t), s < t <= s + L, positions taken
    // mod L.  Overlapping or exactly touching intervals merge, including
    // across the period seam.
    PeriodicSet1D(double L, const std::vector<std::pair<double, double>>& intervals);

    double period() const { return L_; }
    double measure() const;                         // |E| per period
    int arc_count() const;                          // number of maximal arcs N
    int perimeter_count() const { return static_cast<int>(bounds_.size()); } // = 2N
    bool is_empty() const { return bounds_.empty() && !inside_before_zero_; }
    bool is_full() const { return bounds_.empty() && inside_before_zero_; }
    bool contains(double x) const;                  // right-continuous convention

    // Maximal arcs (start, end) sorted by start, start in [0, L); at most the
    // last arc extends past L (wrap across the seam).
    std::vector<std::pair<double, double>> arcs() const;
    // Arcs clipped to [0, L] (a wrapping arc appears as two pieces).
    std::vector<std::pair<double, double>> split_intervals() const;

    std::vector<BoundaryPoint> boundary() const;
    // Identify x (mod L, within 1e-9 * max(1, L)) as a boundary point.
    // Throws std::invalid_argument when x is not one.
    BoundaryPoint boundary_at(double x) const;
    // Smallest adjacent-feature length over all boundary points:
    // min over boundary of min(width, gap).  Zero only for empty/full sets.
    double min_feature() const;

    PeriodicSet1D translated(double shift) const;
    PeriodicSet1D complement() const;

    friend bool operator==(const PeriodicSet1D&, const PeriodicSet1D&) = default;

private:
    PeriodicSet1D(double L, std::vector<double> bounds, bool inside_before_zero)
        : L_(L), bounds_(std::move(bounds)), inside_before_zero_(inside_before_zero) {}

    double L_ = 1.0;
    std::vector<double> bounds_;       // sorted, distinct, in [0, L)
    bool inside_before_zero_ = false;  // membership just below the seam
};

// Periodic stripe pattern: arcs [2kh, (2k+1)h) for k = 0..N-1 with N = L/(2h).
// L/(2h) must be a positive integer within 1e-9 relative, else throws
// IncommensurateError carrying the two nearest admissible half-periods.
PeriodicSet1D make_stripes(double h, double L);
// Canonical single-stripe cell, L = 2h.
PeriodicSet1D make_stripes(double h);

double intersection_measure(const PeriodicSet1D& a, const PeriodicSet1D& b);
// |a symmetric-difference b| per period; periods must agree to 1e-12 relative.
double sym_diff_measure(const PeriodicSet1D& a, const PeriodicSet1D& b);

// Local overlap cap at a boundary point x of the set:
//   min(z_+, length of the feature left of x) + min(z_-, length right of x),
// where z_+ = max(z, 0), z_- = max(-z, 0).  For a right endpoint the left
// feature is the arc (width) and the right one the gap; mirrored for a left
// endpoint.  x must identify a boundary point.
double overlap_cap(const PeriodicSet1D& set, double x, double z);

// Continuous periodic piecewise-linear function on [0, L], evaluated
// periodically on all of R.
struct PiecewiseLinearProfile {
    std::vector<double> z; // breakpoints, z.front() == 0, z.back() == period
    std::vector<double> v; // values at breakpoints
    double period = 1.0;

    double operator()(double x) const;
    double mean() const; // period average (exact for piecewise-linear data)
    double max_value() const;
    double min_value() const;
};

// The period-cell difference profile
//   w(z) = integral over one period of |chi_E(x) - chi_E(x + z)| dx
//        = 2 (|E| - |E intersect (E - z)|),
// exact: breakpoints are the pairwise differences of boundary points mod L.
PiecewiseLinearProfile difference_profile(const PeriodicSet1D& set);

void to_json(nlohmann::ordered_json& j, const PeriodicSet1D& set);
PeriodicSet1D set_from_json(const nlohmann::json& j);

} // namespace stripes
