#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "stripes/periodic_set.hpp"

namespace stripes {

// A [0, L]^d-periodic union of grid cells on a uniform n^d lattice.  Cell
// (i_0, ..., i_{d-1}) occupies the product of [i_k w, (i_k+1) w) with
// w = L / n; storage is row-major with axis 0 slowest.
class GridSetND {
public:
    GridSetND(int dim, int n, double L, std::vector<std::uint8_t> mask);
    static GridSetND filled(int dim, int n, double L, bool value);

    int dim() const { return dim_; }
    int n() const { return n_; }
    double period() const { return L_; }
    double cell_width() const { return L_ / n_; }
    std::size_t cell_count() const { return mask_.size(); }

    bool at_flat(std::size_t idx) const { return mask_[idx] != 0; }
    bool at(std::span<const int> idx) const { return mask_[flat_index(idx)] != 0; }
    void set(std::span<const int> idx, bool value) { mask_[flat_index(idx)] = value ? 1 : 0; }
    const std::vector<std::uint8_t>& mask() const { return mask_; }

    double volume() const; // occupied measure per period cell

    // The 1D periodic set cut by the axis-parallel line through the cells with
    // the given transverse indices (d-1 of them, axes in increasing order
    // skipping `axis`).
    PeriodicSet1D slice(int axis, std::span<const int> transverse) const;

    // Interface area per period cell orthogonal to the axis: w^{d-1} times the
    // number of occupied/empty sign changes along that axis.
    double directional_perimeter(int axis) const;
    double perimeter_l1() const; // sum over axes

    std::size_t flat_index(std::span<const int> idx) const; // cyclic in each axis

    friend bool operator==(const GridSetND&, const GridSetND&) = default;

private:
    int dim_, n_;
    double L_;
    std::vector<std::uint8_t> mask_;
};

void to_json(nlohmann::ordered_json& j, const GridSetND& set);
GridSetND grid_from_json(const nlohmann::json& j);

} // namespace stripes
