#include "stripes/grid_set.hpp"

#include <cmath>
#include <stdexcept>

namespace stripes {

GridSetND::GridSetND(int dim, int n, double L, std::vector<std::uint8_t> mask)
    : dim_(dim), n_(n), L_(L), mask_(std::move(mask)) {
    if (dim < 1) throw std::invalid_argument("grid dimension must be >= 1");
    if (n < 1) throw std::invalid_argument("grid resolution must be >= 1");
    if (!(L > 0) || !std::isfinite(L)) throw std::invalid_argument("period must be positive and finite");
    std::size_t expect = 1;
    for (int k = 0; k < dim; ++k) expect *= static_cast<std::size_t>(n);
    if (mask_.size() != expect) throw std::invalid_argument("mask size must be n^dim");
}

GridSetND GridSetND::filled(int dim, int n, double L, bool value) {
    std::size_t count = 1;
    for (int k = 0; k < dim; ++k) count *= static_cast<std::size_t>(n);
    return GridSetND(dim, n, L, std::vector<std::uint8_t>(count, value ? 1 : 0));
}

std::size_t GridSetND::flat_index(std::span<const int> idx) const {
    if (static_cast<int>(idx.size()) != dim_) throw std::invalid_argument("index arity mismatch");
    std::size_t flat = 0;
    for (int k = 0; k < dim_; ++k) {
        int i = idx[k] % n_;
        if (i < 0) i += n_;
        flat = flat * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i);
    }
    return flat;
}

double GridSetND::volume() const {
    std::size_t occupied = 0;
    for (auto c : mask_) occupied += c;
    double w = cell_width();
    return static_cast<double>(occupied) * std::pow(w, dim_);
}

PeriodicSet1D GridSetND::slice(int axis, std::span<const int> transverse) const {
    if (axis < 0 || axis >= dim_) throw std::invalid_argument("axis out of range");
    if (static_cast<int>(transverse.size()) != dim_ - 1)
        throw std::invalid_argument("need dim-1 transverse indices");
    std::vector<int> idx(static_cast<std::size_t>(dim_));
    for (int k = 0, t = 0; k < dim_; ++k)
        if (k != axis) idx[static_cast<std::size_t>(k)] = transverse[static_cast<std::size_t>(t++)];
    const double w = cell_width();
    std::vector<std::pair<double, double>> cells;
    for (int i = 0; i < n_; ++i) {
        idx[static_cast<std::size_t>(axis)] = i;
        if (at_flat(flat_index(idx))) cells.emplace_back(i * w, (i + 1) * w);
    }
    if (static_cast<int>(cells.size()) == n_) return PeriodicSet1D::full(L_);
    return PeriodicSet1D(L_, cells);
}

double GridSetND::directional_perimeter(int axis) const {
    if (axis < 0 || axis >= dim_) throw std::invalid_argument("axis out of range");
    std::size_t changes = 0;
    std::vector<int> idx(static_cast<std::size_t>(dim_), 0);
    const auto total = cell_count();
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (int k = dim_ - 1; k >= 0; --k) {
            idx[static_cast<std::size_t>(k)] = static_cast<int>(rem % static_cast<std::size_t>(n_));
            rem /= static_cast<std::size_t>(n_);
        }
        bool here = at_flat(flat);
        idx[static_cast<std::size_t>(axis)] += 1;
        bool next = at_flat(flat_index(idx));
        idx[static_cast<std::size_t>(axis)] -= 1;
        if (here != next) ++changes;
    }
    return static_cast<double>(changes) * std::pow(cell_width(), dim_ - 1);
}

double GridSetND::perimeter_l1() const {
    double s = 0;
    for (int a = 0; a < dim_; ++a) s += directional_perimeter(a);
    return s;
}

void to_json(nlohmann::ordered_json& j, const GridSetND& set) {
    j = nlohmann::ordered_json::object();
    j["d"] = set.dim();
    j["L"] = set.period();
    j["n"] = set.n();
    auto cells = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < set.cell_count(); ++i) cells.push_back(set.at_flat(i) ? 1 : 0);
    j["mask"] = std::move(cells);
}

GridSetND grid_from_json(const nlohmann::json& j) {
    int dim = j.at("d").get<int>();
    double L = j.at("L").get<double>();
    int n = j.at("n").get<int>();
    std::vector<std::uint8_t> mask;
    for (const auto& c : j.at("mask")) mask.push_back(c.get<int>() != 0 ? 1 : 0);
    return GridSetND(dim, n, L, std::move(mask));
}

} // namespace stripes
