#pragma once

#include <cstddef>
#include <vector>

namespace stripes {

// Itemized outcome of an energy evaluation.  The decomposition satisfies
//   total == perimeter_term + sum(per_direction) + cross_term
// up to err_estimate, and the combined nonlocal part is always >= 0.
struct EnergyReport {
    double total = 0.0;
    double perimeter_term = 0.0;
    double nonlocal_term = 0.0;            // sum(per_direction) + cross_term
    std::vector<double> per_direction;     // directional nonlocal terms, one per axis
    double cross_term = 0.0;               // inter-axis coupling term (0 in 1D)
    double err_estimate = 0.0;             // rigorous bound on numerical error
    bool below_resolution = false;         // set when the kernel floor is finer
                                           // than the grid can resolve
};

}  // namespace stripes
