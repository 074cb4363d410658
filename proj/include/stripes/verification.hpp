#pragma once

#include "stripes/params.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace stripes {

// Outcome of one statistical verification suite.  Every trial produces a
// margin that the underlying inequality proves nonnegative up to numerics;
// a trial fails when its margin drops below -tolerance.
struct SuiteResult {
    std::string suite;
    int trials = 0;
    int violations = 0;
    double worst_margin = 0.0; // minimum margin over all trials
    double tolerance = 0.0;    // pass requires margin >= -tolerance
    double wall_ms = 0.0;
    bool passed() const { return violations == 0; }
};

// Names accepted by run_suite, in canonical order:
//   eta        difference profile vs. sum of boundary overlap caps
//   chessboard f0 vs. the boundary stripe-scoring lower bound
//   rp         reflection-positivity margin of random two-sided configs
//   laplace    exponential-rate resynthesis of f0 (margin = 1e-5 - residual)
//   nonneg     grid energy at critical coupling >= -certified error
//   splitting  grid coupling remainder vs. its paired-change lower bound
//   slicing    per-axis nonlocal term vs. the line-by-line overlap cap bound
std::vector<std::string> suite_names();

// Runs `trials` seeded random trials of the named suite.  The corpus is
// fully determined by (suite, trials, seed): inputs are drawn sequentially
// from a splitmix64 stream, then evaluated (possibly in parallel, results
// gathered by trial index).  `base` supplies dim and p for the 1D suites and
// must be (dim 2) for the grid suites; tol_override < 0 keeps the per-suite
// default tolerance.  Throws std::invalid_argument for unknown suite names.
SuiteResult run_suite(const std::string& suite, int trials, std::uint64_t seed,
                      const ModelParams& base = ModelParams(2, 5.0),
                      double tol_override = -1.0, int threads = 0);

} // namespace stripes
