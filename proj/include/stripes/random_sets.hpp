#pragma once

#include "stripes/grid_set.hpp"
#include "stripes/periodic_set.hpp"

#include <cstdint>

namespace stripes {

// Deterministic 64-bit generator (splitmix64).  The verification corpora are
// defined by this exact stream so that any implementation reproduces them:
//   state += 0x9e3779b97f4a7c15
//   z = state; z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9;
//   z = (z ^ (z >> 27)) * 0x94d049bb133111eb;  return z ^ (z >> 31)
// uniform01 = (next() >> 11) * 2^-53.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    double uniform01();            // in [0, 1)
    int uniform_int(int lo, int hi); // inclusive ends
    SplitMix64 split();            // independent child stream

  private:
    std::uint64_t state_;
};

// Random periodic set: N ~ uniform{1..8} arcs from 2N sorted uniforms on
// [0, L), resampled until every arc and gap is at least delta_min
// (default L/100).  Keeps all feature scales bounded away from zero so the
// quadratures stay well-conditioned.
PeriodicSet1D random_set(SplitMix64& rng, double L, double delta_min = -1.0);

// Random pixel grid with independent cell fill probability.
GridSetND random_grid(SplitMix64& rng, int dim, int n, double L, double fill = 0.5);

} // namespace stripes
