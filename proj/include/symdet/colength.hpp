#pragma once

#include <optional>
#include <vector>

#include "symdet/groebner.hpp"

namespace symdet {

// Degree of the zero-dimensional projective scheme cut out by homogeneous
// generators, or nullopt when some component has positive dimension.
//
// Computed chart by chart in the ring's variable order: chart i sets
// variable i to 1 and adjoins variables 0..i-1 to the ideal, so each
// projective point is counted exactly once, in the chart of its first
// nonvanishing coordinate.
struct ColengthResult {
    std::optional<long long> value;          // nullopt: positive-dimensional
    std::vector<long long> chart_counts;     // -1 marks an infinite chart
};

ColengthResult colength_projective(const RingPtr& ring, const std::vector<Poly>& generators);

// Vector-space dimension of ring/ideal for an affine (possibly
// inhomogeneous) ideal; nullopt when infinite-dimensional.
std::optional<long long> colength_affine(const RingPtr& ring, const std::vector<Poly>& generators);

}  // namespace symdet
