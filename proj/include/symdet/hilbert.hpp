#pragma once

#include <vector>

#include "symdet/groebner.hpp"

namespace symdet {

// Dimensions h_0..h_N of the graded pieces of ring/ideal, computed from the
// initial ideal of a Groebner basis by direct monomial enumeration.
// Throws InhomogeneousInput for inhomogeneous generators.
std::vector<long long> hilbert_prefix(const RingPtr& ring, const std::vector<Poly>& generators,
                                      int N);
std::vector<long long> hilbert_prefix(const GroebnerBasis& basis, int N);

// Independent oracle: truncated expansion of
//   prod (1 - t^e) / prod (1 - t^w)
// as an integer power series, the closed form of a complete intersection
// with equation degrees e over an ambient with variable weights w.
std::vector<long long> series_expand(const std::vector<int>& numerator_degrees,
                                     const std::vector<int>& denominator_weights, int N);

}  // namespace symdet
