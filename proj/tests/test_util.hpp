#pragma once

#include "symdet/groebner.hpp"
#include "symdet/poly.hpp"
#include "symdet/rng.hpp"

namespace symdet::testutil {

inline Poly random_poly(SplitMix64& rng, const RingPtr& ring, int max_var_exp, int nterms) {
    Poly p(ring);
    for (int t = 0; t < nterms; ++t) {
        Monomial m(ring->nvars(), 0);
        for (std::size_t v = 0; v < ring->nvars(); ++v)
            m[v] = static_cast<int>(rng.below(max_var_exp + 1));
        p.add_term(m, rng.small_rational());
    }
    return p;
}

// Random form of exact weighted degree d (may be zero if every coefficient
// draw lands on zero; callers that need nonzero should retry).
inline Poly random_form(SplitMix64& rng, const RingPtr& ring, long degree) {
    Poly p(ring);
    for (const auto& m : monomials_of_degree(ring, degree)) p.add_term(m, rng.small_rational());
    return p;
}

}  // namespace symdet::testutil
