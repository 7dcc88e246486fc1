#include "symdet/hilbert.hpp"

#include "symdet/errors.hpp"

namespace symdet {

std::vector<long long> hilbert_prefix(const GroebnerBasis& basis, int N) {
    std::vector<Monomial> lead;
    bool contains_unit = false;
    for (const auto& g : basis.gens) {
        lead.push_back(g.leading_monomial());
        if (basis.ring->weighted_degree(g.leading_monomial()) == 0) contains_unit = true;
    }
    std::vector<long long> h(N + 1, 0);
    if (contains_unit) return h;
    for (int d = 0; d <= N; ++d) {
        long long count = 0;
        for (const auto& m : monomials_of_degree(basis.ring, d)) {
            bool in_initial = false;
            for (const auto& lm : lead)
                if (monomial_divides(lm, m)) {
                    in_initial = true;
                    break;
                }
            if (!in_initial) ++count;
        }
        h[d] = count;
    }
    return h;
}

std::vector<long long> hilbert_prefix(const RingPtr& ring, const std::vector<Poly>& generators,
                                      int N) {
    for (const auto& g : generators)
        if (!g.is_zero() && !g.is_homogeneous())
            throw InhomogeneousInput("hilbert_prefix: inhomogeneous generator");
    return hilbert_prefix(buchberger(ring, generators), N);
}

std::vector<long long> series_expand(const std::vector<int>& numerator_degrees,
                                     const std::vector<int>& denominator_weights, int N) {
    std::vector<long long> c(N + 1, 0);
    c[0] = 1;
    for (int w : denominator_weights) {
        // multiply by 1/(1-t^w): prefix sums with stride w
        for (int i = w; i <= N; ++i) c[i] += c[i - w];
    }
    for (int e : numerator_degrees) {
        // multiply by (1-t^e)
        for (int i = N; i >= e; --i) c[i] -= c[i - e];
    }
    return c;
}

}  // namespace symdet
