#include "symdet/colength.hpp"

#include "symdet/errors.hpp"

namespace symdet {

namespace {

// Count monomials outside the initial ideal. Requires a pure power of every
// variable among the leading monomials, otherwise the quotient is infinite.
std::optional<long long> count_standard_monomials(const RingPtr& ring,
                                                  const std::vector<Monomial>& lead) {
    std::size_t n = ring->nvars();
    for (const auto& lm : lead)
        if (ring->weighted_degree(lm) == 0) return 0;  // unit ideal
    std::vector<int> bound(n, -1);
    for (const auto& lm : lead) {
        int support = -1;
        bool pure = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (lm[i] == 0) continue;
            if (support >= 0) {
                pure = false;
                break;
            }
            support = static_cast<int>(i);
        }
        if (pure && support >= 0) {
            if (bound[support] < 0 || lm[support] < bound[support]) bound[support] = lm[support];
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (bound[i] < 0) return std::nullopt;

    long long count = 0;
    Monomial cur(n, 0);
    auto rec = [&](auto&& self, std::size_t var) -> void {
        if (var == n) {
            for (const auto& lm : lead)
                if (monomial_divides(lm, cur)) return;
            ++count;
            return;
        }
        for (int e = 0; e < bound[var]; ++e) {
            cur[var] = e;
            self(self, var + 1);
        }
        cur[var] = 0;
    };
    rec(rec, 0);
    return count;
}

std::optional<long long> chart_colength(const RingPtr& chart_ring,
                                        const std::vector<Poly>& gens) {
    GroebnerBasis gb = buchberger_affine(chart_ring, gens);
    if (gb.gens.empty()) {
        // zero ideal: finite only for the zero-variable ring
        return chart_ring->nvars() == 0 ? std::optional<long long>(1) : std::nullopt;
    }
    std::vector<Monomial> lead;
    for (const auto& g : gb.gens) lead.push_back(g.leading_monomial());
    return count_standard_monomials(chart_ring, lead);
}

}  // namespace

std::optional<long long> colength_affine(const RingPtr& ring, const std::vector<Poly>& gens) {
    return chart_colength(ring, gens);
}

ColengthResult colength_projective(const RingPtr& ring, const std::vector<Poly>& generators) {
    std::size_t n = ring->nvars();
    for (const auto& g : generators)
        if (!g.is_zero() && !g.is_homogeneous())
            throw InhomogeneousInput("colength_projective: inhomogeneous generator");
    ColengthResult result;
    long long total = 0;
    bool infinite = false;
    for (std::size_t chart = 0; chart < n; ++chart) {
        // Chart ring without variable `chart`.
        std::vector<std::string> names;
        std::vector<int> weights;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == chart) continue;
            names.push_back(ring->var_name(i));
            weights.push_back(1);
        }
        RingPtr cring = RingSpec::make(names, weights);
        std::vector<Poly> cgens;
        for (const auto& g : generators) {
            Poly mapped(cring);
            for (const auto& [m, c] : g.terms()) {
                Monomial mm(cring->nvars(), 0);
                std::size_t k = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == chart) continue;
                    mm[k++] = m[i];
                }
                mapped.add_term(mm, c);  // chart variable set to 1
            }
            if (!mapped.is_zero()) cgens.push_back(mapped);
        }
        // Exclude points already seen in earlier charts.
        for (std::size_t i = 0; i < chart; ++i)
            cgens.push_back(Poly::variable(cring, ring->var_name(i)));
        auto cl = chart_colength(cring, cgens);
        if (!cl) {
            infinite = true;
            result.chart_counts.push_back(-1);
        } else {
            total += *cl;
            result.chart_counts.push_back(*cl);
        }
    }
    if (!infinite) result.value = total;
    return result;
}

}  // namespace symdet
