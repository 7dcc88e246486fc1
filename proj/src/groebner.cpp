#include "symdet/groebner.hpp"

#include <algorithm>
#include <set>

#include "symdet/errors.hpp"

namespace symdet {

bool monomial_divides(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Monomial monomial_lcm(const Monomial& a, const Monomial& b) {
    Monomial m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m[i] = std::max(a[i], b[i]);
    return m;
}

static Monomial monomial_quotient(const Monomial& a, const Monomial& b) {
    Monomial m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] - b[i];
    return m;
}

Poly normal_form(const Poly& p, const std::vector<Poly>& gens) {
    if (gens.empty()) return p;
    const RingPtr& ring = p.ring();
    for (const auto& g : gens)
        if (!g.ring()->same_structure(*ring)) throw RingMismatch("normal_form: ring mismatch");
    Poly rem(ring);
    Poly h = p;
    while (!h.is_zero()) {
        const Monomial& lm = h.leading_monomial();
        bool reduced = false;
        for (const auto& g : gens) {
            if (g.is_zero()) continue;
            if (!monomial_divides(g.leading_monomial(), lm)) continue;
            Rational cf = h.leading_coeff() / g.leading_coeff();
            Poly t = Poly::monomial(ring, monomial_quotient(lm, g.leading_monomial()), cf);
            h -= t * g;
            reduced = true;
            break;
        }
        if (!reduced) {
            rem.add_term(lm, h.leading_coeff());
            h.add_term(lm, -h.leading_coeff());
        }
    }
    return rem;
}

Poly normal_form(const Poly& p, const GroebnerBasis& basis) {
    if (!p.ring()->same_structure(*basis.ring)) throw RingMismatch("normal_form: ring mismatch");
    return normal_form(p, basis.gens);
}

namespace {

struct Pair {
    std::size_t i, j;
    Monomial lcm;
};

Poly s_poly(const Poly& f, const Poly& g, const Monomial& lcm) {
    const RingPtr& ring = f.ring();
    Poly tf = Poly::monomial(ring, monomial_quotient(lcm, f.leading_monomial()),
                             f.leading_coeff().inverse());
    Poly tg = Poly::monomial(ring, monomial_quotient(lcm, g.leading_monomial()),
                             g.leading_coeff().inverse());
    return tf * f - tg * g;
}

GroebnerBasis compute(RingPtr ring, std::vector<Poly> input) {
    std::vector<Poly> basis;
    for (auto& p : input)
        if (!p.is_zero()) basis.push_back(p.monic());

    auto coprime = [](const Monomial& a, const Monomial& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] > 0 && b[i] > 0) return false;
        return true;
    };

    std::vector<Pair> pending;
    std::set<std::pair<std::size_t, std::size_t>> unfinished;
    auto push_pairs_for = [&](std::size_t t) {
        for (std::size_t i = 0; i < t; ++i) {
            const Monomial& a = basis[i].leading_monomial();
            const Monomial& b = basis[t].leading_monomial();
            if (coprime(a, b)) continue;  // product criterion
            pending.push_back({i, t, monomial_lcm(a, b)});
            unfinished.insert({i, t});
        }
    };
    for (std::size_t t = 0; t < basis.size(); ++t) push_pairs_for(t);

    while (!pending.empty()) {
        // Normal strategy: smallest lcm first.
        std::size_t best = 0;
        for (std::size_t k = 1; k < pending.size(); ++k)
            if (ring->compare(pending[k].lcm, pending[best].lcm) < 0) best = k;
        Pair pr = pending[best];
        pending.erase(pending.begin() + best);
        unfinished.erase({pr.i, pr.j});

        // Chain criterion: skip when some basis element divides the lcm and
        // both sub-pairs were already treated.
        bool skip = false;
        for (std::size_t k = 0; k < basis.size() && !skip; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (!monomial_divides(basis[k].leading_monomial(), pr.lcm)) continue;
            auto key1 = std::minmax(pr.i, k);
            auto key2 = std::minmax(pr.j, k);
            if (!unfinished.count({key1.first, key1.second}) &&
                !unfinished.count({key2.first, key2.second}))
                skip = true;
        }
        if (skip) continue;

        Poly s = s_poly(basis[pr.i], basis[pr.j], pr.lcm);
        Poly r = normal_form(s, basis);
        if (r.is_zero()) continue;
        basis.push_back(r.monic());
        push_pairs_for(basis.size() - 1);
    }

    // Minimalize: drop generators whose leading monomial is divisible by
    // another's.
    std::vector<Poly> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const Monomial& mi = basis[i].leading_monomial();
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i == j) continue;
            const Monomial& mj = basis[j].leading_monomial();
            if (!monomial_divides(mj, mi)) continue;
            if (mi != mj || j < i) {  // equal leading monomials: keep the first
                redundant = true;
                break;
            }
        }
        if (!redundant) minimal.push_back(basis[i]);
    }

    // Reduce tails against the rest until stable.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < minimal.size(); ++i) {
            std::vector<Poly> others;
            others.reserve(minimal.size() - 1);
            for (std::size_t j = 0; j < minimal.size(); ++j)
                if (j != i) others.push_back(minimal[j]);
            Poly r = normal_form(minimal[i], others);
            if (r.is_zero()) {
                minimal.erase(minimal.begin() + i);
                changed = true;
                break;
            }
            r = r.monic();
            if (r != minimal[i]) {
                minimal[i] = r;
                changed = true;
            }
        }
    }

    std::sort(minimal.begin(), minimal.end(), [&](const Poly& a, const Poly& b) {
        return ring->compare(a.leading_monomial(), b.leading_monomial()) > 0;
    });
    return GroebnerBasis{std::move(ring), std::move(minimal)};
}

}  // namespace

GroebnerBasis buchberger(RingPtr ring, std::vector<Poly> generators) {
    for (const auto& g : generators) {
        if (!g.ring()->same_structure(*ring)) throw RingMismatch("buchberger: ring mismatch");
        if (!g.is_zero() && !g.is_homogeneous())
            throw InhomogeneousInput("buchberger: inhomogeneous generator " + g.str());
    }
    return compute(std::move(ring), std::move(generators));
}

GroebnerBasis buchberger_affine(RingPtr ring, std::vector<Poly> generators) {
    for (const auto& g : generators)
        if (!g.ring()->same_structure(*ring)) throw RingMismatch("buchberger: ring mismatch");
    return compute(std::move(ring), std::move(generators));
}

std::vector<Monomial> monomials_of_degree(const RingPtr& ring, long d) {
    std::vector<Monomial> out;
    Monomial cur(ring->nvars(), 0);
    // Recursive enumeration over variables with remaining degree budget.
    auto rec = [&](auto&& self, std::size_t var, long remaining) -> void {
        if (var + 1 == ring->nvars()) {
            int w = ring->weight(var);
            if (remaining % w == 0) {
                cur[var] = static_cast<int>(remaining / w);
                out.push_back(cur);
                cur[var] = 0;
            }
            return;
        }
        int w = ring->weight(var);
        for (long e = 0; e * w <= remaining; ++e) {
            cur[var] = static_cast<int>(e);
            self(self, var + 1, remaining - e * w);
        }
        cur[var] = 0;
    };
    if (d < 0) return out;
    if (ring->nvars() == 0) {
        if (d == 0) out.push_back({});
        return out;
    }
    rec(rec, 0, d);
    return out;
}

}  // namespace symdet
