#pragma once

#include <vector>

#include "symdet/poly.hpp"

namespace symdet {

// Reduced Groebner basis: monic generators, tails fully reduced, sorted by
// descending leading monomial. Unique for a given ideal and order.
struct GroebnerBasis {
    RingPtr ring;
    std::vector<Poly> gens;
};

// Fully reduced remainder of p modulo the basis. normal_form(p) == 0 exactly
// when p lies in the ideal. Throws RingMismatch for foreign polynomials.
Poly normal_form(const Poly& p, const GroebnerBasis& basis);
Poly normal_form(const Poly& p, const std::vector<Poly>& gens);

// Buchberger with product/chain pair pruning. The public entry point insists
// on homogeneous input (InhomogeneousInput otherwise); the affine variant is
// for dehomogenized chart computations.
GroebnerBasis buchberger(RingPtr ring, std::vector<Poly> generators);
GroebnerBasis buchberger_affine(RingPtr ring, std::vector<Poly> generators);

// Monomial helpers shared with the enumeration code.
bool monomial_divides(const Monomial& a, const Monomial& b);
Monomial monomial_lcm(const Monomial& a, const Monomial& b);

// All monomials of exact weighted degree d, in no particular order.
std::vector<Monomial> monomials_of_degree(const RingPtr& ring, long d);

}  // namespace symdet
