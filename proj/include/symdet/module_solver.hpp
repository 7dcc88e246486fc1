#pragma once

#include <map>
#include <optional>
#include <vector>

#include "symdet/matrix.hpp"
#include "symdet/poly.hpp"

namespace symdet {

// Exact sparse linear solver over the rationals (Gauss-Jordan on sparse
// rows). Inconsistent systems report no solution; free unknowns are set to
// zero, so the returned solution is deterministic.
class SparseSolver {
public:
    explicit SparseSolver(std::size_t ncols) : ncols_(ncols) {}

    // Returns false as soon as the system becomes inconsistent.
    bool add_row(std::map<int, Rational> row, Rational rhs);
    bool consistent() const { return consistent_; }
    std::vector<Rational> solution() const;
    std::size_t rank() const { return pivots_.size(); }

private:
    struct PivotRow {
        int col;
        std::map<int, Rational> entries;
        Rational rhs;
    };
    std::size_t ncols_;
    bool consistent_ = true;
    std::vector<PivotRow> pivots_;
    std::map<int, std::size_t> pivot_by_col_;
};

// One element of the graded free module  R(-shift_0) + ... + R(-shift_k):
// a vector of homogeneous polynomials, component c of degree d - shift_c for
// a degree-d element.
using ModuleVec = std::vector<Poly>;

struct MembershipWitness {
    std::vector<Poly> gen_coeffs;  // one per submodule generator
    std::vector<Poly> rel_coeffs;  // one per relation column
};

// Decides whether `target` (homogeneous of the given degree) lies in the
// submodule spanned by `generators` modulo the columns of `relations`,
// degree-by-degree over a monomial basis. Returns the witness coefficients
// or nullopt (not a member). Throws DegreeMismatch on inconsistent degrees.
std::optional<MembershipWitness> graded_submodule_membership(
    const RingPtr& ring, const ModuleVec& target, const std::vector<int>& comp_shifts,
    const std::vector<ModuleVec>& generators, const PolyMatrix& relations, long degree);

// Presentation-free cross-check: solves
//   target = sum_j hom(r_j) * gens_in_image[j]
// directly in the image ring, where hom applies `coeff_images` to the
// coefficient ring's variables. Sound and complete for the stated span.
std::optional<std::vector<Poly>> membership_direct(const RingPtr& coeff_ring,
                                                   const std::vector<Poly>& coeff_images,
                                                   const RingPtr& image_ring, const Poly& target,
                                                   const std::vector<Poly>& gens_in_image,
                                                   long degree);

// Dimension of the space of homogeneous degree-d relations
//   sum_j hom(r_j) * gens_in_image[j] == 0
// among the given elements, computed directly in the image ring. Zero means
// the only representation of any span element is the evident one.
std::size_t syzygy_dimension_direct(const RingPtr& coeff_ring,
                                    const std::vector<Poly>& coeff_images,
                                    const RingPtr& image_ring,
                                    const std::vector<Poly>& gens_in_image, long degree);

// Is `target` in the Q-linear span of `basis`? (All same ring.)
bool in_rational_span(const std::vector<Poly>& basis, const Poly& target);

}  // namespace symdet
