#pragma once

#include <array>
#include <vector>

#include "symdet/matrix.hpp"
#include "symdet/rational.hpp"

namespace symdet::detmodel {

// 4x4 symmetric matrix of weight-2 forms in y1..y4, the quartic model datum.
// block_form marks the normalized shape with the half-point at (0,0,0,1):
//   [ b   y4  B   0  ]
//   [ y4  a   0   A  ]
//   [ B   0   y1  y2 ]
//   [ 0   A   y2  y3 ]
// with A = y1 + alpha1 y2 + alpha2 y3 and B = beta1 y1 + beta2 y2 + y3.
struct SymDetMatrix {
    PolyMatrix m;  // entries in the z,y model ring, y-support only
    bool block_form = false;
};

// Wraps an arbitrary symmetric matrix of weight-2 y-forms; detects block form.
SymDetMatrix make_symdet(PolyMatrix m);

SymDetMatrix build_block_matrix(const Poly& a_form, const Poly& b_form, const Rational& alpha1,
                                const Rational& alpha2, const Rational& beta1,
                                const Rational& beta2);

// The graded-ring equations: four weight-5 rows of (z1..z4) m = 0 and ten
// weight-6 equations cofactor(i,j) - z_i z_j for i <= j in lex pair order.
struct DetModelEquations {
    std::vector<Poly> linear;
    std::vector<Poly> quadratic;
};
DetModelEquations model_equations(const SymDetMatrix& s);

// The ten 3x3 cofactors (i <= j) as cubics in y1..y4.
std::vector<Poly> contact_cubics(const SymDetMatrix& s);

// Same cubics restricted to the y-only ring, for minors-ideal computations.
std::vector<Poly> minor_ideal_generators(const SymDetMatrix& s);

// Rank of m at a projective y-point. Throws ZeroPoint on the zero vector.
int rank_at_point(const SymDetMatrix& s, const std::vector<Rational>& y_point);

// Projection away from the half-point. The emitted equations use the
// orientation z1^2 = y1 A^2 - a Q (the worked-model normalization); the
// relation to the raw cofactors is the recorded sign.
struct ProjectedModel {
    Poly branch_f;                  // weight 6 in y1..y3
    Poly branch_g;
    std::array<Poly, 2> z_squares;  // z1^2 - branch_f, z2^2 - branch_g
    int cofactor_sign;              // branch_f == cofactor_sign * cofactor(0,0)
};
ProjectedModel project_from_halfpoint(const SymDetMatrix& s);

// Writes det m = alpha y4^2 + beta y4 + gamma and verifies
//   branch_f * branch_g == constant * (beta^2 - 4 alpha gamma)
// exactly; the constant is returned. Throws DecompositionFailure when the
// y4-degree of det m is not 2.
struct BranchCertificate {
    Poly alpha, beta, gamma;  // in the y-only ring
    Poly sextic;              // beta^2 - 4 alpha gamma
    Rational constant;
};
BranchCertificate branch_identity_check(const SymDetMatrix& s);

// Halve all degrees: the double-cover equation w^2 = F*G in the weight
// (3,1,1,1) ring, built from the two weight-6 branch forms.
Poly truncate_even(const Poly& branch_f, const Poly& branch_g);

}  // namespace symdet::detmodel
