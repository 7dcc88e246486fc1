#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "symdet/matrix.hpp"
#include "symdet/module_solver.hpp"
#include "symdet/poly.hpp"

namespace symdet::ext {

// The moduli point: four scalars and the two linear combination forms.
struct Instance {
    Rational alpha1, alpha2, beta1, beta2;
    std::array<Rational, 3> l1{Rational(0), Rational(0), Rational(0)};
    std::array<Rational, 3> l3{Rational(0), Rational(0), Rational(0)};
};

// Tangency cross-ratios and the resultant of the two parametrized cubics.
// det_resultant is the exact determinant of the 6x6 resultant matrix;
// det_ratio records det_resultant / disc (expected +1, asserted at build).
struct Deltas {
    Rational d1, d2, d3;
    Rational disc;  // d1^2 - d2*d3
    Rational det_resultant;
    std::optional<Rational> det_ratio;
    bool generic() const { return !disc.is_zero() && !d1.is_zero(); }
};

Deltas deltas_of(const Instance& inst);
QMatrix resultant_matrix(const Instance& inst);

// A substitution homomorphism between two fixed rings.
struct PullbackMap {
    RingPtr source, target;
    std::vector<Poly> images;
    Poly operator()(const Poly& p) const { return p.apply_hom(images, target); }
};

// P1 -> P(2,2,2): y1,y2,y3 -> u^2, uv, v^2.
PullbackMap conic_param();
// P1 -> P(2,2,2,3,3), the parametrized curve. Throws SharedRoot when the two
// cubic images have a common factor (disc == 0).
PullbackMap curve_embedding(const Instance& inst);
// P5 -> P(1^4,2^3): the quadric images whose entries are the 2x2 cofactors
// of [[a, b-v, c+u],[b+v, c-u, d]]; verified at construction.
PullbackMap plane_extension();
// P5 -> P(1^4,2^3,3^2) extending both maps above. Throws DegenerateInstance
// unless disc * d1 != 0.
PullbackMap full_extension(const Instance& inst);
// Degenerate-stratum variant over the ring with the formal weight-2
// coordinate s4 (t5 = beta1 * s4).
PullbackMap full_extension_ext(const Instance& inst);

// Derived forms in any ring containing y1..y3 (plus a..d where needed).
Poly lin_f(const Instance& inst, const RingPtr& ring);
Poly lin_g(const Instance& inst, const RingPtr& ring);
Poly conic_quadric(const RingPtr& ring);              // y1 y3 - y2^2
std::array<Poly, 3> presentation_forms(const RingPtr& ring);  // L1, L2, L3

// The 3x3 presentation matrix with rows (L1,L2,L3), (-y2,y3,L2), (y1,-y2,L1).
PolyMatrix presentation_matrix(const RingPtr& base_ring);

// First two presentation columns only: the relation set allowed in conic
// equation witnesses (the third column would cancel y_i L3 vacuously).
PolyMatrix conic_relations(const RingPtr& ring);

// The 3x6 composite matrix [e0 | z1 | z2 | presentation columns] over the
// given base ring, with arbitrary weight-2 entries s4,s5,t4,t5.
PolyMatrix composite_matrix(const Instance& inst, const RingPtr& ring, const Poly& s4,
                            const Poly& s5, const Poly& t4, const Poly& t5);
PolyMatrix composite_matrix_reduced(const Instance& inst, const RingPtr& ring);  // s=t=0

// Image curve equations in the projected model ring: z1^2 - y1 f^2,
// z1 z2 - y2 f g, z2^2 - y3 g^2, and the conic.
std::array<Poly, 4> image_equations(const Instance& inst);

// The 4x4 coefficient matrix of the linear system in (s4,s5,t4,t5), entries
// linear forms in a,b,c,d.
struct CoefficientSystem {
    PolyMatrix C;
};
CoefficientSystem coefficient_system(const Instance& inst);
// Kernel dimension of C over the fraction field Q(a,b,c,d).
std::size_t kernel_dimension(const CoefficientSystem& sys);
// Is (alpha2, 0, 0, 1) in the kernel (the delta1 = 0 direction)?
bool has_degenerate_kernel_vector(const CoefficientSystem& sys, const Instance& inst);

// Witness against the composite matrix columns [1, z1, z2, A1, A2, A3].
using Witness6 = std::array<Poly, 6>;

struct KernelCertificate {
    Instance inst;
    Deltas deltas;
    Poly sq1, sq2, mixed;       // weight-6 elements of the extension ring
    std::array<Poly, 3> conic;  // the y_i L3 equations
    Witness6 w_sq1, w_sq2, w_mixed;
    std::array<Witness6, 3> w_conic;
};

// Residual targets carried by the witnesses, as module vectors over base.
ModuleVec square1_residual(const Instance& inst, const RingPtr& ring);  // f^2 d v
ModuleVec square2_residual(const Instance& inst, const RingPtr& ring);  // g^2 a u
ModuleVec mixed_residual(const Instance& inst, const RingPtr& ring);    // f g (b u + c v)
ModuleVec conic_residual(const Instance& inst, const RingPtr& ring, int i);  // y_i(L2 u + L1 v)

// Apply the composite matrix to a witness: the module vector it produces.
ModuleVec apply_composite(const PolyMatrix& B, const Witness6& w);

// Individual equation builders. Each verifies the exact pullback to zero and
// the witness replay; they throw DegenerateInstance / MembershipFailure.
std::pair<Poly, Witness6> square_equation_1(const Instance& inst);
std::pair<Poly, Witness6> square_equation_2(const Instance& inst);
std::pair<Poly, Witness6> mixed_equation(const Instance& inst);

// i = 1 via the explicit resultant-matrix vectors (the direct and permuted
// parts are returned separately as well); i = 2,3 via the membership solver.
struct ConicEquation {
    Poly equation;
    Witness6 witness;
    std::optional<Witness6> part_direct, part_permuted;  // populated for i = 1
};
ConicEquation conic_equation(const Instance& inst, int i);

KernelCertificate make_certificate(const Instance& inst);

// Verifies an existing certificate by exact replay: pullbacks vanish and
// each witness reproduces its residual through the composite matrix.
// Returns false (no throw) on any mismatch.
bool verify_certificate(const KernelCertificate& cert);

// Residual bookkeeping for arbitrary s4,s5,t4,t5 (numeric or formal): the
// reduced vectors after subtracting the degree-2 witness images and the
// z-multiples, and the four extracted cubic coefficients whose vanishing is
// the linear system.
struct ResidualResult {
    ModuleVec K, L;
    ModuleVec K2, L2;                 // reduced vectors
    std::array<Poly, 4> extracted;    // K'': u^2v, uv^2; L'': u^2v, uv^2
    std::array<Poly, 2> cube_terms;   // u^3 coefficient of K'', v^3 of L'' (expected 0)
};
ResidualResult residual_computation(const Instance& inst, const Poly& s4, const Poly& s5,
                                    const Poly& t4, const Poly& t5);

// The delta1 = 0 stratum: extension with the formal weight-2 coordinate.
struct DegenerateReport {
    bool sq1_member_formal = false;
    bool sq2_member_formal = false;
    bool conic_member_formal = false;    // expected false
    bool conic_member_generic = false;   // at the seeded quadric; expected false
    bool conic_member_zero = false;      // at s4 = 0; expected true
    bool direct_route_agrees = false;    // presentation-free solver agreement
    Poly s4_generic;                     // the specialization used
};
DegenerateReport degenerate_extension(const Instance& inst, std::uint64_t seed);

enum class Stratum { Generic, Delta1Zero };
std::vector<Instance> generate_instances(std::uint64_t seed, int count, Stratum stratum);

// The worked model used for golden tests: a_form = y2 + 2 y3, b_form = y1.
Instance worked_example_instance();

}  // namespace symdet::ext
