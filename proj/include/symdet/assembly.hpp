#pragma once

#include <array>
#include <optional>
#include <vector>

#include "symdet/detmodel.hpp"
#include "symdet/extension.hpp"
#include "symdet/modq.hpp"

namespace symdet::assembly {

// The two projected models of one instance: the surface pair in the z,y ring
// and the sixfold pair in the extension ring, with the block-matrix
// correspondence recorded.
struct ModelPair {
    ext::Instance inst;
    std::array<Poly, 2> tprime;  // in rings::tprime()
    std::array<Poly, 2> wprime;  // in rings::wprime()
    Poly a_form, b_form;         // block-matrix slots matching tprime (in rings::plane())
    int form_sign;               // a_form == form_sign * l1 (observed -1)
};

// z1^2 - y1 f^2 - l1 Q and z2^2 - y3 g^2 - l3 Q.
std::array<Poly, 2> assemble_tprime(const ext::Instance& inst);

// Combinations sq1 - sum l1_i * conic_i and sq2 - sum l3_i * conic_i: both in
// the kernel, restricting to the tprime pair at a=b=c=d=0. Throws
// CertificateMismatch when the certificate belongs to another instance.
std::array<Poly, 2> assemble_wprime(const ext::Instance& inst,
                                    const ext::KernelCertificate& cert);

ModelPair assemble_model_pair(const ext::KernelCertificate& cert);

// The branch cubics of the double cover (y1 f^2 + l1 Q and y3 g^2 + l3 Q).
std::array<Poly, 2> branch_cubics(const ext::Instance& inst);

// Colength of the two branch cubics in the plane plus the transversality of
// their crossings (empty Jacobian-augmented scheme). Throws DegenerateBranch
// when the count is not 9 or a crossing is tangential.
struct HalfpointReport {
    long long count = 0;
    bool transversal = false;
};
HalfpointReport halfpoint_locus_check(const ModelPair& pair);
HalfpointReport halfpoint_cubics_check(const Poly& F, const Poly& G);

// Conic restrictions of both branch cubics are perfect squares whose roots
// are the two cubic images of the parametrized curve.
struct TangencyReport {
    bool f_square = false, g_square = false;
    bool roots_match = false;
    bool pass() const { return f_square && g_square && roots_match; }
};
TangencyReport tangency_check(const ext::Instance& inst);

// Groebner Hilbert prefixes against the closed-form expansions.
struct HilbertReport {
    std::vector<long long> tprime_prefix, tprime_expected;
    std::vector<long long> wprime_prefix, wprime_expected;
    bool pass() const { return tprime_prefix == tprime_expected && wprime_prefix == wprime_expected; }
};
HilbertReport hilbert_check(const ModelPair& pair, int n_tprime = 12, int n_wprime = 10);

// Weighted complete-intersection slice: three weight-1 forms and a weight-2
// form adjoined to the sixfold pair, plus the curve slice of the surface
// pair. Hilbert data is checked against the closed forms; the parameter
// tally records the moduli bookkeeping.
struct SliceCheck {
    std::vector<Poly> surface_equations;  // wprime + h1,h2,h3,q2 (extension ring)
    std::vector<Poly> curve_equations;    // tprime + y-part of q2 (z,y ring)
    std::vector<long long> curve_prefix, curve_expected;
    bool curve_ok = false;
    bool transverse = false;  // the three weight-1 forms are independent
    int parameter_tally = 0;
    std::optional<modq::ScanReport> scan;
};
SliceCheck slice_surface(const ModelPair& pair, const std::array<std::array<Rational, 4>, 3>& h,
                         const std::array<Rational, 13>& q2, std::uint64_t scan_q = 0,
                         long scan_samples = 0, std::uint64_t scan_seed = 0);

// Block matrix corresponding to the pair's provenance forms.
detmodel::SymDetMatrix block_matrix_of(const ModelPair& pair);

}  // namespace symdet::assembly
