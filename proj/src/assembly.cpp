#include "symdet/assembly.hpp"

#include "symdet/colength.hpp"
#include "symdet/errors.hpp"
#include "symdet/hilbert.hpp"

namespace symdet::assembly {

namespace {

Poly var(const RingPtr& r, const std::string& n) { return Poly::variable(r, n); }

Poly linear_combo(const RingPtr& r, const std::array<Rational, 3>& c) {
    return c[0] * var(r, "y1") + c[1] * var(r, "y2") + c[2] * var(r, "y3");
}

bool same_instance(const ext::Instance& a, const ext::Instance& b) {
    return a.alpha1 == b.alpha1 && a.alpha2 == b.alpha2 && a.beta1 == b.beta1 &&
           a.beta2 == b.beta2 && a.l1 == b.l1 && a.l3 == b.l3;
}

}  // namespace

std::array<Poly, 2> assemble_tprime(const ext::Instance& inst) {
    RingPtr t = rings::tprime();
    Poly z1 = var(t, "z1"), z2 = var(t, "z2");
    Poly f = ext::lin_f(inst, t), g = ext::lin_g(inst, t);
    Poly Q = ext::conic_quadric(t);
    return {z1 * z1 - var(t, "y1") * f * f - linear_combo(t, inst.l1) * Q,
            z2 * z2 - var(t, "y3") * g * g - linear_combo(t, inst.l3) * Q};
}

std::array<Poly, 2> assemble_wprime(const ext::Instance& inst,
                                    const ext::KernelCertificate& cert) {
    if (!same_instance(inst, cert.inst))
        throw CertificateMismatch("certificate belongs to a different instance");
    RingPtr S = rings::wprime();
    Poly wp1 = cert.sq1, wp2 = cert.sq2;
    for (int i = 0; i < 3; ++i) {
        wp1 -= inst.l1[i] * cert.conic[i];
        wp2 -= inst.l3[i] * cert.conic[i];
    }
    // restriction to a=b=c=d=0 must reproduce the surface pair exactly
    std::vector<std::pair<std::size_t, Rational>> zero;
    for (const char* n : {"a", "b", "c", "d"}) zero.push_back({*S->var_index(n), Rational(0)});
    auto tp = assemble_tprime(inst);
    if (wp1.substitute_vars(zero) != tp[0].transport(S) ||
        wp2.substitute_vars(zero) != tp[1].transport(S))
        throw CertificateMismatch("restriction of the sixfold pair fails to match");
    return {wp1, wp2};
}

ModelPair assemble_model_pair(const ext::KernelCertificate& cert) {
    ModelPair pair;
    pair.inst = cert.inst;
    pair.tprime = assemble_tprime(cert.inst);
    pair.wprime = assemble_wprime(cert.inst, cert);
    // match the two projection presentations to pin the block-matrix slots
    RingPtr pl = rings::plane();
    Poly l1p = linear_combo(pl, cert.inst.l1), l3p = linear_combo(pl, cert.inst.l3);
    bool matched = false;
    for (int sign : {-1, 1}) {
        Poly a_form = Rational(sign) * l1p, b_form = Rational(sign) * l3p;
        auto m = detmodel::build_block_matrix(a_form, b_form, cert.inst.alpha1, cert.inst.alpha2,
                                              cert.inst.beta1, cert.inst.beta2);
        auto proj = detmodel::project_from_halfpoint(m);
        if (proj.z_squares[0] == pair.tprime[0] && proj.z_squares[1] == pair.tprime[1]) {
            pair.a_form = a_form;
            pair.b_form = b_form;
            pair.form_sign = sign;
            matched = true;
            break;
        }
    }
    if (!matched) throw Error("no sign convention matches the two projections");
    return pair;
}

std::array<Poly, 2> branch_cubics(const ext::Instance& inst) {
    RingPtr pl = rings::plane();
    Poly f = ext::lin_f(inst, pl), g = ext::lin_g(inst, pl);
    Poly Q = ext::conic_quadric(pl);
    return {var(pl, "y1") * f * f + linear_combo(pl, inst.l1) * Q,
            var(pl, "y3") * g * g + linear_combo(pl, inst.l3) * Q};
}

HalfpointReport halfpoint_cubics_check(const Poly& F, const Poly& G) {
    RingPtr pl = rings::plane();
    auto cl = colength_projective(pl, {F, G});
    if (!cl.value) throw DegenerateBranch("branch cubics share a component");
    HalfpointReport rep;
    rep.count = *cl.value;
    std::vector<Poly> with_jac{F, G};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            with_jac.push_back(F.derivative(i) * G.derivative(j) -
                               F.derivative(j) * G.derivative(i));
    auto sing = colength_projective(pl, with_jac);
    rep.transversal = sing.value && *sing.value == 0;
    if (rep.count != 9 || !rep.transversal)
        throw DegenerateBranch("branch crossings: count " + std::to_string(rep.count) +
                               (rep.transversal ? ", transversal" : ", tangential"));
    return rep;
}

HalfpointReport halfpoint_locus_check(const ModelPair& pair) {
    auto [F, G] = branch_cubics(pair.inst);
    return halfpoint_cubics_check(F, G);
}

TangencyReport tangency_check(const ext::Instance& inst) {
    auto [F, G] = branch_cubics(inst);
    ext::PullbackMap phi0 = ext::conic_param();
    TangencyReport rep;
    auto rf = perfect_square_root(phi0(F));
    auto rg = perfect_square_root(phi0(G));
    rep.f_square = rf.has_value();
    rep.g_square = rg.has_value();
    if (rf && rg) {
        ext::PullbackMap phi = ext::curve_embedding(inst);
        const Poly& z1img = phi.images[0];
        const Poly& z2img = phi.images[1];
        rep.roots_match = (*rf == z1img || *rf == -z1img) && (*rg == z2img || *rg == -z2img);
    }
    return rep;
}

HilbertReport hilbert_check(const ModelPair& pair, int n_tprime, int n_wprime) {
    HilbertReport rep;
    rep.tprime_prefix = hilbert_prefix(rings::tprime(), {pair.tprime[0], pair.tprime[1]}, n_tprime);
    rep.tprime_expected = series_expand({6, 6}, {3, 3, 2, 2, 2}, n_tprime);
    rep.wprime_prefix = hilbert_prefix(rings::wprime(), {pair.wprime[0], pair.wprime[1]}, n_wprime);
    rep.wprime_expected = series_expand({6, 6}, {3, 3, 2, 2, 2, 1, 1, 1, 1}, n_wprime);
    return rep;
}

SliceCheck slice_surface(const ModelPair& pair, const std::array<std::array<Rational, 4>, 3>& h,
                         const std::array<Rational, 13>& q2, std::uint64_t scan_q,
                         long scan_samples, std::uint64_t scan_seed) {
    RingPtr S = rings::wprime();
    SliceCheck out;
    out.surface_equations = {pair.wprime[0], pair.wprime[1]};
    const char* wt1[4] = {"a", "b", "c", "d"};
    for (int j = 0; j < 3; ++j) {
        Poly hj(S);
        for (int k = 0; k < 4; ++k) hj += h[j][k] * var(S, wt1[k]);
        out.surface_equations.push_back(hj);
    }
    Poly q2poly(S);
    int idx = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) q2poly += q2[idx++] * var(S, wt1[i]) * var(S, wt1[j]);
    for (int i = 0; i < 3; ++i) q2poly += q2[10 + i] * var(S, "y" + std::to_string(i + 1));
    out.surface_equations.push_back(q2poly);

    RingPtr t = rings::tprime();
    Poly q2y(t);
    for (int i = 0; i < 3; ++i) q2y += q2[10 + i] * var(t, "y" + std::to_string(i + 1));
    out.curve_equations = {pair.tprime[0], pair.tprime[1], q2y};
    out.curve_prefix = hilbert_prefix(t, out.curve_equations, 6);
    out.curve_expected = series_expand({2, 6, 6}, {3, 3, 2, 2, 2}, 6);
    out.curve_ok = out.curve_prefix == out.curve_expected;

    std::vector<std::vector<Rational>> hmat;
    for (int j = 0; j < 3; ++j) hmat.push_back({h[j][0], h[j][1], h[j][2], h[j][3]});
    out.transverse = rational_rank(hmat) == 3;

    // moduli tally: the construction parameters (4 scalars modulo one
    // normalization plus two 3-coefficient combination forms), the choice of
    // three weight-1 sections among four coordinates, and a weight-2 section
    // of the threefold slice (one surviving weight-1 square plus four
    // weight-2 coordinates upstairs, modulo scale)
    int moduli = (4 - 1) + 3 + 3;
    int grassmannian = 3 * (4 - 3);
    int quadric_sections = (1 + 4) - 1;
    out.parameter_tally = moduli + grassmannian + quadric_sections;

    if (scan_q > 0)
        out.scan = modq::quasismooth_scan(out.surface_equations, S, scan_q, scan_samples,
                                          scan_seed);
    return out;
}

detmodel::SymDetMatrix block_matrix_of(const ModelPair& pair) {
    return detmodel::build_block_matrix(pair.a_form, pair.b_form, pair.inst.alpha1,
                                        pair.inst.alpha2, pair.inst.beta1, pair.inst.beta2);
}

}  // namespace symdet::assembly
