#include <doctest.h>

#include "symdet/errors.hpp"
#include "symdet/extension.hpp"
#include "symdet/groebner.hpp"
#include "symdet/module_solver.hpp"
#include "symdet/rng.hpp"

using namespace symdet;
using namespace symdet::ext;

namespace {

Instance degenerate_instance() {
    Instance dg;
    dg.alpha1 = Rational(2);
    dg.alpha2 = Rational(1);
    dg.beta1 = Rational(1);
    dg.beta2 = Rational(3);
    dg.l1 = {Rational(1), Rational(0), Rational(0)};
    dg.l3 = {Rational(0), Rational(1), Rational(0)};
    return dg;
}

}  // namespace

TEST_CASE("deltas and the resultant matrix") {
    Instance inst = worked_example_instance();
    Deltas dl = deltas_of(inst);
    CHECK(dl.d1 == Rational(-14));
    CHECK(dl.d2 == Rational(-19));
    CHECK(dl.d3 == Rational(-3));
    CHECK(dl.disc == Rational(139));
    CHECK(dl.det_resultant == dl.disc);  // determinant of the resultant matrix
    CHECK(dl.det_ratio.value() == Rational(1));
    CHECK(dl.generic());

    SplitMix64 rng(61);
    for (int trial = 0; trial < 50; ++trial) {
        Instance r;
        r.alpha1 = rng.small_rational();
        r.alpha2 = rng.small_rational();
        r.beta1 = rng.small_rational();
        r.beta2 = rng.small_rational();
        Deltas d = deltas_of(r);
        if (!d.disc.is_zero()) CHECK(d.det_resultant == d.disc);
    }
}

TEST_CASE("shared roots are detected by the vanishing resultant") {
    // f-image (u-v)(u-2v), g-image 2(u-v)(u-v/2): common factor u-v
    Instance bad;
    bad.alpha1 = Rational(-3);
    bad.alpha2 = Rational(2);
    bad.beta1 = Rational(2);
    bad.beta2 = Rational(-3);
    Deltas dl = deltas_of(bad);
    CHECK(dl.disc.is_zero());
    CHECK(dl.det_resultant.is_zero());
    CHECK_THROWS_AS(curve_embedding(bad), SharedRoot);
}

TEST_CASE("parametrized curve kills its image equations") {
    Instance inst = worked_example_instance();
    PullbackMap phi = curve_embedding(inst);
    for (const auto& eq : image_equations(inst)) CHECK(phi(eq).is_zero());

    Instance zero;
    zero.alpha1 = zero.alpha2 = zero.beta1 = zero.beta2 = Rational(0);
    PullbackMap phi0 = curve_embedding(zero);
    RingPtr uv = rings::uv();
    CHECK(phi0.images[0] == Poly::parse(uv, "u^3"));
    CHECK(phi0.images[1] == Poly::parse(uv, "v^3"));
}

TEST_CASE("plane extension and its restriction") {
    PullbackMap phi0 = plane_extension();  // construction verifies the cofactor identity
    RingPtr p5 = rings::p5();
    // restricting a=b=c=d=0 recovers the conic parametrization
    std::vector<std::pair<std::size_t, Rational>> zero;
    for (const char* n : {"a", "b", "c", "d"}) zero.push_back({*p5->var_index(n), Rational(0)});
    CHECK(phi0.images[0].substitute_vars(zero) == Poly::parse(p5, "u^2"));
    CHECK(phi0.images[1].substitute_vars(zero) == Poly::parse(p5, "u*v"));
    CHECK(phi0.images[2].substitute_vars(zero) == Poly::parse(p5, "v^2"));

    // the conic quadric maps to a specific nonzero quartic, pinned once
    Poly img = phi0(conic_quadric(rings::base()));
    CHECK(!img.is_zero());
    CHECK(img == Poly::parse(p5,
        "-u^3*a - 2*u^2*v*b - 2*u^2*b^2 - 2*u*v^2*c + u^2*a*c - 4*u*v*b*c - 2*u*b^2*c"
        " - 2*v^2*c^2 + u*a*c^2 - 2*v*b*c^2 - a*c^3 - v^3*d + 3*u*v*a*d + v^2*b*d"
        " + u*a*b*d + v*b^2*d - b^3*d + v*a*c*d + 3*a*b*c*d - a^2*d^2"));
}

TEST_CASE("presentation matrix") {
    RingPtr rb = rings::base();
    PolyMatrix A = presentation_matrix(rb);
    PullbackMap phi0 = plane_extension();
    RingPtr p5 = rings::p5();
    Poly u = Poly::variable(p5, "u"), v = Poly::variable(p5, "v");
    for (std::size_t col = 0; col < 3; ++col)
        CHECK((phi0(A.at(0, col)) + phi0(A.at(1, col)) * u + phi0(A.at(2, col)) * v).is_zero());
    CHECK(det(A).weighted_degree() == std::optional<long>(8));

    // at a=b=c=d=0 the last column collapses onto the conic quadric
    std::vector<std::pair<std::size_t, Rational>> zero;
    for (const char* n : {"a", "b", "c", "d"}) zero.push_back({*rb->var_index(n), Rational(0)});
    CHECK(A.at(0, 0).substitute_vars(zero).is_zero());  // L1
    CHECK(A.at(0, 1).substitute_vars(zero).is_zero());  // L2
    CHECK(A.at(0, 2).substitute_vars(zero) == conic_quadric(rb));
}

TEST_CASE("coefficient system ranks") {
    Instance inst = worked_example_instance();
    CHECK(kernel_dimension(coefficient_system(inst)) == 0);

    Instance dg = degenerate_instance();
    auto sys = coefficient_system(dg);
    CHECK(kernel_dimension(sys) == 1);
    CHECK(has_degenerate_kernel_vector(sys, dg));

    Instance zero;
    zero.alpha1 = zero.alpha2 = zero.beta1 = zero.beta2 = Rational(0);
    CHECK(kernel_dimension(coefficient_system(zero)) == 0);
    CHECK(!has_degenerate_kernel_vector(coefficient_system(zero), zero));
}

TEST_CASE("full extension restricts to the curve") {
    Instance inst = worked_example_instance();
    PullbackMap phi = full_extension(inst);
    PullbackMap small = curve_embedding(inst);
    RingPtr p5 = rings::p5();
    std::vector<std::pair<std::size_t, Rational>> zero;
    for (const char* n : {"a", "b", "c", "d"}) zero.push_back({*p5->var_index(n), Rational(0)});
    // z-images restrict to the curve's cubic images
    CHECK(phi.images[0].substitute_vars(zero) == small.images[0].transport(p5));
    CHECK(phi.images[1].substitute_vars(zero) == small.images[1].transport(p5));
    // divisibility by the parameter coordinates
    Poly u = Poly::variable(p5, "u"), v = Poly::variable(p5, "v");
    CHECK(phi.images[0].divide_exact(u).has_value());
    CHECK(phi.images[1].divide_exact(v).has_value());

    CHECK_THROWS_AS(full_extension(degenerate_instance()), DegenerateInstance);
}

TEST_CASE("square equations carry the stated witnesses") {
    Instance inst = worked_example_instance();
    auto [eq1, w1] = square_equation_1(inst);
    RingPtr rb = rings::base();
    Poly f = lin_f(inst, rb), d = Poly::variable(rb, "d");
    Deltas dl = deltas_of(inst);
    CHECK(w1[2] == inst.alpha2 * d * f);
    CHECK(w1[3] == dl.d1 * d * f);
    CHECK(w1[4] == -dl.d2 * d * f);
    CHECK(w1[5].is_zero());

    auto [eq2, w2] = square_equation_2(inst);
    Poly g = lin_g(inst, rb), a = Poly::variable(rb, "a");
    CHECK(w2[1] == inst.beta1 * a * g);
    CHECK(w2[3] == -dl.d3 * a * g);
    CHECK(w2[4] == dl.d1 * a * g);

    // pullbacks vanish for a batch of generated instances
    for (const Instance& r : generate_instances(202508, 25, Stratum::Generic)) {
        auto [e1, v1] = square_equation_1(r);
        auto [e2, v2] = square_equation_2(r);
        PullbackMap phi = full_extension(r);
        CHECK(phi(e1).is_zero());
        CHECK(phi(e2).is_zero());
    }
}

TEST_CASE("square equation specializations") {
    // all parameters zero: the displayed reduced form
    Instance zero;
    zero.alpha1 = zero.alpha2 = zero.beta1 = zero.beta2 = Rational(0);
    auto [eq, w] = square_equation_1(zero);
    RingPtr S = rings::wprime();
    // z1^2 - y1^3 = (c^2 - bd) y1^2 - L1 d y1 + y2 d z1 with L1 = b y1 + c y2 + d y3
    Poly z1 = Poly::variable(S, "z1"), y1 = Poly::variable(S, "y1"), y2 = Poly::variable(S, "y2");
    Poly L1 = Poly::parse(S, "b*y1 + c*y2 + d*y3");
    Poly rhs = Poly::parse(S, "c^2 - b*d") * y1 * y1 - L1 * Poly::variable(S, "d") * y1 +
               y2 * Poly::variable(S, "d") * z1;
    CHECK(eq == z1 * z1 - y1 * y1 * y1 - rhs);

    // restriction to a=b=c=d=0 recovers the image equation
    Instance inst = worked_example_instance();
    auto [e1, w1] = square_equation_1(inst);
    std::vector<std::pair<std::size_t, Rational>> zeros;
    for (const char* n : {"a", "b", "c", "d"}) zeros.push_back({*S->var_index(n), Rational(0)});
    CHECK(e1.substitute_vars(zeros) == image_equations(inst)[0].transport(S));
}

TEST_CASE("mixed equation") {
    Instance inst = worked_example_instance();
    auto [eq, w] = mixed_equation(inst);
    RingPtr rb = rings::base();
    CHECK(w[1] == Poly::variable(rb, "b") * lin_g(inst, rb));
    CHECK(w[2] == Poly::variable(rb, "c") * lin_f(inst, rb));
    RingPtr S = rings::wprime();
    std::vector<std::pair<std::size_t, Rational>> zeros;
    for (const char* n : {"a", "b", "c", "d"}) zeros.push_back({*S->var_index(n), Rational(0)});
    CHECK(eq.substitute_vars(zeros) == image_equations(inst)[1].transport(S));

    for (const Instance& r : generate_instances(77, 25, Stratum::Generic)) {
        auto [e, v] = mixed_equation(r);
        CHECK(full_extension(r)(e).is_zero());
    }
}

TEST_CASE("conic equations by both routes") {
    Instance inst = worked_example_instance();
    RingPtr S = rings::wprime();
    std::vector<std::pair<std::size_t, Rational>> zeros;
    for (const char* n : {"a", "b", "c", "d"}) zeros.push_back({*S->var_index(n), Rational(0)});
    for (int i = 1; i <= 3; ++i) {
        ConicEquation ce = conic_equation(inst, i);
        CHECK(!ce.equation.is_zero());
        CHECK(full_extension(inst)(ce.equation).is_zero());
        Poly yiQ = Poly::variable(S, "y" + std::to_string(i)) * conic_quadric(S);
        CHECK(ce.equation.substitute_vars(zeros) == yiQ);
        if (i == 1) {
            CHECK(ce.part_direct.has_value());
            CHECK(ce.part_permuted.has_value());
        }
    }

    // the resultant-matrix witness and a solver witness differ by an exact
    // column relation of the composite matrix
    ConicEquation c1 = conic_equation(inst, 1);
    RingPtr rb = rings::base();
    ModuleVec target = conic_residual(inst, rb, 1);
    std::vector<ModuleVec> gens{{Poly::constant(rb, Rational(1)), Poly(rb), Poly(rb)},
                                {Poly(rb), lin_f(inst, rb), Poly(rb)},
                                {Poly(rb), Poly(rb), lin_g(inst, rb)}};
    auto solver = graded_submodule_membership(rb, target, {0, 1, 1}, gens, conic_relations(rb), 6);
    REQUIRE(solver.has_value());
    Witness6 diff;
    for (int k = 0; k < 3; ++k) diff[k] = c1.witness[k] - solver->gen_coeffs[k];
    for (int k = 0; k < 2; ++k) diff[3 + k] = c1.witness[3 + k] - solver->rel_coeffs[k];
    diff[5] = c1.witness[5];
    ModuleVec wiped = apply_composite(composite_matrix_reduced(inst, rb), diff);
    for (const auto& comp : wiped) CHECK(comp.is_zero());

    for (const Instance& r : generate_instances(909, 10, Stratum::Generic)) {
        ConicEquation ce = conic_equation(r, 1);
        CHECK(full_extension(r)(ce.equation).is_zero());
    }
}

TEST_CASE("residual computation reproduces the coefficient matrix") {
    Instance inst = worked_example_instance();
    RingPtr rb = rings::base();
    Poly z(rb);
    auto at_zero = residual_computation(inst, z, z, z, z);
    for (const auto& comp : at_zero.K2) CHECK(comp.is_zero());
    for (const auto& comp : at_zero.L2) CHECK(comp.is_zero());

    RingPtr rs = rings::residual_sym();
    auto sym = residual_computation(inst, Poly::variable(rs, "s4"), Poly::variable(rs, "s5"),
                                    Poly::variable(rs, "t4"), Poly::variable(rs, "t5"));
    for (const auto& cube : sym.cube_terms) CHECK(cube.is_zero());
    auto sys = coefficient_system(inst);
    const char* names[4] = {"s4", "s5", "t4", "t5"};
    for (int row = 0; row < 4; ++row) {
        Poly expect(rs);
        for (int col = 0; col < 4; ++col)
            expect += sys.C.at(row, col).transport(rs) * Poly::variable(rs, names[col]);
        CHECK(sym.extracted[row] == expect.transport(sym.extracted[row].ring()));
    }

    // a single nonzero deformation leaves a nonzero obstruction
    Poly a2 = Poly::variable(rb, "a") * Poly::variable(rb, "a");
    auto off = residual_computation(inst, a2, z, z, z);
    bool some_nonzero = false;
    for (const auto& e : off.extracted) some_nonzero |= !e.is_zero();
    CHECK(some_nonzero);
}

TEST_CASE("nonzero deformation breaks the square membership") {
    Instance inst = worked_example_instance();
    RingPtr rb = rings::base();
    Poly a2 = Poly::variable(rb, "a") * Poly::variable(rb, "a");
    Poly zero(rb);
    PolyMatrix B = composite_matrix(inst, rb, a2, zero, zero, zero);
    std::vector<ModuleVec> gens{{Poly::constant(rb, Rational(1)), Poly(rb), Poly(rb)},
                                {Poly(rb), lin_f(inst, rb) + a2, Poly(rb)},
                                {Poly(rb), Poly(rb), lin_g(inst, rb)}};
    Poly fd = (lin_f(inst, rb) + a2) * (lin_f(inst, rb) + a2) * Poly::variable(rb, "d");
    ModuleVec target{Poly(rb), Poly(rb), fd};
    auto w = graded_submodule_membership(rb, target, {0, 1, 1}, gens, presentation_matrix(rb), 6);
    CHECK(!w.has_value());
}

TEST_CASE("certificates replay and detect tampering") {
    Instance inst = worked_example_instance();
    KernelCertificate cert = make_certificate(inst);
    CHECK(verify_certificate(cert));

    KernelCertificate bad = cert;
    RingPtr S = rings::wprime();
    bad.sq1 += Poly::parse(S, "a^2*y1^2");  // weight-6 perturbation
    CHECK(!verify_certificate(bad));

    KernelCertificate bad2 = cert;
    bad2.w_sq1[2] += Poly::variable(rings::base(), "a");
    CHECK(!verify_certificate(bad2));
}

TEST_CASE("degenerate stratum memberships") {
    Instance dg = degenerate_instance();
    DegenerateReport rep = degenerate_extension(dg, 2024);
    CHECK(rep.sq1_member_formal);
    CHECK(rep.sq2_member_formal);
    CHECK(!rep.conic_member_formal);
    CHECK(!rep.conic_member_generic);
    CHECK(rep.conic_member_zero);
    CHECK(rep.direct_route_agrees);

    CHECK_THROWS_AS(degenerate_extension(worked_example_instance(), 1), WrongStratum);

    for (const Instance& r : generate_instances(5150, 3, Stratum::Delta1Zero)) {
        DegenerateReport rr = degenerate_extension(r, 99);
        CHECK(rr.sq1_member_formal);
        CHECK(rr.sq2_member_formal);
        CHECK(!rr.conic_member_generic);
        CHECK(rr.conic_member_zero);
    }
}

TEST_CASE("restricted kernel equations lie in the image ideal") {
    Instance inst = worked_example_instance();
    KernelCertificate cert = make_certificate(inst);
    RingPtr t = rings::tprime();
    auto imgs = image_equations(inst);
    auto gb = buchberger(t, {imgs[0], imgs[1], imgs[2], imgs[3]});
    RingPtr S = rings::wprime();
    std::vector<std::pair<std::size_t, Rational>> zeros;
    for (const char* n : {"a", "b", "c", "d"}) zeros.push_back({*S->var_index(n), Rational(0)});
    for (const Poly* eq : {&cert.sq1, &cert.sq2, &cert.mixed, &cert.conic[0], &cert.conic[1],
                           &cert.conic[2]}) {
        Poly restricted = eq->substitute_vars(zeros).transport(t);
        CHECK(normal_form(restricted, gb).is_zero());
    }
}

TEST_CASE("vanishing resultant coincides with shared parametrized roots") {
    SplitMix64 rng(1234);
    int built = 0;
    while (built < 20) {
        // cubics u(u - p v)(u - p' v) and beta1 v(u - p v)(u - s v) share u = p v
        Rational p = rng.small_rational_nonzero();
        Rational pp = rng.small_rational();
        Rational s = rng.small_rational_nonzero();
        if ((p * s).is_zero()) continue;
        Instance inst;
        inst.alpha1 = -(p + pp);
        inst.alpha2 = p * pp;
        inst.beta1 = (p * s).inverse();
        inst.beta2 = -(p + s) * inst.beta1;
        Deltas dl = deltas_of(inst);
        CHECK(dl.disc.is_zero());
        CHECK(dl.det_resultant.is_zero());
        // both cubic images vanish at the shared root (u, v) = (p, 1)
        RingPtr uv = rings::uv();
        Poly z1img = Poly::parse(uv, "u^3") + inst.alpha1 * Poly::parse(uv, "u^2*v") +
                     inst.alpha2 * Poly::parse(uv, "u*v^2");
        Poly z2img = inst.beta1 * Poly::parse(uv, "u^2*v") + inst.beta2 * Poly::parse(uv, "u*v^2") +
                     Poly::parse(uv, "v^3");
        CHECK(z1img.evaluate({p, Rational(1)}).is_zero());
        CHECK(z2img.evaluate({p, Rational(1)}).is_zero());
        ++built;
    }

    // the anomaly coordinates named by the special stratum: alpha2 = beta1 = 1
    // with delta2 = 0 collapse the resultant entirely
    Instance bad;
    bad.alpha2 = Rational(1);
    bad.beta1 = Rational(1);
    bad.alpha1 = Rational(4);
    bad.beta2 = Rational(4);  // delta2 = alpha1 - alpha2 beta2 = 0
    CHECK(deltas_of(bad).disc.is_zero());
    CHECK_THROWS_AS(curve_embedding(bad), SharedRoot);
}

TEST_CASE("instance generation strata") {
    auto a = generate_instances(4242, 5, Stratum::Generic);
    auto b = generate_instances(4242, 5, Stratum::Generic);
    for (int i = 0; i < 5; ++i) {
        CHECK(a[i].alpha1 == b[i].alpha1);
        CHECK(a[i].l1 == b[i].l1);
    }
    for (const Instance& r : generate_instances(31337, 30, Stratum::Generic)) {
        Deltas dl = deltas_of(r);
        CHECK(dl.generic());
    }
    for (const Instance& r : generate_instances(31337, 10, Stratum::Delta1Zero)) {
        CHECK(r.alpha2 * r.beta1 == Rational(1));
        Deltas dl = deltas_of(r);
        CHECK(dl.d1.is_zero());
        CHECK(!(dl.d2 * dl.d3).is_zero());
    }
}
