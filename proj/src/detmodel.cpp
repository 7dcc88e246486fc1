#include "symdet/detmodel.hpp"

#include "symdet/errors.hpp"

namespace symdet::detmodel {

namespace {

Poly yvar(const RingPtr& r, int i) { return Poly::variable(r, "y" + std::to_string(i)); }
Poly zvar(const RingPtr& r, int i) { return Poly::variable(r, "z" + std::to_string(i)); }

bool entries_ok(const PolyMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Poly& e = m.at(i, j);
            if (e.is_zero()) continue;
            if (e.weighted_degree() != std::optional<long>(2)) return false;
            for (int z = 1; z <= 4; ++z) {
                auto idx = e.ring()->var_index("z" + std::to_string(z));
                if (idx && e.depends_on(*idx)) return false;
            }
        }
    return true;
}

bool detect_block_form(const PolyMatrix& m) {
    const RingPtr& r = m.ring();
    if (!(m.at(0, 3).is_zero() && m.at(1, 2).is_zero())) return false;
    if (m.at(2, 2) != yvar(r, 1) || m.at(2, 3) != yvar(r, 2) || m.at(3, 3) != yvar(r, 3))
        return false;
    if (m.at(0, 1) != yvar(r, 4)) return false;
    // A-slot leads with y1, B-slot trails with y3, both free of y4.
    auto y4 = r->var_index("y4");
    if (m.at(0, 2).depends_on(*y4) || m.at(1, 3).depends_on(*y4)) return false;
    if (m.at(0, 0).depends_on(*y4) || m.at(1, 1).depends_on(*y4)) return false;
    auto y1 = r->var_index("y1");
    auto y3 = r->var_index("y3");
    Monomial m1(r->nvars(), 0), m3(r->nvars(), 0);
    m1[*y1] = 1;
    m3[*y3] = 1;
    return m.at(1, 3).coeff(m1) == Rational(1) && m.at(0, 2).coeff(m3) == Rational(1);
}

}  // namespace

SymDetMatrix make_symdet(PolyMatrix m) {
    if (m.rows() != 4 || m.cols() != 4) throw Error("symmetric model matrix must be 4x4");
    if (!m.is_symmetric()) throw Error("model matrix must be symmetric");
    if (!entries_ok(m)) throw Error("model matrix entries must be weight-2 forms in the y's");
    bool bf = detect_block_form(m);
    return SymDetMatrix{std::move(m), bf};
}

SymDetMatrix build_block_matrix(const Poly& a_form, const Poly& b_form, const Rational& alpha1,
                                const Rational& alpha2, const Rational& beta1,
                                const Rational& beta2) {
    RingPtr r = rings::detmodel();
    Poly y1 = yvar(r, 1), y2 = yvar(r, 2), y3 = yvar(r, 3), y4 = yvar(r, 4);
    Poly A = y1 + alpha1 * y2 + alpha2 * y3;
    Poly B = beta1 * y1 + beta2 * y2 + y3;
    PolyMatrix m(r, 4, 4);
    m.at(0, 0) = b_form.transport(r);
    m.at(0, 1) = y4;
    m.at(0, 2) = B;
    m.at(0, 3) = Poly::zero(r);
    m.at(1, 1) = a_form.transport(r);
    m.at(1, 2) = Poly::zero(r);
    m.at(1, 3) = A;
    m.at(2, 2) = y1;
    m.at(2, 3) = y2;
    m.at(3, 3) = y3;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < i; ++j) m.at(i, j) = m.at(j, i);
    return make_symdet(std::move(m));
}

DetModelEquations model_equations(const SymDetMatrix& s) {
    const PolyMatrix& m = s.m;
    if (!m.is_symmetric()) throw Error("model_equations needs a symmetric matrix");
    const RingPtr& r = m.ring();
    DetModelEquations eqs;
    for (std::size_t j = 0; j < 4; ++j) {
        Poly row(r);
        for (std::size_t k = 0; k < 4; ++k) row += zvar(r, static_cast<int>(k) + 1) * m.at(k, j);
        eqs.linear.push_back(row);
    }
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i; j < 4; ++j)
            eqs.quadratic.push_back(cofactor(m, i, j) -
                                    zvar(r, static_cast<int>(i) + 1) * zvar(r, static_cast<int>(j) + 1));
    return eqs;
}

std::vector<Poly> contact_cubics(const SymDetMatrix& s) {
    std::vector<Poly> out;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i; j < 4; ++j) out.push_back(cofactor(s.m, i, j));
    return out;
}

std::vector<Poly> minor_ideal_generators(const SymDetMatrix& s) {
    std::vector<Poly> out;
    for (const auto& c : contact_cubics(s)) out.push_back(c.transport(rings::yspace()));
    return out;
}

int rank_at_point(const SymDetMatrix& s, const std::vector<Rational>& y_point) {
    if (y_point.size() != 4) throw Error("rank_at_point expects 4 y-coordinates");
    bool all_zero = true;
    for (const auto& c : y_point)
        if (!c.is_zero()) all_zero = false;
    if (all_zero) throw ZeroPoint("rank at the zero point is undefined");
    const RingPtr& r = s.m.ring();
    std::vector<Rational> full(r->nvars(), Rational(0));
    for (int i = 1; i <= 4; ++i) full[*r->var_index("y" + std::to_string(i))] = y_point[i - 1];
    return static_cast<int>(rational_rank(s.m.evaluate(full)));
}

ProjectedModel project_from_halfpoint(const SymDetMatrix& s) {
    if (!s.block_form) throw NotBlockForm("projection requires the normalized block matrix");
    Poly f_raw = cofactor(s.m, 0, 0);
    Poly g_raw = cofactor(s.m, 1, 1);
    ProjectedModel out{Poly(rings::plane()), Poly(rings::plane()), {Poly(rings::tprime()), Poly(rings::tprime())}, -1};
    out.branch_f = (Rational(out.cofactor_sign) * f_raw).transport(rings::plane());
    out.branch_g = (Rational(out.cofactor_sign) * g_raw).transport(rings::plane());
    RingPtr t = rings::tprime();
    out.z_squares[0] = zvar(t, 1) * zvar(t, 1) - out.branch_f.transport(t);
    out.z_squares[1] = zvar(t, 2) * zvar(t, 2) - out.branch_g.transport(t);
    return out;
}

BranchCertificate branch_identity_check(const SymDetMatrix& s) {
    if (!s.block_form) throw NotBlockForm("branch identity requires the block matrix");
    Poly d = det(s.m);
    const RingPtr& r = s.m.ring();
    std::size_t y4 = *r->var_index("y4");
    if (d.degree_in(y4) != 2)
        throw DecompositionFailure("det has y4-degree " + std::to_string(d.degree_in(y4)));
    RingPtr ys = rings::yspace();
    Poly alpha(ys), beta(ys), gamma(ys);
    for (const auto& [m, c] : d.terms()) {
        Monomial stripped(m);
        int e = stripped[y4];
        stripped[y4] = 0;
        Poly term = Poly::monomial(r, stripped, c).transport(ys);
        if (e == 2)
            alpha += term;
        else if (e == 1)
            beta += term;
        else if (e == 0)
            gamma += term;
        else
            throw DecompositionFailure("unexpected y4 exponent");
    }
    BranchCertificate cert{alpha, beta, gamma, beta * beta - Rational(4) * alpha * gamma,
                           Rational(0)};
    ProjectedModel pm = project_from_halfpoint(s);
    Poly product = (pm.branch_f * pm.branch_g).transport(ys);
    if (cert.sextic.is_zero()) throw DecompositionFailure("degenerate branch sextic");
    auto ratio = product.divide_exact(cert.sextic);
    if (!ratio || ratio->num_terms() != 1 || !ratio->is_homogeneous() ||
        ratio->weighted_degree() != std::optional<long>(0))
        throw DecompositionFailure("branch product is not a scalar multiple of the sextic");
    cert.constant = ratio->leading_coeff();
    return cert;
}

Poly truncate_even(const Poly& branch_f, const Poly& branch_g) {
    RingPtr t = rings::truncated();
    Poly w = Poly::variable(t, "w");
    return w * w - branch_f.transport(t) * branch_g.transport(t);
}

}  // namespace symdet::detmodel
