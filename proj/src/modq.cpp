#include "symdet/modq.hpp"

#include <algorithm>

#include "symdet/errors.hpp"
#include "symdet/rng.hpp"

namespace symdet::modq {

bool is_prime(std::uint64_t q) {
    if (q < 2) return false;
    for (std::uint64_t d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t q) { return (a + b) % q; }
std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t q) { return (a + q - b % q) % q; }
std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % q);
}

std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t q) {
    std::uint64_t r = 1 % q;
    a %= q;
    while (e) {
        if (e & 1u) r = mul(r, a, q);
        a = mul(a, a, q);
        e >>= 1u;
    }
    return r;
}

std::uint64_t inv(std::uint64_t a, std::uint64_t q) {
    if (a % q == 0) throw Error("inverse of zero mod q");
    return pow(a, q - 2, q);
}

std::vector<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t q) {
    a %= q;
    if (a == 0) return {0};
    if (pow(a, (q - 1) / 2, q) != 1) return {};
    std::uint64_t r;
    if (q % 4 == 3) {
        r = pow(a, (q + 1) / 4, q);
    } else {
        // Tonelli-Shanks
        std::uint64_t s = q - 1, e = 0;
        while (s % 2 == 0) {
            s /= 2;
            ++e;
        }
        std::uint64_t n = 2;
        while (pow(n, (q - 1) / 2, q) == 1) ++n;
        std::uint64_t x = pow(a, (s + 1) / 2, q);
        std::uint64_t b = pow(a, s, q);
        std::uint64_t g = pow(n, s, q);
        std::uint64_t rr = e;
        for (;;) {
            std::uint64_t t = b, m = 0;
            while (t != 1 && m < rr) {
                t = mul(t, t, q);
                ++m;
            }
            if (m == 0) {
                r = x;
                break;
            }
            std::uint64_t gs = pow(g, 1ull << (rr - m - 1), q);
            g = mul(gs, gs, q);
            x = mul(x, gs, q);
            b = mul(b, g, q);
            rr = m;
        }
    }
    std::uint64_t other = q - r;
    if (r == other) return {r};
    return {std::min(r, other), std::max(r, other)};
}

FqPoly reduce_mod(const Poly& p, std::uint64_t q) {
    if (q <= 3 || !is_prime(q)) throw BadPrime("scan modulus must be a prime > 3");
    FqPoly out;
    out.nvars = p.ring()->nvars();
    for (const auto& [m, c] : p.terms()) {
        auto r = c.mod(q);
        if (!r) throw BadPrime("coefficient denominator divisible by q");
        if (*r != 0) out.terms.emplace_back(m, *r);
    }
    return out;
}

std::uint64_t FqPoly::eval(const std::vector<std::uint64_t>& point, std::uint64_t q) const {
    std::uint64_t acc = 0;
    for (const auto& [m, c] : terms) {
        std::uint64_t t = c;
        for (std::size_t i = 0; i < m.size(); ++i)
            for (int e = 0; e < m[i]; ++e) t = mul(t, point[i], q);
        acc = add(acc, t, q);
    }
    return acc;
}

std::uint64_t eval_exact_mod(const Poly& p, const std::vector<std::uint64_t>& point,
                             std::uint64_t q) {
    mpz_class qz(static_cast<unsigned long>(q));
    mpz_class acc = 0;
    for (const auto& [m, c] : p.terms()) {
        mpz_class t = c.numerator();
        mpz_class den = c.denominator();
        mpz_class deninv;
        if (mpz_invert(deninv.get_mpz_t(), mpz_class(den % qz).get_mpz_t(), qz.get_mpz_t()) == 0)
            throw BadPrime("denominator not invertible mod q");
        t = (t % qz) * deninv % qz;
        for (std::size_t i = 0; i < m.size(); ++i) {
            mpz_class powv;
            mpz_class base(static_cast<unsigned long>(point[i]));
            mpz_powm_ui(powv.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(m[i]),
                        qz.get_mpz_t());
            t = t * powv % qz;
        }
        acc = (acc + t) % qz;
    }
    acc %= qz;
    if (acc < 0) acc += qz;
    return acc.get_ui();
}

std::size_t fq_rank(std::vector<std::vector<std::uint64_t>> m, std::uint64_t q) {
    if (m.empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size(), rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rows;
        for (std::size_t i = rank; i < rows; ++i)
            if (m[i][col] % q != 0) {
                piv = i;
                break;
            }
        if (piv == rows) continue;
        std::swap(m[rank], m[piv]);
        std::uint64_t s = inv(m[rank][col], q);
        for (std::size_t j = col; j < cols; ++j) m[rank][j] = mul(m[rank][j], s, q);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || m[i][col] % q == 0) continue;
            std::uint64_t f = m[i][col] % q;
            for (std::size_t j = col; j < cols; ++j)
                m[i][j] = sub(m[i][j], mul(f, m[rank][j], q), q);
        }
        ++rank;
    }
    return rank;
}

std::vector<std::vector<std::uint64_t>> fq_kernel(std::vector<std::vector<std::uint64_t>> m,
                                                  std::uint64_t q) {
    if (m.empty()) return {};
    std::size_t rows = m.size(), cols = m[0].size();
    std::vector<long> pivot_of_col(cols, -1);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rows;
        for (std::size_t i = rank; i < rows; ++i)
            if (m[i][col] % q != 0) {
                piv = i;
                break;
            }
        if (piv == rows) continue;
        std::swap(m[rank], m[piv]);
        std::uint64_t s = inv(m[rank][col], q);
        for (std::size_t j = 0; j < cols; ++j) m[rank][j] = mul(m[rank][j], s, q);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || m[i][col] % q == 0) continue;
            std::uint64_t f = m[i][col] % q;
            for (std::size_t j = 0; j < cols; ++j)
                m[i][j] = sub(m[i][j], mul(f, m[rank][j], q), q);
        }
        pivot_of_col[col] = static_cast<long>(rank);
        ++rank;
    }
    std::vector<std::vector<std::uint64_t>> basis;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (pivot_of_col[free_col] >= 0) continue;
        std::vector<std::uint64_t> v(cols, 0);
        v[free_col] = 1;
        for (std::size_t col = 0; col < cols; ++col)
            if (pivot_of_col[col] >= 0)
                v[col] = sub(0, m[static_cast<std::size_t>(pivot_of_col[col])][free_col], q);
        basis.push_back(std::move(v));
    }
    return basis;
}

namespace {

// Dense univariate arithmetic over F_q, low-to-high coefficients.
using FqVec = std::vector<std::uint64_t>;

void fqv_trim(FqVec& a, std::uint64_t q) {
    while (!a.empty() && a.back() % q == 0) a.pop_back();
}

FqVec fqv_mul(const FqVec& a, const FqVec& b, std::uint64_t q) {
    if (a.empty() || b.empty()) return {};
    FqVec c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = add(c[i + j], mul(a[i], b[j], q), q);
    fqv_trim(c, q);
    return c;
}

FqVec fqv_sub(FqVec a, const FqVec& b, std::uint64_t q) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = sub(a[i], b[i], q);
    fqv_trim(a, q);
    return a;
}

FqVec fqv_add(FqVec a, const FqVec& b, std::uint64_t q) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = add(a[i], b[i], q);
    fqv_trim(a, q);
    return a;
}

FqVec fqv_rem(FqVec a, const FqVec& m, std::uint64_t q) {
    fqv_trim(a, q);
    std::uint64_t leadinv = inv(m.back(), q);
    while (a.size() >= m.size()) {
        std::uint64_t f = mul(a.back(), leadinv, q);
        std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i)
            a[shift + i] = sub(a[shift + i], mul(f, m[i], q), q);
        fqv_trim(a, q);
    }
    return a;
}

FqVec fqv_gcd(FqVec a, FqVec b, std::uint64_t q) {
    fqv_trim(a, q);
    fqv_trim(b, q);
    while (!b.empty()) {
        FqVec r = fqv_rem(a, b, q);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        std::uint64_t s = inv(a.back(), q);
        for (auto& c : a) c = mul(c, s, q);
    }
    return a;
}

FqVec fqv_pow_mod(FqVec base, std::uint64_t e, const FqVec& m, std::uint64_t q) {
    FqVec r{1};
    base = fqv_rem(std::move(base), m, q);
    while (e) {
        if (e & 1u) r = fqv_rem(fqv_mul(r, base, q), m, q);
        base = fqv_rem(fqv_mul(base, base, q), m, q);
        e >>= 1u;
    }
    return r;
}

std::uint64_t fqv_eval(const FqVec& a, std::uint64_t x, std::uint64_t q) {
    std::uint64_t r = 0;
    for (std::size_t i = a.size(); i-- > 0;) r = add(mul(r, x, q), a[i], q);
    return r;
}

void split_roots(const FqVec& g, std::uint64_t q, SplitMix64& rng, std::vector<std::uint64_t>& out) {
    if (g.size() <= 1) return;
    if (g.size() == 2) {
        out.push_back(mul(sub(0, g[0], q), inv(g[1], q), q));
        return;
    }
    // g is squarefree and splits into linear factors; split with random shifts
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::uint64_t delta = rng.below(q);
        FqVec w = fqv_pow_mod(FqVec{delta, 1}, (q - 1) / 2, g, q);
        if (w.empty())
            w = FqVec{sub(0, 1, q)};
        else
            w[0] = sub(w[0], 1, q);
        fqv_trim(w, q);
        FqVec d = w.empty() ? FqVec{} : fqv_gcd(g, w, q);
        if (d.size() > 1 && d.size() < g.size()) {
            split_roots(d, q, rng, out);
            // g / d by long division
            FqVec quot;
            FqVec rem = g;
            std::uint64_t leadinv = inv(d.back(), q);
            quot.assign(g.size() - d.size() + 1, 0);
            while (rem.size() >= d.size()) {
                std::uint64_t f = mul(rem.back(), leadinv, q);
                std::size_t shift = rem.size() - d.size();
                quot[shift] = f;
                for (std::size_t i = 0; i < d.size(); ++i)
                    rem[shift + i] = sub(rem[shift + i], mul(f, d[i], q), q);
                fqv_trim(rem, q);
                if (rem.empty()) break;
            }
            fqv_trim(quot, q);
            split_roots(quot, q, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<std::uint64_t> fq_univariate_roots(std::vector<std::uint64_t> coeffs, std::uint64_t q,
                                               std::uint64_t seed) {
    for (auto& c : coeffs) c %= q;
    fqv_trim(coeffs, q);
    std::vector<std::uint64_t> roots;
    if (coeffs.size() <= 1) return roots;  // constants (including zero) have no isolated roots
    // distinct F_q-roots: gcd(f, x^q - x)
    FqVec xq = fqv_pow_mod(FqVec{0, 1}, q, coeffs, q);
    FqVec xq_minus_x = fqv_sub(xq, FqVec{0, 1}, q);
    FqVec g = xq_minus_x.empty() ? coeffs : fqv_gcd(coeffs, xq_minus_x, q);
    if (!g.empty()) {
        SplitMix64 rng(seed ^ 0x9e3779b97f4a7c15ull);
        split_roots(g, q, rng, roots);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

namespace {

// Coefficients of an equation as a polynomial in (z1, z2) after fixing all
// other coordinates: index [e1][e2] with e1+e2 <= 2 observed in this project.
struct BiCoeffs {
    std::uint64_t c[3][3] = {};
    int max1 = 0, max2 = 0;
};

// The equation as a polynomial in z2 with z1-polynomial coefficients.
std::array<FqVec, 3> z2_coefficients(const BiCoeffs& bc, std::uint64_t q) {
    std::array<FqVec, 3> out;
    for (int e2 = 0; e2 <= 2; ++e2) {
        FqVec v{bc.c[0][e2], bc.c[1][e2], bc.c[2][e2]};
        fqv_trim(v, q);
        out[e2] = v;
    }
    return out;
}

// Resultant in z2 of two equations of z2-degree at most 2, as a polynomial
// in z1. Spurious roots from leading-coefficient collapse are harmless: every
// candidate is verified pointwise afterwards.
FqVec z2_resultant(const BiCoeffs& p, const BiCoeffs& r, std::uint64_t q) {
    auto [C1, B1, A1] = z2_coefficients(p, q);
    auto [C2, B2, A2] = z2_coefficients(r, q);
    int d1 = p.max2, d2 = r.max2;
    if (d1 == 2 && d2 == 2) {
        FqVec ac = fqv_sub(fqv_mul(A1, C2, q), fqv_mul(A2, C1, q), q);
        FqVec ab = fqv_sub(fqv_mul(A1, B2, q), fqv_mul(A2, B1, q), q);
        FqVec bc = fqv_sub(fqv_mul(B1, C2, q), fqv_mul(B2, C1, q), q);
        return fqv_sub(fqv_mul(ac, ac, q), fqv_mul(ab, bc, q), q);
    }
    if (d1 == 2 && d2 == 1) {
        // quadratic evaluated at the linear root, cleared of denominators
        FqVec t = fqv_sub(fqv_mul(A1, fqv_mul(C2, C2, q), q),
                          fqv_mul(B1, fqv_mul(B2, C2, q), q), q);
        return fqv_add(std::move(t), fqv_mul(C1, fqv_mul(B2, B2, q), q), q);
    }
    if (d1 == 1 && d2 == 2) return z2_resultant(r, p, q);
    // both linear
    return fqv_sub(fqv_mul(B1, C2, q), fqv_mul(B2, C1, q), q);
}

BiCoeffs bivariate_coeffs(const FqPoly& p, const std::vector<std::uint64_t>& point,
                          std::size_t i1, std::size_t i2, std::uint64_t q) {
    BiCoeffs out;
    for (const auto& [m, c] : p.terms) {
        std::uint64_t t = c;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == i1 || i == i2) continue;
            for (int e = 0; e < m[i]; ++e) t = mul(t, point[i], q);
        }
        int e1 = m[i1], e2 = m[i2];
        if (e1 > 2 || e2 > 2) throw Error("scan expects z-degree at most 2");
        out.c[e1][e2] = add(out.c[e1][e2], t, q);
        out.max1 = std::max(out.max1, e1);
        out.max2 = std::max(out.max2, e2);
    }
    return out;
}

}  // namespace

ScanReport quasismooth_scan(const std::vector<Poly>& equations, const RingPtr& ring,
                            std::uint64_t q, long n_samples, std::uint64_t seed) {
    if (q <= 3 || !is_prime(q)) throw BadPrime("scan modulus must be a prime > 3");
    const std::size_t n = ring->nvars();
    auto z1i = ring->var_index("z1");
    auto z2i = ring->var_index("z2");
    if (!z1i || !z2i) throw Error("scan ring must contain z1 and z2");

    std::vector<FqPoly> eqs, jac;
    std::vector<Poly> jac_exact;
    for (const auto& e : equations) {
        eqs.push_back(reduce_mod(e, q));
        for (std::size_t v = 0; v < n; ++v) {
            Poly dp = e.derivative(v);
            jac.push_back(reduce_mod(dp, q));
            jac_exact.push_back(dp);
        }
    }
    // Equations whose support avoids both z's get repaired per fiber: the
    // plain-linear ones by a joint solve, the rest one variable at a time.
    std::vector<std::size_t> z_linear, z_free, z_bound;
    for (std::size_t k = 0; k < equations.size(); ++k) {
        const Poly& e = equations[k];
        if (e.depends_on(*z1i) || e.depends_on(*z2i)) {
            z_bound.push_back(k);
            continue;
        }
        bool linear = true;
        for (const auto& [m, c] : e.terms()) {
            int total = 0;
            for (int x : m) total += x;
            if (total > 1) linear = false;
        }
        (linear ? z_linear : z_free).push_back(k);
    }
    std::vector<std::size_t> linear_vars;  // columns of the joint linear solve
    {
        std::vector<bool> seen(n, false);
        for (std::size_t k : z_linear)
            for (std::size_t v = 0; v < n; ++v)
                if (equations[k].depends_on(v) && !seen[v]) {
                    seen[v] = true;
                    linear_vars.push_back(v);
                }
    }

    std::vector<bool> odd_weight(n);
    for (std::size_t i = 0; i < n; ++i) odd_weight[i] = ring->weight(i) % 2 == 1;

    ScanReport rep;
    rep.q = q;
    rep.seed = seed;
    rep.samples_requested = n_samples;
    SplitMix64 rng(seed);

    const long fiber_budget = n_samples * 8 + 64;
    std::vector<std::uint64_t> pt(n, 0);
    while (rep.on_variety < n_samples && rep.fibers_tried < fiber_budget) {
        ++rep.fibers_tried;
        for (std::size_t i = 0; i < n; ++i) pt[i] = rng.below(q);
        pt[*z1i] = pt[*z2i] = 0;

        bool fiber_ok = true;
        // joint solve of the linear z-free equations over their variables,
        // with a seeded random point of the solution space
        if (!z_linear.empty()) {
            std::size_t cols = linear_vars.size();
            std::vector<std::vector<std::uint64_t>> M;
            std::vector<std::uint64_t> rhs;
            for (std::size_t k : z_linear) {
                std::vector<std::uint64_t> row(cols, 0);
                std::uint64_t cst = 0;
                for (const auto& [m, c] : eqs[k].terms) {
                    std::size_t vi = n;
                    for (std::size_t v = 0; v < n; ++v)
                        if (m[v] == 1) vi = v;
                    if (vi == n) {
                        cst = add(cst, c, q);
                        continue;
                    }
                    auto it = std::find(linear_vars.begin(), linear_vars.end(), vi);
                    row[static_cast<std::size_t>(it - linear_vars.begin())] =
                        add(row[static_cast<std::size_t>(it - linear_vars.begin())], c, q);
                }
                M.push_back(std::move(row));
                rhs.push_back(sub(0, cst, q));
            }
            // particular solution + random kernel combination
            std::vector<std::vector<std::uint64_t>> aug = M;
            for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(rhs[i]);
            if (fq_rank(M, q) != fq_rank(aug, q)) {
                continue;  // inconsistent fiber (cannot happen for homogeneous rows)
            }
            // solve by elimination on the augmented system with rhs
            std::vector<std::vector<std::uint64_t>> W = M;
            std::vector<std::uint64_t> b = rhs;
            std::vector<long> pivot_of_col(cols, -1);
            std::size_t rank = 0;
            for (std::size_t col = 0; col < cols && rank < W.size(); ++col) {
                std::size_t piv = W.size();
                for (std::size_t i = rank; i < W.size(); ++i)
                    if (W[i][col] % q != 0) { piv = i; break; }
                if (piv == W.size()) continue;
                std::swap(W[rank], W[piv]);
                std::swap(b[rank], b[piv]);
                std::uint64_t s = inv(W[rank][col], q);
                for (std::size_t j = 0; j < cols; ++j) W[rank][j] = mul(W[rank][j], s, q);
                b[rank] = mul(b[rank], s, q);
                for (std::size_t i = 0; i < W.size(); ++i) {
                    if (i == rank || W[i][col] % q == 0) continue;
                    std::uint64_t f = W[i][col];
                    for (std::size_t j = 0; j < cols; ++j)
                        W[i][j] = sub(W[i][j], mul(f, W[rank][j], q), q);
                    b[i] = sub(b[i], mul(f, b[rank], q), q);
                }
                pivot_of_col[col] = static_cast<long>(rank);
                ++rank;
            }
            std::vector<std::uint64_t> x(cols, 0);
            for (std::size_t col = 0; col < cols; ++col)
                if (pivot_of_col[col] < 0) x[col] = rng.below(q);  // free variable
            for (std::size_t col = 0; col < cols; ++col) {
                if (pivot_of_col[col] < 0) continue;
                std::size_t rrow = static_cast<std::size_t>(pivot_of_col[col]);
                std::uint64_t val = b[rrow];
                for (std::size_t j = 0; j < cols; ++j)
                    if (j != col && pivot_of_col[j] < 0)
                        val = sub(val, mul(W[rrow][j], x[j], q), q);
                x[col] = val;
            }
            for (std::size_t j = 0; j < cols; ++j) pt[linear_vars[j]] = x[j];
        }

        // repair the remaining z-free equations, each claiming a fresh variable
        std::vector<bool> claimed(n, false);
        for (std::size_t v : linear_vars) claimed[v] = true;
        for (std::size_t k : z_free) {
            const Poly& e = equations[k];
            std::size_t solve_var = n;
            for (std::size_t v = n; v-- > 0;) {
                if (v == *z1i || v == *z2i || claimed[v]) continue;
                if (e.depends_on(v)) {
                    solve_var = v;
                    break;
                }
            }
            if (solve_var == n) {
                fiber_ok = false;
                break;
            }
            claimed[solve_var] = true;
            int deg = e.degree_in(solve_var);
            BiCoeffs bc = bivariate_coeffs(eqs[k], pt, solve_var, solve_var == *z1i ? *z2i : *z1i,
                                           q);
            // univariate coefficients in the solve variable
            std::uint64_t c0 = bc.c[0][0], c1 = bc.c[1][0], c2 = bc.c[2][0];
            if (deg == 1) {
                if (c1 % q == 0) {
                    fiber_ok = false;
                    break;
                }
                pt[solve_var] = mul(sub(0, c0, q), inv(c1, q), q);
            } else if (deg == 2) {
                if (c2 % q == 0) {
                    fiber_ok = false;
                    break;
                }
                // x = (-c1 +- sqrt(c1^2 - 4 c0 c2)) / (2 c2)
                std::uint64_t disc = sub(mul(c1, c1, q), mul(4, mul(c0, c2, q), q), q);
                auto roots = sqrt_mod(disc, q);
                if (roots.empty()) {
                    fiber_ok = false;
                    break;
                }
                std::uint64_t root = roots[rng.below(roots.size())];
                pt[solve_var] = mul(sub(root, c1, q), inv(mul(2, c2, q), q), q);
            } else {
                fiber_ok = false;
                break;
            }
        }
        if (!fiber_ok) continue;

        // eliminate z2, take z1 from the resultant roots, then solve for z2
        std::vector<BiCoeffs> bcs;
        for (std::size_t k : z_bound) bcs.push_back(bivariate_coeffs(eqs[k], pt, *z1i, *z2i, q));
        std::vector<FqVec> constraints;
        std::vector<const BiCoeffs*> with_z2;
        for (const auto& bc : bcs) {
            if (bc.max2 == 0) {
                FqVec v{bc.c[0][0], bc.c[1][0], bc.c[2][0]};
                fqv_trim(v, q);
                constraints.push_back(std::move(v));
            } else {
                with_z2.push_back(&bc);
            }
        }
        for (std::size_t k = 0; k + 1 < with_z2.size(); ++k)
            constraints.push_back(z2_resultant(*with_z2[k], *with_z2[k + 1], q));
        std::vector<std::uint64_t> z1cands;
        bool constrained = false, inconsistent = false;
        for (const auto& c : constraints) {
            if (c.empty()) continue;  // identically satisfied
            if (c.size() == 1) {
                inconsistent = true;  // nonzero constant
                break;
            }
            if (!constrained) {
                z1cands = fq_univariate_roots(c, q, rng.next());
                constrained = true;
            } else {
                std::vector<std::uint64_t> keep;
                for (std::uint64_t r : z1cands)
                    if (fqv_eval(c, r, q) == 0) keep.push_back(r);
                z1cands = std::move(keep);
            }
        }
        if (inconsistent) continue;
        if (!constrained)
            for (int k = 0; k < 4; ++k) z1cands.push_back(rng.below(q));
        for (std::uint64_t z1v : z1cands) {
            if (rep.on_variety >= n_samples) break;
            // collect candidate z2 values from the first equation that pins z2
            std::vector<std::uint64_t> cands;
            bool pinned = false;
            for (std::size_t kk = 0; kk < bcs.size() && !pinned; ++kk) {
                const BiCoeffs& bc = bcs[kk];
                std::uint64_t a0 = 0, a1 = 0, a2 = 0;  // in z2
                for (int e1 = 0; e1 <= 2; ++e1) {
                    std::uint64_t zp = pow(z1v, e1, q);
                    a0 = add(a0, mul(bc.c[e1][0], zp, q), q);
                    a1 = add(a1, mul(bc.c[e1][1], zp, q), q);
                    a2 = add(a2, mul(bc.c[e1][2], zp, q), q);
                }
                if (a2 % q != 0) {
                    std::uint64_t disc = sub(mul(a1, a1, q), mul(4, mul(a0, a2, q), q), q);
                    for (std::uint64_t rt : sqrt_mod(disc, q))
                        cands.push_back(mul(sub(rt, a1, q), inv(mul(2, a2, q), q), q));
                    pinned = true;
                } else if (a1 % q != 0) {
                    cands.push_back(mul(sub(0, a0, q), inv(a1, q), q));
                    pinned = true;
                } else if (a0 % q != 0) {
                    pinned = true;  // inconsistent: no z2
                }
            }
            if (!pinned) continue;  // z2 unconstrained on this fiber; skip
            pt[*z1i] = z1v;
            for (std::uint64_t z2v : cands) {
                pt[*z2i] = z2v;
                bool on = true;
                for (const auto& e : eqs)
                    if (e.eval(pt, q) != 0) {
                        on = false;
                        break;
                    }
                if (!on) continue;
                bool origin = true, fixed = true;
                for (std::size_t i = 0; i < n; ++i) {
                    if (pt[i] != 0) origin = false;
                    if (odd_weight[i] && pt[i] != 0) fixed = false;
                }
                if (origin) continue;
                ++rep.on_variety;
                if (fixed) ++rep.fixed_locus_hits;

                std::vector<std::vector<std::uint64_t>> J(equations.size(),
                                                          std::vector<std::uint64_t>(n));
                for (std::size_t k = 0; k < equations.size(); ++k)
                    for (std::size_t v = 0; v < n; ++v) J[k][v] = jac[k * n + v].eval(pt, q);
                int rank = static_cast<int>(fq_rank(J, q));
                if (rank < static_cast<int>(equations.size()) && !fixed) {
                    // re-verify with the independent exact evaluator
                    bool confirmed = true;
                    for (const auto& e : equations)
                        if (eval_exact_mod(e, pt, q) != 0) confirmed = false;
                    std::vector<std::vector<std::uint64_t>> J2(equations.size(),
                                                               std::vector<std::uint64_t>(n));
                    for (std::size_t k = 0; k < equations.size(); ++k)
                        for (std::size_t v = 0; v < n; ++v)
                            J2[k][v] = eval_exact_mod(jac_exact[k * n + v], pt, q);
                    if (static_cast<int>(fq_rank(J2, q)) != rank) confirmed = false;
                    if (confirmed)
                        rep.drops.push_back({pt, rank, static_cast<int>(equations.size())});
                    else
                        rep.all_drops_reverified = false;
                }
            }
            pt[*z2i] = 0;
        }
    }
    return rep;
}

std::vector<std::vector<std::uint64_t>> plane_projective_points(const std::vector<Poly>& eqs,
                                                                std::uint64_t q) {
    if (!is_prime(q)) throw BadPrime("plane point count needs a prime modulus");
    std::vector<FqPoly> fq;
    std::size_t n = 0;
    for (const auto& e : eqs) {
        fq.push_back(reduce_mod(e, q));
        n = e.ring()->nvars();
    }
    if (n != 3) throw Error("plane point enumeration expects three coordinates");
    std::vector<std::vector<std::uint64_t>> found;
    // charts: first nonzero coordinate normalized to 1
    for (std::size_t chart = 0; chart < 3; ++chart) {
        std::vector<std::uint64_t> pt(3, 0);
        pt[chart] = 1;
        std::vector<std::size_t> free;
        for (std::size_t i = chart + 1; i < 3; ++i) free.push_back(i);
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < free.size(); ++i) count *= q;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            std::uint64_t rest = idx;
            for (std::size_t i = 0; i < free.size(); ++i) {
                pt[free[i]] = rest % q;
                rest /= q;
            }
            bool on = true;
            for (const auto& e : fq)
                if (e.eval(pt, q) != 0) {
                    on = false;
                    break;
                }
            if (on) found.push_back(pt);
        }
    }
    return found;
}

}  // namespace symdet::modq
