#include "symdet/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "symdet/errors.hpp"

namespace symdet {

Poly::Poly(RingPtr ring) : ring_(std::move(ring)), terms_(MonoCmp{ring_.get()}) {}

Poly Poly::constant(RingPtr ring, const Rational& c) {
    Poly p(std::move(ring));
    if (!c.is_zero()) p.terms_.emplace(Monomial(p.ring_->nvars(), 0), c);
    return p;
}

Poly Poly::variable(RingPtr ring, std::size_t index) {
    if (index >= ring->nvars()) throw IndexOutOfRange("variable index out of range");
    Poly p(std::move(ring));
    Monomial m(p.ring_->nvars(), 0);
    m[index] = 1;
    p.terms_.emplace(std::move(m), Rational(1));
    return p;
}

Poly Poly::variable(RingPtr ring, const std::string& name) {
    auto idx = ring->var_index(name);
    if (!idx) throw Error("no variable named " + name);
    return variable(std::move(ring), *idx);
}

Poly Poly::monomial(RingPtr ring, Monomial m, const Rational& c) {
    if (m.size() != ring->nvars()) throw Error("monomial arity mismatch");
    Poly p(std::move(ring));
    if (!c.is_zero()) p.terms_.emplace(std::move(m), c);
    return p;
}

const Monomial& Poly::leading_monomial() const {
    if (terms_.empty()) throw ZeroPolynomial("leading monomial of zero");
    return terms_.rbegin()->first;
}

const Rational& Poly::leading_coeff() const {
    if (terms_.empty()) throw ZeroPolynomial("leading coefficient of zero");
    return terms_.rbegin()->second;
}

Rational Poly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<long> Poly::weighted_degree() const {
    if (terms_.empty()) throw ZeroPolynomial("degree of zero polynomial");
    long d = ring_->weighted_degree(terms_.begin()->first);
    for (const auto& [m, c] : terms_)
        if (ring_->weighted_degree(m) != d) return std::nullopt;
    return d;
}

bool Poly::is_homogeneous() const {
    if (terms_.empty()) return true;
    return weighted_degree().has_value();
}

long Poly::max_weighted_degree() const {
    long d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, ring_->weighted_degree(m));
    return d;
}

int Poly::degree_in(std::size_t var) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
    return d;
}

bool Poly::depends_on(std::size_t var) const {
    for (const auto& [m, c] : terms_)
        if (m[var] != 0) return true;
    return false;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly r(ring_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

static void check_same_ring(const Poly& a, const Poly& b) {
    if (a.ring().get() != b.ring().get() && !a.ring()->same_structure(*b.ring()))
        throw RingMismatch("polynomials from different rings");
}

Poly& Poly::operator+=(const Poly& o) {
    check_same_ring(*this, o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    check_same_ring(*this, o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    check_same_ring(a, b);
    Poly r(a.ring_);
    Monomial m(a.ring_->nvars());
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

Poly operator*(const Rational& c, const Poly& p) {
    Poly r(p.ring_);
    if (c.is_zero()) return r;
    for (const auto& [m, pc] : p.terms_) r.terms_.emplace(m, c * pc);
    return r;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.ring_.get() != b.ring_.get() && !(a.ring_ && b.ring_ && a.ring_->same_structure(*b.ring_)))
        return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    for (; ia != a.terms_.end(); ++ia, ++ib)
        if (ia->first != ib->first || ia->second != ib->second) return false;
    return true;
}

Poly Poly::pow(unsigned e) const {
    Poly r = constant(ring_, Rational(1));
    Poly base = *this;
    while (e > 0) {
        if (e & 1u) r = r * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return r;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return leading_coeff().inverse() * *this;
}

Poly Poly::apply_hom(const std::vector<Poly>& images, RingPtr target) const {
    if (images.size() != ring_->nvars())
        throw MissingImage("substitution must assign every ring variable");
    for (const auto& img : images)
        if (!img.ring()) throw MissingImage("missing image polynomial");
    // Per-variable power cache; exponents stay small in this project.
    std::vector<std::vector<Poly>> powers(images.size());
    auto power = [&](std::size_t i, int e) -> const Poly& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(Poly::constant(target, Rational(1)));
        while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * images[i]);
        return cache[e];
    };
    Poly result(target);
    for (const auto& [m, c] : terms_) {
        Poly t = Poly::constant(target, c);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0) t = t * power(i, m[i]);
        result += t;
    }
    return result;
}

Poly Poly::derivative(std::size_t var) const {
    if (var >= ring_->nvars()) throw IndexOutOfRange("derivative variable out of range");
    Poly r(ring_);
    for (const auto& [m, c] : terms_) {
        if (m[var] == 0) continue;
        Monomial n = m;
        n[var] -= 1;
        r.add_term(n, Rational(m[var]) * c);
    }
    return r;
}

Rational Poly::evaluate(const std::vector<Rational>& point) const {
    if (point.size() != ring_->nvars()) throw Error("evaluation point arity mismatch");
    Rational total(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < m.size(); ++i)
            for (int e = 0; e < m[i]; ++e) t *= point[i];
        total += t;
    }
    return total;
}

Poly Poly::transport(RingPtr target) const {
    std::vector<int> index_map(ring_->nvars(), -1);
    Poly r(target);
    for (const auto& [m, c] : terms_) {
        Monomial n(target->nvars(), 0);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (index_map[i] < 0) {
                auto idx = target->var_index(ring_->var_name(i));
                if (!idx) throw RingMismatch("transport: target lacks variable " + ring_->var_name(i));
                index_map[i] = static_cast<int>(*idx);
            }
            n[index_map[i]] = m[i];
        }
        r.add_term(n, c);
    }
    return r;
}

Poly Poly::substitute_vars(const std::vector<std::pair<std::size_t, Rational>>& values) const {
    Poly r(ring_);
    for (const auto& [m, c] : terms_) {
        Rational factor = c;
        Monomial n = m;
        for (const auto& [var, val] : values) {
            if (n[var] == 0) continue;
            if (val.is_zero()) {
                factor = Rational(0);
                break;
            }
            for (int e = 0; e < n[var]; ++e) factor *= val;
            n[var] = 0;
        }
        r.add_term(n, factor);
    }
    return r;
}

std::optional<Poly> Poly::divide_exact(const Poly& q) const {
    check_same_ring(*this, q);
    if (q.is_zero()) throw Error("division by zero polynomial");
    Poly rem = *this;
    Poly quot(ring_);
    const Monomial& lmq = q.leading_monomial();
    const Rational& lcq = q.leading_coeff();
    while (!rem.is_zero()) {
        const Monomial& lm = rem.leading_monomial();
        Monomial diff(lm.size());
        for (std::size_t i = 0; i < lm.size(); ++i) {
            diff[i] = lm[i] - lmq[i];
            if (diff[i] < 0) return std::nullopt;
        }
        Rational cf = rem.leading_coeff() / lcq;
        Poly t = Poly::monomial(ring_, diff, cf);
        quot += t;
        rem -= t * q;
    }
    return quot;
}

// ---------------------------------------------------------------------------
// Text form

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rational mag = c.abs();
        if (first) {
            if (c.sign() < 0) os << "-";
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        bool has_vars = false;
        std::ostringstream mono;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (has_vars) mono << "*";
            mono << ring_->var_name(i);
            if (m[i] > 1) mono << "^" << m[i];
            has_vars = true;
        }
        if (!has_vars) {
            os << mag.str();
        } else if (mag.is_one()) {
            os << mono.str();
        } else {
            os << mag.str() << "*" << mono.str();
        }
    }
    return os.str();
}

namespace {

struct Lexer {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    char take() {
        skip_ws();
        return s[pos++];
    }
    std::string integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw ParseError("expected integer at position " + std::to_string(start));
        return s.substr(start, pos - start);
    }
    std::string identifier() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        if (start == pos) throw ParseError("expected identifier at position " + std::to_string(start));
        return s.substr(start, pos - start);
    }
};

}  // namespace

Poly Poly::parse(RingPtr ring, const std::string& text) {
    Lexer lx{text};
    Poly result(ring);
    bool first = true;
    while (!lx.eof()) {
        int sign = 1;
        char c = lx.peek();
        if (c == '+' || c == '-') {
            lx.take();
            sign = (c == '-') ? -1 : 1;
        } else if (!first) {
            throw ParseError("expected +/- between terms");
        }
        first = false;
        // One term: factors joined by '*'.
        Rational coeff(sign);
        Monomial mono(ring->nvars(), 0);
        bool any_factor = false;
        while (true) {
            char p = lx.peek();
            if (std::isdigit(static_cast<unsigned char>(p))) {
                std::string num = lx.integer();
                std::string lit = num;
                if (lx.peek() == '/') {
                    lx.take();
                    lit += "/" + lx.integer();
                }
                coeff *= Rational::from_string(lit);
                any_factor = true;
            } else if (std::isalpha(static_cast<unsigned char>(p)) || p == '_') {
                std::string name = lx.identifier();
                auto idx = ring->var_index(name);
                if (!idx) throw ParseError("unknown variable " + name);
                int e = 1;
                if (lx.peek() == '^') {
                    lx.take();
                    e = std::stoi(lx.integer());
                }
                mono[*idx] += e;
                any_factor = true;
            } else {
                throw ParseError("unexpected character in term");
            }
            if (lx.peek() == '*') {
                lx.take();
                continue;
            }
            break;
        }
        if (!any_factor) throw ParseError("empty term");
        result.add_term(mono, coeff);
    }
    return result;
}

// ---------------------------------------------------------------------------

std::optional<Poly> perfect_square_root(const Poly& p) {
    const RingPtr& ring = p.ring();
    if (ring->nvars() != 2) throw Error("perfect_square_root expects a binary form");
    if (p.is_zero()) return Poly::zero(ring);
    if (!p.is_homogeneous()) return std::nullopt;

    // Strip the exact powers of each variable; both must be even.
    int min_u = p.degree_in(0), min_v = p.degree_in(1);
    for (const auto& [m, c] : p.terms()) {
        min_u = std::min(min_u, m[0]);
        min_v = std::min(min_v, m[1]);
    }
    if (min_u % 2 != 0 || min_v % 2 != 0) return std::nullopt;

    // Stripped form r = sum c_k u^k v^(D-k) with c_0, c_D nonzero.
    int deg = 0;
    for (const auto& [m, c] : p.terms()) deg = std::max(deg, m[0] - min_u);
    if (deg % 2 != 0) return std::nullopt;
    std::vector<Rational> coeffs(deg + 1, Rational(0));
    for (const auto& [m, c] : p.terms()) coeffs[m[0] - min_u] = c;

    int half = deg / 2;
    auto lead_sqrt = coeffs[deg].sqrt_exact();
    if (!lead_sqrt) return std::nullopt;
    std::vector<Rational> root(half + 1, Rational(0));
    root[half] = *lead_sqrt;
    for (int k = half - 1; k >= 0; --k) {
        // Coefficient of u^(half+k) in root^2 is 2*root[half]*root[k] plus the
        // ordered pairs (i, half+k-i) with both indices strictly between k and half.
        Rational acc(0);
        for (int i = k + 1; i < half; ++i) acc += root[i] * root[half + k - i];
        root[k] = (coeffs[half + k] - acc) / (Rational(2) * root[half]);
    }
    Poly q(ring);
    for (int i = 0; i <= half; ++i) {
        if (root[i].is_zero()) continue;
        q.add_term(Monomial{i + min_u / 2, (half - i) + min_v / 2}, root[i]);
    }
    if (q * q != p) return std::nullopt;
    if (q.leading_coeff().sign() < 0) q = -q;
    return q;
}

}  // namespace symdet
