#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symdet/rational.hpp"
#include "symdet/ring.hpp"

namespace symdet {

// Sparse multivariate polynomial over Rational in a fixed RingSpec.
// Canonical form: no stored zero coefficients, terms keyed by exponent
// vector under the ring's monomial order. Values are immutable in spirit:
// every operation returns a fresh polynomial.
class Poly {
public:
    struct MonoCmp {
        const RingSpec* ring = nullptr;
        bool operator()(const Monomial& a, const Monomial& b) const { return ring->compare(a, b) < 0; }
    };
    using TermMap = std::map<Monomial, Rational, MonoCmp>;

    Poly() = default;  // no ring; only valid as a moved-from placeholder
    explicit Poly(RingPtr ring);

    static Poly zero(RingPtr ring) { return Poly(std::move(ring)); }
    static Poly constant(RingPtr ring, const Rational& c);
    static Poly variable(RingPtr ring, std::size_t index);
    static Poly variable(RingPtr ring, const std::string& name);
    static Poly monomial(RingPtr ring, Monomial m, const Rational& c);

    // Canonical text form: terms in descending monomial order, rational
    // coefficients as "p/q". This is the interchange format used by the
    // serializers and the CLI.
    std::string str() const;
    static Poly parse(RingPtr ring, const std::string& text);

    const RingPtr& ring() const { return ring_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t num_terms() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    const Monomial& leading_monomial() const;
    const Rational& leading_coeff() const;

    Rational coeff(const Monomial& m) const;

    // Weighted degree when homogeneous, nullopt when mixed.
    // Throws ZeroPolynomial on the zero polynomial.
    std::optional<long> weighted_degree() const;
    bool is_homogeneous() const;
    long max_weighted_degree() const;  // 0 for the zero polynomial
    int degree_in(std::size_t var) const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }
    friend Poly operator*(const Rational& c, const Poly& p);
    friend Poly operator*(const Poly& p, const Rational& c) { return c * p; }
    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly pow(unsigned e) const;
    Poly monic() const;  // divide by the leading coefficient

    // Pullback along the substitution var i -> images[i]. All images must
    // live in one common ring; throws MissingImage when an image is absent.
    Poly apply_hom(const std::vector<Poly>& images, RingPtr target) const;

    Poly derivative(std::size_t var) const;
    Rational evaluate(const std::vector<Rational>& point) const;

    // Variable-name-based transport into another ring; every variable in the
    // support must exist in the target. Weights may differ (degree halving).
    Poly transport(RingPtr target) const;

    // Substitute zero (or a constant) for the named subset of variables.
    Poly substitute_vars(const std::vector<std::pair<std::size_t, Rational>>& values) const;

    // Exact quotient *this / q, or nullopt when q does not divide exactly.
    std::optional<Poly> divide_exact(const Poly& q) const;

    bool depends_on(std::size_t var) const;

    void add_term(const Monomial& m, const Rational& c);  // in-place accumulate

private:
    RingPtr ring_;
    TermMap terms_;
};

// Square root of a homogeneous binary form: returns q with q*q == p and a
// positive leading coefficient, or nullopt when p is not a perfect square.
// The ring must have exactly two variables.
std::optional<Poly> perfect_square_root(const Poly& p);

}  // namespace symdet
