#include "symdet/rational.hpp"

#include <ostream>

#include "symdet/errors.hpp"

namespace symdet {

Rational::Rational(long n, long d) {
    if (d == 0) throw Error("rational with zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational Rational::from_string(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw ParseError("bad rational literal: " + s);
    if (q.get_den() == 0) throw ParseError("zero denominator: " + s);
    q.canonicalize();
    return Rational(q);
}

std::string Rational::str() const { return v_.get_str(); }

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw Error("division by zero rational");
    v_ /= o.v_;
    return *this;
}

Rational Rational::inverse() const {
    if (is_zero()) throw Error("inverse of zero");
    return Rational(mpq_class(1) / v_);
}

std::optional<Rational> Rational::sqrt_exact() const {
    if (sign() < 0) return std::nullopt;
    mpz_class num = v_.get_num(), den = v_.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return Rational(mpq_class(rn, rd));
}

std::optional<std::uint64_t> Rational::mod(std::uint64_t q) const {
    mpz_class num = v_.get_num(), den = v_.get_den();
    mpz_class qz(static_cast<unsigned long>(q));
    mpz_class dm = den % qz;
    if (dm == 0) return std::nullopt;
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), dm.get_mpz_t(), qz.get_mpz_t()) == 0) return std::nullopt;
    mpz_class nm = num % qz;
    if (nm < 0) nm += qz;
    mpz_class r = (nm * inv) % qz;
    return r.get_ui();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace symdet
