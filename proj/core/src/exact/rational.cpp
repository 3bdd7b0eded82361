#include "solvact/exact/rational.hpp"

#include <cmath>
#include <ostream>

#include "solvact/errors.hpp"

namespace solvact::exact {

namespace {

bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

BigInt parse_integer(std::string_view s) {
    if (!s.empty() && s[0] == '+') s.remove_prefix(1);
    return BigInt(std::string(s), 10);
}

}  // namespace

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw InputError("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!is_integer_literal(text)) {
            throw InputError("malformed rational literal '" + std::string(text) + "'");
        }
        return Rational(parse_integer(text));
    }
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-') {
        throw InputError("malformed rational literal '" + std::string(text) + "'");
    }
    BigInt d = parse_integer(den);
    if (d == 0) {
        throw InputError("zero denominator in rational literal '" + std::string(text) + "'");
    }
    return Rational(parse_integer(num), d);
}

std::string Rational::str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

long double Rational::to_long_double() const {
    if (is_zero()) return 0.0L;
    // Leading 64 bits of numerator and denominator, then rescale.
    auto top64 = [](const mpz_class& a, long& shift) {
        mpz_class m = ::abs(a);
        long bits = static_cast<long>(mpz_sizeinbase(m.get_mpz_t(), 2));
        shift = bits > 64 ? bits - 64 : 0;
        mpz_class t = m >> static_cast<mp_bitcnt_t>(shift);
        return static_cast<long double>(mpz_getlimbn(t.get_mpz_t(), 0));
    };
    long sn = 0;
    long sd = 0;
    long double n = top64(q_.get_num(), sn);
    long double d = top64(q_.get_den(), sd);
    long double v = std::ldexp(n / d, static_cast<int>(sn - sd));
    return sign() < 0 ? -v : v;
}

Rational Rational::abs() const {
    Rational r;
    r.q_ = ::abs(q_);
    return r;
}

Rational Rational::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero rational");
    Rational r;
    r.q_ = 1 / q_;
    return r;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero rational");
    q_ /= o.q_;
    return *this;
}

Rational Rational::operator-() const {
    Rational r;
    r.q_ = -q_;
    return r;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

BigInt floor(const Rational& r) {
    BigInt out;
    mpz_fdiv_q(out.get_mpz_t(), r.raw().get_num_mpz_t(), r.raw().get_den_mpz_t());
    return out;
}

Rational pow2(long e) {
    BigInt p = 1;
    p <<= static_cast<mp_bitcnt_t>(e < 0 ? -e : e);
    return e < 0 ? Rational(BigInt(1), p) : Rational(p);
}

BigInt common_denominator(const RationalVector& v) {
    BigInt l = 1;
    for (const auto& r : v) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r.raw().get_den_mpz_t());
    }
    return l;
}

BigInt height(const Rational& r) {
    BigInt n = ::abs(r.numerator());
    BigInt d = r.denominator();
    return n > d ? n : d;
}

}  // namespace solvact::exact
