#include "solvact/exact/polynomial.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace solvact::exact {

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(std::initializer_list<long> coeffs) {
    c_.reserve(coeffs.size());
    for (long c : coeffs) c_.emplace_back(c);
    trim();
}

Polynomial Polynomial::constant(const Rational& c) { return Polynomial(std::vector<Rational>{c}); }

Polynomial Polynomial::monomial(const Rational& c, std::size_t power) {
    std::vector<Rational> v(power + 1);
    v[power] = c;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::linear_root(const Rational& r) {
    return Polynomial(std::vector<Rational>{-r, Rational(1)});
}

void Polynomial::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

std::optional<std::size_t> Polynomial::degree() const {
    if (c_.empty()) return std::nullopt;
    return c_.size() - 1;
}

std::size_t Polynomial::deg() const {
    if (c_.empty()) throw std::logic_error("degree of the zero polynomial");
    return c_.size() - 1;
}

Rational Polynomial::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

const Rational& Polynomial::leading() const {
    if (c_.empty()) throw std::logic_error("leading coefficient of the zero polynomial");
    return c_.back();
}

Rational Polynomial::eval(const Rational& x) const {
    Rational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double Polynomial::eval(double x) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->to_double();
    return acc;
}

long double Polynomial::eval(long double x) const {
    long double acc = 0.0L;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->to_long_double();
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
    if (c_.empty()) return {};
    Polynomial out = *this;
    Rational inv = c_.back().inverse();
    for (auto& c : out.c_) c *= inv;
    return out;
}

Polynomial Polynomial::reversed() const {
    std::vector<Rational> r(c_.rbegin(), c_.rend());
    return Polynomial(std::move(r));
}

Polynomial Polynomial::scaled_argument(const Rational& c) const {
    std::vector<Rational> r = c_;
    Rational p(1);
    for (auto& a : r) {
        a *= p;
        p *= c;
    }
    return Polynomial(std::move(r));
}

Polynomial Polynomial::compose(const Polynomial& q) const {
    Polynomial acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + constant(*it);
    return acc;
}

Polynomial Polynomial::squarefree_part() const {
    if (c_.empty()) return {};
    if (c_.size() == 1) return constant(Rational(1));
    return (*this / gcd(*this, derivative())).monic();
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
    if (c_.empty() || o.c_.empty()) {
        c_.clear();
        return *this;
    }
    std::vector<Rational> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    c_ = std::move(r);
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
    for (auto& c : c_) c *= s;
    trim();
    return *this;
}

Polynomial Polynomial::operator-() const {
    Polynomial out = *this;
    for (auto& c : out.c_) c = -c;
    return out;
}

std::string Polynomial::str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
        const Rational& a = c_[k];
        if (a.is_zero()) continue;
        Rational mag = a.abs();
        if (first) {
            if (a.sign() < 0) os << "-";
        } else {
            os << (a.sign() < 0 ? " - " : " + ");
        }
        first = false;
        bool unit = mag == Rational(1);
        if (k == 0) {
            os << mag;
            continue;
        }
        if (!unit) os << mag << "*";
        os << var;
        if (k > 1) os << "^" << k;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> r = a.coeffs();
    const auto& bc = b.coeffs();
    std::size_t db = bc.size() - 1;
    if (r.size() < bc.size()) return {Polynomial{}, a};
    std::vector<Rational> q(r.size() - db);
    Rational inv = bc.back().inverse();
    for (std::size_t k = r.size(); k-- > db;) {
        Rational f = r[k] * inv;
        q[k - db] = f;
        if (f.is_zero()) continue;
        for (std::size_t j = 0; j <= db; ++j) r[k - db + j] -= f * bc[j];
    }
    r.resize(db);
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

Polynomial operator/(const Polynomial& a, const Polynomial& b) { return divmod(a, b).first; }
Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).second; }

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    Polynomial x = a;
    Polynomial y = b;
    while (!y.is_zero()) {
        Polynomial r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

Bezout extended_gcd(const Polynomial& a, const Polynomial& b) {
    Polynomial r0 = a, r1 = b;
    Polynomial s0 = Polynomial::constant(1), s1;
    Polynomial t0, t1 = Polynomial::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Polynomial s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Polynomial t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Rational inv = r0.leading().inverse();
    return {r0 * inv, s0 * inv, t0 * inv};
}

Polynomial pow(const Polynomial& p, unsigned e) {
    Polynomial acc = Polynomial::constant(1);
    Polynomial base = p;
    while (e) {
        if (e & 1u) acc *= base;
        e >>= 1u;
        if (e) base *= base;
    }
    return acc;
}

std::vector<BigInt> primitive_integer_coeffs(const Polynomial& p) {
    const auto& c = p.coeffs();
    BigInt den = common_denominator(c);
    std::vector<BigInt> out(c.size());
    BigInt g = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        out[i] = c[i].numerator() * (den / c[i].denominator());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
    }
    if (g == 0) return out;
    if (sgn(out.back()) < 0) g = -g;
    for (auto& v : out) v /= g;
    return out;
}

Polynomial from_integer_coeffs(const std::vector<BigInt>& c) {
    std::vector<Rational> r;
    r.reserve(c.size());
    for (const auto& v : c) r.emplace_back(v);
    return Polynomial(std::move(r));
}

std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& p) {
    if (p.is_zero()) throw std::domain_error("squarefree decomposition of zero");
    std::vector<std::pair<Polynomial, int>> out;
    Polynomial f = p.monic();
    if (f.is_constant()) return out;
    Polynomial df = f.derivative();
    Polynomial a = gcd(f, df);
    Polynomial b = f / a;
    Polynomial c = df / a;
    Polynomial d = c - b.derivative();
    int i = 1;
    while (!b.is_constant()) {
        Polynomial g = gcd(b, d);
        if (!g.is_constant()) out.emplace_back(g.monic(), i);
        b = b / g;
        c = d / g;
        d = c - b.derivative();
        ++i;
    }
    return out;
}

}  // namespace solvact::exact
