#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "solvact/exact/rational.hpp"

namespace solvact::exact {

/// Univariate polynomial over Q; coefficient i multiplies x^i.
///
/// Canonical form: no trailing zero coefficients. The zero polynomial has an
/// empty coefficient list and no degree (degree() returns nullopt), so it can
/// never be confused with a constant.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);
    Polynomial(std::initializer_list<long> coeffs);

    static Polynomial constant(const Rational& c);
    static Polynomial monomial(const Rational& c, std::size_t power);
    /// x - r
    static Polynomial linear_root(const Rational& r);
    static Polynomial x() { return monomial(Rational(1), 1); }

    std::optional<std::size_t> degree() const;
    /// Degree of a polynomial the caller knows to be nonzero.
    std::size_t deg() const;
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_monic() const { return !c_.empty() && c_.back() == Rational(1); }

    const std::vector<Rational>& coeffs() const { return c_; }
    /// Coefficient of x^i (zero beyond the degree).
    Rational coeff(std::size_t i) const;
    const Rational& leading() const;

    Rational eval(const Rational& x) const;
    double eval(double x) const;
    long double eval(long double x) const;

    Polynomial derivative() const;
    Polynomial monic() const;
    /// x^deg * p(1/x)
    Polynomial reversed() const;
    /// p(c*x)
    Polynomial scaled_argument(const Rational& c) const;
    /// p(q(x))
    Polynomial compose(const Polynomial& q) const;
    /// p/gcd(p, p'), made monic.
    Polynomial squarefree_part() const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    Polynomial& operator*=(const Rational& s);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
    Polynomial operator-() const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    /// Human readable, e.g. "x^4 + 4*x^3 - 1/2*x + 1".
    std::string str(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Rational> c_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

/// Euclidean division a = q*b + r with deg r < deg b. Throws on b = 0.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
Polynomial operator/(const Polynomial& a, const Polynomial& b);
Polynomial operator%(const Polynomial& a, const Polynomial& b);

/// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic.
struct Bezout {
    Polynomial g;
    Polynomial s;
    Polynomial t;
};
Bezout extended_gcd(const Polynomial& a, const Polynomial& b);

Polynomial pow(const Polynomial& p, unsigned e);

/// Integer polynomial with coprime coefficients proportional to p, positive
/// leading coefficient.
std::vector<BigInt> primitive_integer_coeffs(const Polynomial& p);
Polynomial from_integer_coeffs(const std::vector<BigInt>& c);

/// Yun's squarefree decomposition of a nonzero polynomial: monic pairwise
/// coprime squarefree S_i with p = lc * prod S_i^i. Entries with trivial S_i
/// are omitted.
std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& p);

}  // namespace solvact::exact
