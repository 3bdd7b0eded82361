#pragma once

/**
 * @file rational.hpp
 * @brief Arbitrary-precision rationals.
 *
 * Values are kept in lowest terms with a positive denominator; zero is 0/1.
 * The big-integer arithmetic is GMP's, the class only fixes the canonical
 * form and the "p/q" text encoding used by every file format of the project.
 */

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace solvact::exact {

using BigInt = mpz_class;

class Rational {
public:
    Rational() = default;
    Rational(long n) : q_(n) {}                       // NOLINT(implicit)
    Rational(int n) : q_(static_cast<long>(n)) {}     // NOLINT(implicit)
    Rational(const BigInt& n) : q_(n) {}              // NOLINT(implicit)
    Rational(const BigInt& num, const BigInt& den);
    Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

    /// Parses "n", "-n" or "p/q". Throws InputError on malformed text or q = 0.
    static Rational parse(std::string_view text);

    BigInt numerator() const { return q_.get_num(); }
    BigInt denominator() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    /// Exact encoding: "n" when integral, otherwise "p/q".
    std::string str() const;
    double to_double() const { return q_.get_d(); }
    long double to_long_double() const;

    Rational abs() const;
    Rational inverse() const;

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const;

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    const mpq_class& raw() const { return q_; }

private:
    mpq_class q_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

using RationalVector = std::vector<Rational>;

/// floor(r) as a big integer.
BigInt floor(const Rational& r);

/// 2^e as a rational (e may be negative).
Rational pow2(long e);

/// Least common multiple of all denominators.
BigInt common_denominator(const RationalVector& v);

/// Naive height max(|p|, q).
BigInt height(const Rational& r);

}  // namespace solvact::exact
