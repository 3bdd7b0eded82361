#pragma once

#include <memory>
#include <vector>

#include "solvact/exact/matrix.hpp"
#include "solvact/exact/polynomial.hpp"
#include "solvact/exact/sturm.hpp"

namespace solvact::exact {

/// Q(λ) = Q[x]/(m) with λ pinned to one real root of m by an isolating interval.
///
/// Construction verifies that m is irreducible and that the interval holds
/// exactly one root. Fields are compared by value (minimal polynomial and
/// interval); elements of different fields never mix.
class NumberField {
public:
    NumberField(Polynomial minpoly, RationalInterval root);

    const Polynomial& minpoly() const { return m_; }
    const RationalInterval& interval() const { return iv_; }
    std::size_t degree() const { return m_.deg(); }
    /// The designated root, to binary64 / extended precision.
    double embedding() const { return static_cast<double>(root_); }
    long double embedding_ld() const { return root_; }
    /// Isolating interval of width below 2^-64.
    const RationalInterval& fine_interval() const { return fine_; }

    friend bool operator==(const NumberField& a, const NumberField& b) {
        return a.m_ == b.m_ && a.iv_ == b.iv_;
    }

private:
    Polynomial m_;
    RationalInterval iv_;
    RationalInterval fine_;
    long double root_ = 0;
};

using FieldPtr = std::shared_ptr<const NumberField>;

FieldPtr make_field(Polynomial minpoly, RationalInterval root);

class NumberFieldElement {
public:
    NumberFieldElement() = default;
    /// Reduces poly modulo the minimal polynomial.
    NumberFieldElement(FieldPtr field, const Polynomial& poly);
    NumberFieldElement(FieldPtr field, const Rational& c);

    static NumberFieldElement generator(FieldPtr field);

    const FieldPtr& field() const { return f_; }
    /// Power-basis coordinates, length deg m.
    std::vector<Rational> coords() const;
    const Polynomial& poly() const { return p_; }

    bool is_zero() const { return p_.is_zero(); }
    bool is_rational() const { return p_.is_constant(); }
    /// Throws FieldMismatch when not rational.
    Rational rational_value() const;

    /// Sign in the real embedding, decided exactly.
    int sign() const;
    /// Real embedding with relative error near the target precision even when
    /// the power-basis coordinates are huge and cancel: the element is
    /// evaluated exactly at a rational point close to the root, which is
    /// refined until a derivative bound certifies the digits.
    double to_double() const;
    long double to_long_double() const;

    /// Throws std::domain_error on zero.
    NumberFieldElement inverse() const;

    NumberFieldElement& operator+=(const NumberFieldElement& o);
    NumberFieldElement& operator-=(const NumberFieldElement& o);
    NumberFieldElement& operator*=(const NumberFieldElement& o);
    NumberFieldElement& operator/=(const NumberFieldElement& o);

    friend NumberFieldElement operator+(NumberFieldElement a, const NumberFieldElement& b) {
        return a += b;
    }
    friend NumberFieldElement operator-(NumberFieldElement a, const NumberFieldElement& b) {
        return a -= b;
    }
    friend NumberFieldElement operator*(NumberFieldElement a, const NumberFieldElement& b) {
        return a *= b;
    }
    friend NumberFieldElement operator/(NumberFieldElement a, const NumberFieldElement& b) {
        return a /= b;
    }
    NumberFieldElement operator-() const;

    /// Throws FieldMismatch across fields.
    friend bool operator==(const NumberFieldElement& a, const NumberFieldElement& b);

private:
    void require_same(const NumberFieldElement& o) const;

    FieldPtr f_;
    Polynomial p_;
};

NumberFieldElement pow(const NumberFieldElement& x, long e);

using FieldVector = std::vector<NumberFieldElement>;
using FieldMatrix = std::vector<FieldVector>;

/// Kernel basis of a square matrix over one number field by Gaussian
/// elimination; one vector per free column, free entry 1. Throws
/// FieldMismatch when entries disagree on the field.
std::vector<FieldVector> field_solve(const FieldMatrix& m);

/// M - λI with M rational, lifted into the field of λ.
FieldMatrix shifted(const RationalMatrix& m, const NumberFieldElement& lambda);

FieldVector operator*(const FieldMatrix& m, const FieldVector& v);

}  // namespace solvact::exact
