#pragma once

#include <cstddef>
#include <vector>

#include "solvact/exact/polynomial.hpp"
#include "solvact/exact/rational.hpp"

namespace solvact::exact {

/// Dense row-major matrix over Q.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols);
    /// Throws InputError on ragged input.
    static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows);
    static RationalMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
    static RationalMatrix identity(std::size_t n);
    static RationalMatrix diagonal(const RationalVector& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool is_integer() const;

    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    RationalVector row(std::size_t i) const;
    RationalVector column(std::size_t j) const;
    std::vector<std::vector<Rational>> to_rows() const;

    RationalMatrix transpose() const;

    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
    friend RationalVector operator*(const RationalMatrix& a, const RationalVector& v);
    friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
    friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
    friend RationalMatrix operator*(const Rational& s, RationalMatrix a);
    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

    Rational trace() const;
    Rational determinant() const;
    std::size_t rank() const;
    /// Throws SingularMatrix when not invertible.
    RationalMatrix inverse() const;
    /// M^k for any integer k (negative powers need invertibility).
    RationalMatrix power(long k) const;
    /// Basis of {x : M x = 0}, one vector per free column of the reduced
    /// row echelon form (free variable set to 1).
    std::vector<RationalVector> kernel() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> a_;
};

/// det(xI - M), monic of degree d. Throws DimensionError for non-square M.
Polynomial charpoly(const RationalMatrix& m);

/// p(M) by Horner's rule.
RationalMatrix evaluate(const Polynomial& p, const RationalMatrix& m);

RationalVector operator+(const RationalVector& a, const RationalVector& b);
RationalVector operator-(const RationalVector& a, const RationalVector& b);
RationalVector operator*(const Rational& s, const RationalVector& v);
Rational dot(const RationalVector& a, const RationalVector& b);
bool is_zero(const RationalVector& v);

}  // namespace solvact::exact
