#include "solvact/exact/matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "solvact/errors.hpp"

namespace solvact::exact {

namespace {

void require_same_shape(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("matrix shapes differ");
    }
}

/// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != r) {
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        }
        Rational inv = m(r, c).inverse();
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), a_(rows * cols) {}

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.front().size();
    RationalMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) {
            throw InputError("ragged matrix: row " + std::to_string(i) + " has " +
                             std::to_string(rows[i].size()) + " entries, expected " +
                             std::to_string(c));
        }
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

RationalMatrix RationalMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<std::vector<Rational>> v;
    for (const auto& r : rows) {
        std::vector<Rational> row;
        for (long x : r) row.emplace_back(x);
        v.push_back(std::move(row));
    }
    return from_rows(v);
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
    return m;
}

RationalMatrix RationalMatrix::diagonal(const RationalVector& d) {
    RationalMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

bool RationalMatrix::is_integer() const {
    for (const auto& x : a_) {
        if (!x.is_integer()) return false;
    }
    return true;
}

RationalVector RationalMatrix::row(std::size_t i) const {
    return RationalVector(a_.begin() + static_cast<long>(i * cols_),
                          a_.begin() + static_cast<long>((i + 1) * cols_));
}

RationalVector RationalMatrix::column(std::size_t j) const {
    RationalVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

std::vector<std::vector<Rational>> RationalMatrix::to_rows() const {
    std::vector<std::vector<Rational>> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
    RationalMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Rational& x = a(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += x * b(k, j);
        }
    }
    return c;
}

RationalVector operator*(const RationalMatrix& a, const RationalVector& v) {
    if (a.cols() != v.size()) throw DimensionError("matrix-vector shape mismatch");
    RationalVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
    }
    return out;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
    require_same_shape(a, b);
    RationalMatrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
    }
    return c;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
    require_same_shape(a, b);
    RationalMatrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
    }
    return c;
}

RationalMatrix operator*(const Rational& s, RationalMatrix a) {
    for (auto& x : a.a_) x *= s;
    return a;
}

Rational RationalMatrix::trace() const {
    Rational t;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

Rational RationalMatrix::determinant() const {
    if (!is_square()) throw DimensionError("determinant of a non-square matrix");
    RationalMatrix m = *this;
    Rational det(1);
    std::size_t n = rows_;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c).is_zero()) ++p;
        if (p == n) return Rational(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        Rational inv = m(c, c).inverse();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c).is_zero()) continue;
            Rational f = m(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

std::size_t RationalMatrix::rank() const {
    RationalMatrix m = *this;
    return rref(m).size();
}

RationalMatrix RationalMatrix::inverse() const {
    if (!is_square()) throw DimensionError("inverse of a non-square matrix");
    std::size_t n = rows_;
    RationalMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
        aug(i, n + i) = Rational(1);
    }
    auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) throw SingularMatrix("matrix is singular");
    RationalMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    }
    return inv;
}

RationalMatrix RationalMatrix::power(long k) const {
    if (!is_square()) throw DimensionError("power of a non-square matrix");
    RationalMatrix base = k < 0 ? inverse() : *this;
    unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
    RationalMatrix acc = identity(rows_);
    while (e) {
        if (e & 1ul) acc = acc * base;
        e >>= 1ul;
        if (e) base = base * base;
    }
    return acc;
}

std::vector<RationalVector> RationalMatrix::kernel() const {
    RationalMatrix m = *this;
    auto piv = rref(m);
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<RationalVector> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        RationalVector v(cols_);
        v[f] = Rational(1);
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

Polynomial charpoly(const RationalMatrix& m) {
    if (!m.is_square()) {
        throw DimensionError("characteristic polynomial needs a square matrix, got " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    // Faddeev-LeVerrier: M_1 = I, c_{n-k} = -tr(M M_k)/k, M_{k+1} = M M_k + c_{n-k} I.
    std::size_t n = m.rows();
    std::vector<Rational> c(n + 1);
    c[n] = Rational(1);
    RationalMatrix mk = RationalMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        RationalMatrix am = m * mk;
        c[n - k] = -am.trace() / Rational(static_cast<long>(k));
        mk = am;
        for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k];
    }
    return Polynomial(std::move(c));
}

RationalMatrix evaluate(const Polynomial& p, const RationalMatrix& m) {
    std::size_t n = m.rows();
    RationalMatrix acc(n, n);
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * m;
        for (std::size_t i = 0; i < n; ++i) acc(i, i) += *it;
    }
    return acc;
}

RationalVector operator+(const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size()) throw DimensionError("vector length mismatch");
    RationalVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

RationalVector operator-(const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size()) throw DimensionError("vector length mismatch");
    RationalVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

RationalVector operator*(const Rational& s, const RationalVector& v) {
    RationalVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
    return out;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size()) throw DimensionError("vector length mismatch");
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool is_zero(const RationalVector& v) {
    for (const auto& x : v) {
        if (!x.is_zero()) return false;
    }
    return true;
}

}  // namespace solvact::exact
