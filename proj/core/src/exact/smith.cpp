#include "solvact/exact/smith.hpp"

#include <stdexcept>

#include "solvact/errors.hpp"

namespace solvact::exact {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols != y.rows) throw DimensionError("integer matrix product shape mismatch");
    IntMatrix z(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i) {
        for (std::size_t k = 0; k < x.cols; ++k) {
            if (x(i, k) == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) z(i, j) += x(i, k) * y(k, j);
        }
    }
    return z;
}

BigInt IntMatrix::determinant() const {
    if (rows != cols) throw DimensionError("determinant of a non-square matrix");
    // Bareiss fraction-free elimination.
    IntMatrix m = *this;
    std::size_t n = rows;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
            }
        }
        prev = m(k, k);
    }
    return n == 0 ? BigInt(1) : BigInt(sign * m(n - 1, n - 1));
}

std::vector<BigInt> SmithDecomposition::diagonal() const {
    std::vector<BigInt> d;
    for (std::size_t i = 0; i < std::min(D.rows, D.cols); ++i) d.push_back(D(i, i));
    return d;
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows; ++i) std::swap(m(i, a), m(i, b));
}

/// row_dst -= q * row_src
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& q) {
    for (std::size_t j = 0; j < m.cols; ++j) m(dst, j) -= q * m(src, j);
}

/// col_dst -= q * col_src
void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& q) {
    for (std::size_t i = 0; i < m.rows; ++i) m(i, dst) -= q * m(i, src);
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) {
    IntMatrix d = m;
    IntMatrix u = IntMatrix::identity(m.rows);
    IntMatrix v = IntMatrix::identity(m.cols);
    const std::size_t r = std::min(m.rows, m.cols);

    for (std::size_t t = 0; t < r; ++t) {
        while (true) {
            // Pivot: smallest nonzero magnitude in the trailing block.
            std::size_t pi = d.rows, pj = d.cols;
            for (std::size_t i = t; i < d.rows; ++i) {
                for (std::size_t j = t; j < d.cols; ++j) {
                    if (d(i, j) == 0) continue;
                    if (pi == d.rows || abs(d(i, j)) < abs(d(pi, pj))) {
                        pi = i;
                        pj = j;
                    }
                }
            }
            if (pi == d.rows) return {u, v, d};
            swap_rows(d, t, pi);
            swap_rows(u, t, pi);
            swap_cols(d, t, pj);
            swap_cols(v, t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < d.rows; ++i) {
                if (d(i, t) == 0) continue;
                BigInt q = floor_div(d(i, t), d(t, t));
                add_row(d, i, t, q);
                add_row(u, i, t, q);
                if (d(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < d.cols; ++j) {
                if (d(t, j) == 0) continue;
                BigInt q = floor_div(d(t, j), d(t, t));
                add_col(d, j, t, q);
                add_col(v, j, t, q);
                if (d(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // Divisibility: fold an offending row into the pivot row.
            bool divides = true;
            for (std::size_t i = t + 1; i < d.rows && divides; ++i) {
                for (std::size_t j = t + 1; j < d.cols; ++j) {
                    if (d(i, j) % d(t, t) != 0) {
                        add_row(d, t, i, BigInt(-1));
                        add_row(u, t, i, BigInt(-1));
                        divides = false;
                        break;
                    }
                }
            }
            if (divides) break;
        }
        if (d(t, t) < 0) {
            for (std::size_t j = 0; j < d.cols; ++j) d(t, j) = -d(t, j);
            for (std::size_t j = 0; j < u.cols; ++j) u(t, j) = -u(t, j);
        }
    }
    return {u, v, d};
}

}  // namespace solvact::exact
