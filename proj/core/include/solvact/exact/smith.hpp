#pragma once

#include <vector>

#include "solvact/exact/rational.hpp"

namespace solvact::exact {

/// Dense row-major integer matrix.
struct IntMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<BigInt> a;

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
    static IntMatrix identity(std::size_t n);

    BigInt& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const BigInt& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

    BigInt determinant() const;
};

/// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... | d_r,
/// all d_i >= 0 (zeros trail).
struct SmithDecomposition {
    IntMatrix U;
    IntMatrix V;
    IntMatrix D;

    std::vector<BigInt> diagonal() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& m);

}  // namespace solvact::exact
