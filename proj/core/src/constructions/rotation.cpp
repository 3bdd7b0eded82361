#include "solvact/constructions/rotation.hpp"

#include <algorithm>

#include "solvact/errors.hpp"

namespace solvact::constructions {

namespace {

using exact::IntMatrix;
using exact::Rational;

RationalMatrix to_rational(const IntMatrix& m) {
    RationalMatrix r(m.rows, m.cols);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) r(i, j) = Rational(m(i, j));
    return r;
}

IntMatrix to_integer(const RationalMatrix& m) {
    IntMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!m(i, j).is_integer()) throw std::logic_error("expected an integer matrix");
            r(i, j) = m(i, j).numerator();
        }
    return r;
}

Rational frac(const Rational& r) { return r - Rational(exact::floor(r)); }

}  // namespace

RotationGroup rotation_vector_group(const RationalMatrix& a) {
    if (!a.is_square()) throw DimensionError("rotation vectors need a square matrix");
    const std::size_t d = a.rows();
    RationalMatrix m = a.transpose() - RationalMatrix::identity(d);
    if (m.determinant().is_zero())
        throw InfiniteFamily("det(A^T - I) = 0: A has eigenvalue 1 and the rotation vectors form a continuum");
    RationalMatrix minv = m.inverse();

    BigInt den = 1;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) den = lcm(den, minv(i, j).denominator());

    // D L is spanned by the columns of [D M^-1 | D I].
    IntMatrix gens(d, 2 * d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) gens(i, j) = (Rational(den) * minv(i, j)).numerator();
        gens(i, d + i) = den;
    }
    exact::SmithDecomposition s1 = exact::smith_normal_form(gens);
    RationalMatrix uinv = to_rational(s1.U).inverse();
    RationalMatrix basis(d, d);  // P = U^-1 diag(s)
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) basis(i, j) = uinv(i, j) * Rational(s1.D(j, j));

    // D Z^d = P N Z^d
    IntMatrix n = to_integer(Rational(den) * basis.inverse());
    exact::SmithDecomposition s2 = exact::smith_normal_form(n);
    RationalMatrix u2inv = to_rational(s2.U).inverse();

    RotationGroup g;
    g.dim = d;
    for (std::size_t i = 0; i < d; ++i) {
        BigInt f = abs(s2.D(i, i));
        g.order *= f;
        if (f == 1) continue;
        g.invariant_factors.push_back(f);
        RationalVector col = u2inv.column(i);
        RationalVector v = basis * col;
        for (auto& x : v) x = frac(x / Rational(den));
        g.generators.push_back(v);
    }
    return g;
}

std::vector<RationalVector> RotationGroup::elements(std::size_t limit) const {
    if (order > limit) throw InputError("rotation group too large to enumerate");
    const std::size_t d = dim;
    std::vector<RationalVector> out;
    std::vector<unsigned long> digit(generators.size(), 0);
    while (true) {
        RationalVector v(d, Rational(0));
        for (std::size_t i = 0; i < generators.size(); ++i)
            for (std::size_t j = 0; j < d; ++j) v[j] += Rational(static_cast<long>(digit[i])) * generators[i][j];
        for (auto& x : v) x = frac(x);
        out.push_back(v);
        std::size_t i = 0;
        while (i < digit.size()) {
            if (++digit[i] < invariant_factors[i].get_ui()) break;
            digit[i] = 0;
            ++i;
        }
        if (i == digit.size()) break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace solvact::constructions
