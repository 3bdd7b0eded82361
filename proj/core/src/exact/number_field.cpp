#include "solvact/exact/number_field.hpp"

#include <algorithm>
#include <stdexcept>

#include "solvact/errors.hpp"
#include "solvact/exact/factor.hpp"

namespace solvact::exact {

NumberField::NumberField(Polynomial minpoly, RationalInterval root) : m_(std::move(minpoly)) {
    if (m_.is_zero() || m_.deg() == 0) throw InputError("minimal polynomial must be nonconstant");
    m_ = m_.monic();
    if (!is_irreducible(m_)) {
        throw InputError("minimal polynomial " + m_.str() + " is reducible over Q");
    }
    if (sturm_count(m_, root.lo, root.hi) != 1) {
        throw InputError("interval does not isolate a single root of " + m_.str());
    }
    iv_ = root;
    fine_ = refine_root(m_, iv_, pow2(-64));
    root_ = fine_.midpoint().to_long_double();
}

FieldPtr make_field(Polynomial minpoly, RationalInterval root) {
    return std::make_shared<const NumberField>(std::move(minpoly), root);
}

NumberFieldElement::NumberFieldElement(FieldPtr field, const Polynomial& poly)
    : f_(std::move(field)), p_(poly % f_->minpoly()) {}

NumberFieldElement::NumberFieldElement(FieldPtr field, const Rational& c)
    : f_(std::move(field)), p_(Polynomial::constant(c)) {}

NumberFieldElement NumberFieldElement::generator(FieldPtr field) {
    return NumberFieldElement(std::move(field), Polynomial::x());
}

std::vector<Rational> NumberFieldElement::coords() const {
    std::vector<Rational> c(f_->degree());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = p_.coeff(i);
    return c;
}

Rational NumberFieldElement::rational_value() const {
    if (!is_rational()) throw FieldMismatch("element " + p_.str("l") + " is not rational");
    return p_.coeff(0);
}

int NumberFieldElement::sign() const {
    if (p_.is_zero()) return 0;
    if (p_.is_constant()) return p_.coeff(0).sign();
    // Shrink the isolating interval until p has no root in its closure.
    Polynomial sp = p_.squarefree_part();
    RationalInterval iv = f_->interval();
    while (true) {
        if (!sp.eval(iv.lo).is_zero() && !sp.eval(iv.hi).is_zero() &&
            sturm_count(sp, iv.lo, iv.hi) == 0) {
            return p_.eval(iv.lo).sign();
        }
        iv = refine_root(f_->minpoly(), iv, iv.width() * Rational(1, 2));
    }
}

long double NumberFieldElement::to_long_double() const {
    if (p_.is_constant()) return p_.coeff(0).to_long_double();
    // |p(root) - p(mid)| <= D * width / 2 with D bounding |p'| on the interval.
    Polynomial dp = p_.derivative();
    RationalInterval iv = f_->fine_interval();
    while (true) {
        Rational bound_x = std::max(iv.lo.abs(), iv.hi.abs());
        Rational dmax;
        Rational pw(1);
        for (std::size_t k = 0; k < dp.coeffs().size(); ++k) {
            dmax += dp.coeffs()[k].abs() * pw;
            pw *= bound_x;
        }
        Rational err = dmax * iv.width() * Rational(1, 2);
        Rational v = p_.eval(iv.midpoint());
        if (!v.is_zero() && err <= v.abs() * pow2(-70)) return v.to_long_double();
        iv = refine_root(f_->minpoly(), iv, iv.width() * pow2(-32));
    }
}

double NumberFieldElement::to_double() const { return static_cast<double>(to_long_double()); }

NumberFieldElement NumberFieldElement::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero in a number field");
    Bezout b = extended_gcd(p_, f_->minpoly());
    // m irreducible and p nonzero of lower degree: g = 1.
    return NumberFieldElement(f_, b.s);
}

void NumberFieldElement::require_same(const NumberFieldElement& o) const {
    if (f_ == o.f_) return;
    if (!f_ || !o.f_ || !(*f_ == *o.f_)) {
        throw FieldMismatch("number field elements belong to different fields");
    }
}

NumberFieldElement& NumberFieldElement::operator+=(const NumberFieldElement& o) {
    require_same(o);
    p_ += o.p_;
    return *this;
}

NumberFieldElement& NumberFieldElement::operator-=(const NumberFieldElement& o) {
    require_same(o);
    p_ -= o.p_;
    return *this;
}

NumberFieldElement& NumberFieldElement::operator*=(const NumberFieldElement& o) {
    require_same(o);
    p_ = (p_ * o.p_) % f_->minpoly();
    return *this;
}

NumberFieldElement& NumberFieldElement::operator/=(const NumberFieldElement& o) {
    require_same(o);
    return *this *= o.inverse();
}

NumberFieldElement NumberFieldElement::operator-() const {
    NumberFieldElement r = *this;
    r.p_ = -r.p_;
    return r;
}

bool operator==(const NumberFieldElement& a, const NumberFieldElement& b) {
    a.require_same(b);
    return a.p_ == b.p_;
}

NumberFieldElement pow(const NumberFieldElement& x, long e) {
    NumberFieldElement base = e < 0 ? x.inverse() : x;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    NumberFieldElement acc(x.field(), Rational(1));
    while (n) {
        if (n & 1ul) acc *= base;
        n >>= 1ul;
        if (n) base *= base;
    }
    return acc;
}

namespace {

const FieldPtr& common_field(const FieldMatrix& m) {
    const FieldPtr* f = nullptr;
    for (const auto& row : m) {
        for (const auto& x : row) {
            if (!x.field()) throw FieldMismatch("matrix entry without a field");
            if (!f) {
                f = &x.field();
            } else if (x.field() != *f && !(*x.field() == **f)) {
                throw FieldMismatch("matrix entries belong to different number fields");
            }
        }
    }
    if (!f) throw DimensionError("empty matrix over a number field");
    return *f;
}

}  // namespace

std::vector<FieldVector> field_solve(const FieldMatrix& input) {
    const FieldPtr& field = common_field(input);
    FieldMatrix m = input;
    const std::size_t rows = m.size();
    const std::size_t cols = m.front().size();
    for (const auto& row : m) {
        if (row.size() != cols) throw DimensionError("ragged matrix over a number field");
    }
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        NumberFieldElement inv = m[r][c].inverse();
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            NumberFieldElement f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<FieldVector> basis;
    for (std::size_t fcol = 0; fcol < cols; ++fcol) {
        if (is_pivot[fcol]) continue;
        FieldVector v(cols, NumberFieldElement(field, Rational(0)));
        v[fcol] = NumberFieldElement(field, Rational(1));
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m[k][fcol];
        basis.push_back(std::move(v));
    }
    return basis;
}

FieldMatrix shifted(const RationalMatrix& m, const NumberFieldElement& lambda) {
    FieldMatrix out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            NumberFieldElement x(lambda.field(), m(i, j));
            if (i == j) x -= lambda;
            out[i].push_back(std::move(x));
        }
    }
    return out;
}

FieldVector operator*(const FieldMatrix& m, const FieldVector& v) {
    FieldVector out;
    for (const auto& row : m) {
        if (row.size() != v.size()) throw DimensionError("matrix-vector shape mismatch");
        NumberFieldElement acc(v.front().field(), Rational(0));
        for (std::size_t j = 0; j < v.size(); ++j) acc += row[j] * v[j];
        out.push_back(std::move(acc));
    }
    return out;
}

}  // namespace solvact::exact
