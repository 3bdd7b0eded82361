#pragma once

#include <vector>

#include "solvact/exact/polynomial.hpp"

namespace solvact::exact {

/// Open rational interval (lo, hi).
struct RationalInterval {
    Rational lo;
    Rational hi;

    Rational width() const { return hi - lo; }
    Rational midpoint() const { return (lo + hi) * Rational(1, 2); }
    friend bool operator==(const RationalInterval&, const RationalInterval&) = default;
};

/// Canonical Sturm chain p, p', -rem(p_{i-1}, p_i), ...
std::vector<Polynomial> sturm_sequence(const Polynomial& p);

/// Number of distinct real roots of a squarefree p in the open interval
/// (lo, hi). Throws EndpointRoot when p(lo) = 0 or p(hi) = 0; the caller is
/// expected to move the endpoint by a small rational amount and retry.
int sturm_count(const Polynomial& p, const Rational& lo, const Rational& hi);
int sturm_count(const std::vector<Polynomial>& chain, const Rational& lo, const Rational& hi);

/// 1 + max |a_i / a_n|: every complex root has modulus below this bound.
Rational cauchy_bound(const Polynomial& p);

/// Disjoint isolating intervals, in increasing order, one per distinct real
/// root of p (p is squarefree-reduced internally). Rational roots are
/// enclosed strictly; no endpoint is a root. Intervals are refined until
/// their width is below `max_width`.
std::vector<RationalInterval> isolate_real_roots(const Polynomial& p,
                                                 const Rational& max_width = pow2(-64));

/// Shrinks an isolating interval of a squarefree p (exactly one root inside)
/// by bisection until its width is below `max_width`.
RationalInterval refine_root(const Polynomial& p, RationalInterval iv, const Rational& max_width);

}  // namespace solvact::exact
