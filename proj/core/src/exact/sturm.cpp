#include "solvact/exact/sturm.hpp"

#include <algorithm>
#include <stdexcept>

#include "solvact/errors.hpp"

namespace solvact::exact {

namespace {

int sign_changes(const std::vector<Polynomial>& chain, const Rational& x) {
    int changes = 0;
    int last = 0;
    for (const auto& p : chain) {
        int s = p.eval(x).sign();
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

/// A point of (lo, hi) near its middle where p does not vanish.
Rational nonroot_split(const Polynomial& p, const Rational& lo, const Rational& hi) {
    Rational mid = (lo + hi) * Rational(1, 2);
    if (!p.eval(mid).is_zero()) return mid;
    // p has finitely many roots; step away by shrinking odd fractions.
    Rational w = hi - lo;
    for (long k = 3;; k += 2) {
        Rational cand = mid + w * Rational(1, 2 * k);
        if (!p.eval(cand).is_zero()) return cand;
        cand = mid - w * Rational(1, 2 * k);
        if (!p.eval(cand).is_zero()) return cand;
    }
}

}  // namespace

std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
    std::vector<Polynomial> chain;
    if (p.is_zero()) return chain;
    chain.push_back(p);
    Polynomial d = p.derivative();
    while (!d.is_zero()) {
        chain.push_back(d);
        Polynomial r = -(chain[chain.size() - 2] % chain.back());
        d = std::move(r);
    }
    return chain;
}

int sturm_count(const std::vector<Polynomial>& chain, const Rational& lo, const Rational& hi) {
    if (chain.empty()) throw std::domain_error("Sturm count of the zero polynomial");
    if (!(lo < hi)) throw std::domain_error("Sturm count requires lo < hi");
    if (chain.front().eval(lo).is_zero() || chain.front().eval(hi).is_zero()) {
        throw EndpointRoot("interval endpoint " +
                           (chain.front().eval(lo).is_zero() ? lo.str() : hi.str()) +
                           " is a root; perturb the endpoint by a small rational and retry");
    }
    return sign_changes(chain, lo) - sign_changes(chain, hi);
}

int sturm_count(const Polynomial& p, const Rational& lo, const Rational& hi) {
    return sturm_count(sturm_sequence(p), lo, hi);
}

Rational cauchy_bound(const Polynomial& p) {
    const auto& c = p.coeffs();
    if (c.size() <= 1) return Rational(1);
    Rational m;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        Rational r = (c[i] / c.back()).abs();
        if (r > m) m = r;
    }
    return m + Rational(1);
}

RationalInterval refine_root(const Polynomial& p, RationalInterval iv, const Rational& max_width) {
    int s_lo = p.eval(iv.lo).sign();
    while (iv.width() >= max_width) {
        Rational mid = iv.midpoint();
        int s = p.eval(mid).sign();
        if (s == 0) {
            // Rational root: shrink symmetrically around it.
            Rational w = iv.width() * Rational(1, 4);
            Rational lo = mid - w;
            Rational hi = mid + w;
            while (p.eval(lo).is_zero() || p.eval(hi).is_zero()) {
                w *= Rational(1, 2);
                lo = mid - w;
                hi = mid + w;
            }
            iv = {lo, hi};
            s_lo = p.eval(iv.lo).sign();
            continue;
        }
        if (s == s_lo) {
            iv.lo = mid;
        } else {
            iv.hi = mid;
        }
    }
    return iv;
}

std::vector<RationalInterval> isolate_real_roots(const Polynomial& p, const Rational& max_width) {
    std::vector<RationalInterval> out;
    if (p.is_zero()) throw std::domain_error("root isolation of the zero polynomial");
    Polynomial q = p.squarefree_part();
    if (q.is_constant()) return out;
    auto chain = sturm_sequence(q);
    Rational b = cauchy_bound(q);
    std::vector<RationalInterval> work{{-b, b}};
    while (!work.empty()) {
        RationalInterval iv = work.back();
        work.pop_back();
        int n = sturm_count(chain, iv.lo, iv.hi);
        if (n == 0) continue;
        if (n == 1) {
            out.push_back(iv);
            continue;
        }
        Rational mid = nonroot_split(q, iv.lo, iv.hi);
        work.push_back({mid, iv.hi});
        work.push_back({iv.lo, mid});
    }
    std::sort(out.begin(), out.end(),
              [](const RationalInterval& a, const RationalInterval& b) { return a.lo < b.lo; });
    for (auto& iv : out) iv = refine_root(q, iv, max_width);
    return out;
}

}  // namespace solvact::exact
