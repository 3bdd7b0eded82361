#include "solvact/exact/factor.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>

#include "solvact/errors.hpp"

namespace solvact::exact {

namespace {

using IntPoly = std::vector<BigInt>;  // index = degree, monic unless stated

BigInt eval_int(const IntPoly& p, const BigInt& x) {
    BigInt acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

/// Exact division by a monic integer polynomial; nullopt when it leaves a remainder.
std::optional<IntPoly> divide_monic(const IntPoly& a, const IntPoly& b) {
    std::size_t db = b.size() - 1;
    if (a.size() < b.size()) return std::nullopt;
    IntPoly r = a;
    IntPoly q(a.size() - db);
    for (std::size_t k = r.size(); k-- > db;) {
        BigInt f = r[k];
        q[k - db] = f;
        if (f == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) r[k - db + j] -= f * b[j];
    }
    for (std::size_t i = 0; i < db; ++i) {
        if (r[i] != 0) return std::nullopt;
    }
    return q;
}

std::vector<BigInt> positive_divisors(BigInt n) {
    n = abs(n);
    std::vector<std::pair<BigInt, int>> primes;
    for (BigInt p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        primes.emplace_back(p, e);
    }
    if (n > 1) primes.emplace_back(n, 1);
    std::vector<BigInt> divs{BigInt(1)};
    for (const auto& [p, e] : primes) {
        std::size_t base = divs.size();
        BigInt pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

BigInt binomial(unsigned n, unsigned k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

/// ceil(||p||_2)
BigInt l2_ceiling(const IntPoly& p) {
    BigInt s = 0;
    for (const auto& c : p) s += c * c;
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), s.get_mpz_t());
    if (r * r < s) r += 1;
    return r;
}

/// Smallest-degree-m monic integer factor of the monic integer q, if any.
std::optional<IntPoly> find_factor(const IntPoly& q, unsigned m) {
    const BigInt norm = l2_ceiling(q);
    std::vector<BigInt> coeff_bound(m + 1);
    for (unsigned i = 0; i <= m; ++i) coeff_bound[i] = binomial(m, i) * norm;

    // Evaluation points with small |q(x)|; q(x) = 0 only at integer roots,
    // which the degree-1 pass has already removed.
    std::vector<std::pair<BigInt, BigInt>> cands;  // (|q(x)|, x)
    for (long x = -8; x <= 8; ++x) {
        BigInt v = eval_int(q, BigInt(x));
        if (v != 0) cands.emplace_back(abs(v), BigInt(x));
    }
    std::stable_sort(cands.begin(), cands.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    if (cands.size() < m + 1) return std::nullopt;

    std::vector<BigInt> xs;
    for (unsigned j = 0; j < m; ++j) xs.push_back(cands[j].second);
    const BigInt check_x = cands[m].second;
    const BigInt check_v = cands[m].first;

    // Admissible values g(x_j): signed divisors of q(x_j) within the value bound.
    std::vector<std::vector<BigInt>> choices(m);
    for (unsigned j = 0; j < m; ++j) {
        BigInt ax = abs(xs[j]);
        BigInt vb = 0;
        BigInt pw = 1;
        for (unsigned i = 0; i < m; ++i) {
            vb += coeff_bound[i] * pw;
            pw *= ax;
        }
        vb += pw;
        for (const auto& d : positive_divisors(cands[j].first)) {
            if (d > vb) break;
            choices[j].push_back(d);
            choices[j].push_back(-d);
        }
    }

    // Lagrange basis over the chosen points (degree m-1 each).
    std::vector<Polynomial> basis(m);
    for (unsigned j = 0; j < m; ++j) {
        Polynomial l = Polynomial::constant(Rational(1));
        for (unsigned k = 0; k < m; ++k) {
            if (k == j) continue;
            l *= Polynomial::linear_root(Rational(xs[k]));
            l *= Rational(1) / Rational(xs[j] - xs[k]);
        }
        basis[j] = l;
    }
    std::vector<BigInt> xm(m);
    for (unsigned j = 0; j < m; ++j) {
        mpz_pow_ui(xm[j].get_mpz_t(), xs[j].get_mpz_t(), m);
    }

    std::vector<std::size_t> idx(m, 0);
    while (true) {
        // r(x) = g(x) - x^m interpolates y_j - x_j^m.
        std::vector<Rational> r(m);
        for (unsigned j = 0; j < m; ++j) {
            Rational w(choices[j][idx[j]] - xm[j]);
            if (w.is_zero()) continue;
            const auto& bc = basis[j].coeffs();
            for (std::size_t i = 0; i < bc.size(); ++i) r[i] += w * bc[i];
        }
        bool ok = true;
        IntPoly g(m + 1);
        for (unsigned i = 0; i < m && ok; ++i) {
            if (!r[i].is_integer()) {
                ok = false;
                break;
            }
            g[i] = r[i].numerator();
            if (abs(g[i]) > coeff_bound[i]) ok = false;
        }
        g[m] = 1;
        if (ok) {
            BigInt gv = eval_int(g, check_x);
            ok = gv != 0 && check_v % abs(gv) == 0;
        }
        if (ok && divide_monic(q, g)) return g;

        std::size_t j = 0;
        while (j < m) {
            if (++idx[j] < choices[j].size()) break;
            idx[j] = 0;
            ++j;
        }
        if (j == m) break;
    }
    return std::nullopt;
}

void factor_monic_integer(const IntPoly& q, std::vector<IntPoly>& out) {
    const std::size_t n = q.size() - 1;
    if (n == 0) return;
    if (n == 1) {
        out.push_back(q);
        return;
    }
    // Degree 1: integer roots divide the constant term.
    if (q[0] == 0) {
        out.push_back({BigInt(0), BigInt(1)});
        factor_monic_integer(IntPoly(q.begin() + 1, q.end()), out);
        return;
    }
    for (const auto& d : positive_divisors(q[0])) {
        for (const BigInt& r : {d, BigInt(-d)}) {
            if (eval_int(q, r) == 0) {
                IntPoly lin{BigInt(-r), BigInt(1)};
                out.push_back(lin);
                factor_monic_integer(*divide_monic(q, lin), out);
                return;
            }
        }
    }
    for (unsigned m = 2; m <= n / 2; ++m) {
        if (auto g = find_factor(q, m)) {
            out.push_back(*g);
            factor_monic_integer(*divide_monic(q, *g), out);
            return;
        }
    }
    out.push_back(q);
}

/// Irreducible monic factors over Q of a monic squarefree rational polynomial.
std::vector<Polynomial> factor_squarefree(const Polynomial& s) {
    IntPoly prim = primitive_integer_coeffs(s);
    const std::size_t n = prim.size() - 1;
    const BigInt c = prim.back();
    // q(x) = c^{n-1} prim(x/c) is monic with integer coefficients.
    IntPoly q(n + 1);
    BigInt cp = 1;
    for (std::size_t i = n + 1; i-- > 0;) {
        if (i == n) {
            q[i] = 1;
            continue;
        }
        q[i] = prim[i] * cp;
        cp *= c;
    }
    std::vector<IntPoly> parts;
    factor_monic_integer(q, parts);
    std::vector<Polynomial> out;
    for (const auto& g : parts) {
        // g(c x) / c^{deg g} is the matching monic factor of s.
        out.push_back(from_integer_coeffs(g).scaled_argument(Rational(c)).monic());
    }
    return out;
}

bool factor_less(const FactorPower& a, const FactorPower& b) {
    if (a.factor.deg() != b.factor.deg()) return a.factor.deg() < b.factor.deg();
    const auto& x = a.factor.coeffs();
    const auto& y = b.factor.coeffs();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] != y[i]) return x[i] < y[i];
    }
    return a.multiplicity < b.multiplicity;
}

}  // namespace

Polynomial Factorization::expand() const {
    Polynomial acc = Polynomial::constant(leading);
    for (const auto& f : factors) acc *= pow(f.factor, static_cast<unsigned>(f.multiplicity));
    return acc;
}

Factorization factor_over_Q(const Polynomial& p) {
    if (p.is_zero()) throw std::domain_error("factorization of the zero polynomial");
    if (p.deg() > kMaxFactorDegree) {
        throw UnsupportedDegree("factorization supports degree <= " +
                                std::to_string(kMaxFactorDegree) + ", got degree " +
                                std::to_string(p.deg()));
    }
    Factorization out;
    out.leading = p.leading();
    for (const auto& [part, mult] : squarefree_decomposition(p)) {
        for (auto& f : factor_squarefree(part)) out.factors.push_back({std::move(f), mult});
    }
    std::sort(out.factors.begin(), out.factors.end(), factor_less);
    return out;
}

bool is_irreducible(const Polynomial& p) {
    if (p.is_zero() || p.deg() == 0) return false;
    auto f = factor_over_Q(p);
    return f.factors.size() == 1 && f.factors.front().multiplicity == 1;
}

}  // namespace solvact::exact
