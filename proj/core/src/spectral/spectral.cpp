#include "solvact/spectral/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "solvact/errors.hpp"

namespace solvact::spectral {

namespace {

using Cx = std::complex<double>;

/// Chebyshev-like T_k with x^k + x^-k = T_k(x + 1/x).
std::vector<Polynomial> reciprocal_basis(std::size_t m) {
    std::vector<Polynomial> t{Polynomial{2}, Polynomial{0, 1}};
    const Polynomial y{0, 1};
    for (std::size_t k = 2; k <= m; ++k) t.push_back(y * t[k - 1] - t[k - 2]);
    return t;
}

Polynomial strip_root(Polynomial g, const Polynomial& lin, bool& found) {
    found = false;
    while (!g.is_zero() && g.deg() > 0) {
        auto [q, r] = exact::divmod(g, lin);
        if (!r.is_zero()) break;
        g = q;
        found = true;
    }
    return g;
}

Eigen::MatrixXd to_eigen(const RationalMatrix& m) {
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j).to_double();
    return e;
}

Basis columns(const Eigen::MatrixXd& m) {
    Basis b;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        b.emplace_back(m.col(j).data(), m.col(j).data() + m.rows());
    }
    return b;
}

/// Orthonormal basis of the column space of prod_{j in drop} (M - μ_j I).
Eigen::MatrixXd invariant_part(const Eigen::MatrixXd& m, const std::vector<Cx>& drop,
                               std::size_t dim) {
    const auto n = m.rows();
    if (dim == 0) return Eigen::MatrixXd(n, 0);
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(n, n);
    const Eigen::MatrixXcd mc = m.cast<Cx>();
    for (const Cx& mu : drop) {
        p = (mc - mu * Eigen::MatrixXcd::Identity(n, n)) * p;
        p /= p.norm();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(p.real(), Eigen::ComputeFullU);
    return svd.matrixU().leftCols(static_cast<Eigen::Index>(dim));
}

}  // namespace

UnitCircleProfile unit_circle_profile(const Polynomial& p) {
    UnitCircleProfile out;
    Polynomial g = exact::gcd(p, p.reversed());
    bool at1 = false, atm1 = false;
    g = strip_root(g, Polynomial{-1, 1}, at1);
    g = strip_root(g, Polynomial{1, 1}, atm1);
    out.root_at_one = p.eval(Rational(1)).is_zero();
    out.root_at_minus_one = p.eval(Rational(-1)).is_zero();
    out.reciprocal_part = g.monic();
    const std::size_t two_m = g.deg();
    if (two_m % 2 != 0) throw std::logic_error("reciprocal part of odd degree");
    const std::size_t m = two_m / 2;
    if (m == 0) {
        out.y_polynomial = Polynomial{1};
        return out;
    }
    const auto& c = out.reciprocal_part.coeffs();
    auto t = reciprocal_basis(m);
    Polynomial q = Polynomial::constant(c[m]);
    for (std::size_t k = 1; k <= m; ++k) q += t[k] * c[m + k];
    out.y_polynomial = q;
    out.roots_in_open_band = exact::sturm_count(q, Rational(-2), Rational(2));
    return out;
}

SpectralClassification classify(const RationalMatrix& a) {
    if (!a.is_square()) throw DimensionError("classification needs a square matrix");
    if (a.determinant().is_zero()) throw SingularMatrix("matrix is singular (det A = 0)");

    SpectralClassification out;
    out.charpoly = exact::charpoly(a);
    out.factors = exact::factor_over_Q(out.charpoly);
    out.irreducible_over_Q =
        out.factors.factors.size() == 1 && out.factors.factors.front().multiplicity == 1;

    const Polynomial sf = out.charpoly.squarefree_part();
    out.profile = unit_circle_profile(sf);
    out.hyperbolic = out.profile.unit_roots() == 0;

    if (!out.hyperbolic) {
        Polynomial prod{1};
        for (const auto& fp : out.factors.factors) {
            if (unit_circle_profile(fp.factor).unit_roots() > 0) prod *= fp.factor;
        }
        out.unit_circle_factor = prod;
    }

    for (auto iv : exact::isolate_real_roots(sf)) {
        if (iv.hi <= Rational(0)) continue;
        if (iv.lo < Rational(0)) {
            // 0 is not a root (A invertible); decide which side the root is on.
            if (exact::sturm_count(sf, Rational(0), iv.hi) == 0) continue;
            iv.lo = Rational(0);
        }
        for (const auto& fp : out.factors.factors) {
            if (exact::sturm_count(fp.factor, iv.lo, iv.hi) == 1) {
                out.positive_real_eigenvalues.push_back(
                    {fp.factor, iv, iv.midpoint().to_double()});
                break;
            }
        }
    }
    out.has_positive_real_eigenvalue = !out.positive_real_eigenvalues.empty();
    for (auto it = out.positive_real_eigenvalues.rbegin();
         it != out.positive_real_eigenvalues.rend(); ++it) {
        if (it->minpoly != Polynomial{-1, 1}) {
            out.chosen_lambda = *it;
            break;
        }
    }
    if (!out.chosen_lambda && out.has_positive_real_eigenvalue) {
        out.chosen_lambda = out.positive_real_eigenvalues.back();
    }
    return out;
}

double norm(const Vec& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

Vec mat_vec(const RationalMatrix& m, const Vec& v) {
    Vec out(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j).to_double() * v[j];
    return out;
}

namespace {

Vec project(const SpectralSplit& s, const Basis& part, std::size_t offset, const Vec& w) {
    Vec out(s.dim, 0.0);
    for (std::size_t k = 0; k < part.size(); ++k) {
        double c = 0;
        for (std::size_t j = 0; j < s.dim; ++j) c += s.coords[(offset + k) * s.dim + j] * w[j];
        for (std::size_t i = 0; i < s.dim; ++i) out[i] += c * part[k][i];
    }
    return out;
}

}  // namespace

Vec SpectralSplit::project_stable(const Vec& w) const { return project(*this, stable, 0, w); }

Vec SpectralSplit::project_unstable(const Vec& w) const {
    return project(*this, unstable, stable.size(), w);
}

Vec SpectralSplit::project_central(const Vec& w) const {
    return project(*this, central, stable.size() + unstable.size(), w);
}

double SpectralSplit::norm_star(const Vec& w) const {
    return std::max(norm(project_stable(w)), norm(project_unstable(w)));
}

double SpectralSplit::invariance_residual(const RationalMatrix& a) const {
    RationalMatrix at = a.transpose();
    double worst = 0;
    auto check = [&](const Basis& part, auto proj) {
        for (const auto& u : part) {
            Vec img = mat_vec(at, u);
            Vec p = (this->*proj)(img);
            double r = 0;
            for (std::size_t i = 0; i < dim; ++i) r = std::max(r, std::abs(img[i] - p[i]));
            worst = std::max(worst, r / std::max(norm(u), 1e-300));
        }
    };
    check(stable, &SpectralSplit::project_stable);
    check(unstable, &SpectralSplit::project_unstable);
    check(central, &SpectralSplit::project_central);
    return worst;
}

double SpectralSplit::reconstruction_residual() const {
    Eigen::MatrixXd b(dim, dim);
    std::size_t col = 0;
    for (const Basis* part : {&stable, &unstable, &central}) {
        for (const auto& u : *part) {
            for (std::size_t i = 0; i < dim; ++i) b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col)) = u[i];
            ++col;
        }
    }
    if (col != dim) return 1.0;
    Eigen::MatrixXd inv(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) inv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = coords[i * dim + j];
    return (b * inv - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

SpectralSplit splitting(const RationalMatrix& a) {
    if (!a.is_square()) throw DimensionError("splitting needs a square matrix");
    const std::size_t d = a.rows();
    const RationalMatrix at = a.transpose();

    // Exact unit-circle multiplicity, and rejection of defective unit blocks.
    std::size_t n_central = 0;
    for (const auto& fp : exact::factor_over_Q(exact::charpoly(a)).factors) {
        int unit = unit_circle_profile(fp.factor).unit_roots();
        if (unit == 0) continue;
        n_central += static_cast<std::size_t>(unit * fp.multiplicity);
        if (fp.multiplicity > 1) {
            std::size_t kernel_dim = d - exact::evaluate(fp.factor, at).rank();
            if (kernel_dim != fp.factor.deg() * static_cast<std::size_t>(fp.multiplicity)) {
                throw UnsupportedStructure(
                    "unit-modulus eigenvalues of " + fp.factor.str() +
                    " have nontrivial Jordan blocks; no bounded central subspace exists");
            }
        }
    }

    const Eigen::MatrixXd m = to_eigen(at);
    Eigen::EigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success) throw UnsupportedStructure("eigen-decomposition failed");
    std::vector<Cx> mu(d);
    for (std::size_t i = 0; i < d; ++i) mu[i] = es.eigenvalues()(static_cast<Eigen::Index>(i));

    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return std::abs(std::abs(mu[x]) - 1.0) < std::abs(std::abs(mu[y]) - 1.0);
    });
    std::vector<int> group(d);  // 0 stable, 1 unstable, 2 central
    for (std::size_t r = 0; r < d; ++r) {
        std::size_t i = order[r];
        group[i] = r < n_central ? 2 : (std::abs(mu[i]) < 1.0 ? 0 : 1);
    }

    SpectralSplit out;
    out.dim = d;
    out.eigenvalues = mu;
    std::size_t counts[3] = {0, 0, 0};
    for (int g : group) ++counts[g];
    Eigen::MatrixXd parts[3];
    for (int g = 0; g < 3; ++g) {
        std::vector<Cx> drop;
        for (std::size_t i = 0; i < d; ++i)
            if (group[i] != g) drop.push_back(mu[i]);
        parts[g] = invariant_part(m, drop, counts[g]);
    }
    out.stable = columns(parts[0]);
    out.unstable = columns(parts[1]);
    out.central = columns(parts[2]);

    Eigen::MatrixXd b(d, d);
    b << parts[0], parts[1], parts[2];
    Eigen::MatrixXd inv = b.inverse();
    out.coords.resize(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) out.coords[i * d + j] = inv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));

    for (std::size_t i = 0; i < d; ++i) {
        double r = std::abs(mu[i]);
        if (group[i] == 0) out.contraction = std::max(out.contraction, r);
        if (group[i] == 1) out.expansion = out.expansion == 0 ? r : std::min(out.expansion, r);
    }

    std::size_t lead = 0;
    for (std::size_t i = 1; i < d; ++i)
        if (std::abs(mu[i]) > std::abs(mu[lead])) lead = i;
    out.leading_eigenvalue = mu[lead];
    {
        Eigen::VectorXd v = es.eigenvectors().col(static_cast<Eigen::Index>(lead)).real();
        v.normalize();
        out.leading_direction.assign(v.data(), v.data() + d);
    }

    // E^c_*: eigenvector of the unit-modulus eigenvalue of smallest |arg|.
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < d; ++i) {
        if (group[i] != 2 || mu[i].imag() < -1e-12) continue;
        if (!pick || std::abs(std::arg(mu[i])) < std::abs(std::arg(mu[*pick]))) pick = i;
    }
    if (pick) {
        Eigen::VectorXcd z = es.eigenvectors().col(static_cast<Eigen::Index>(*pick));
        if (std::abs(mu[*pick].imag()) < 1e-12) {
            Eigen::VectorXd x = z.real();
            if (x.norm() < 1e-8) x = z.imag();
            x.normalize();
            out.central_star.emplace_back(x.data(), x.data() + d);
        } else {
            Eigen::VectorXd x = z.real(), y = z.imag();
            double phi = 0.5 * std::atan2(-2.0 * x.dot(y), x.squaredNorm() - y.squaredNorm());
            Eigen::VectorXd re = x * std::cos(phi) - y * std::sin(phi);
            Eigen::VectorXd im = x * std::sin(phi) + y * std::cos(phi);
            double s = re.norm();
            re /= s;
            im /= s;
            out.central_star.emplace_back(re.data(), re.data() + d);
            out.central_star.emplace_back(im.data(), im.data() + d);
        }
    }
    return out;
}

Basis ExactCentral::to_double() const {
    Basis out;
    for (const auto& v : basis) {
        Vec w;
        for (const auto& x : v) w.push_back(x.to_double());
        out.push_back(std::move(w));
    }
    return out;
}

exact::FieldVector transpose_apply(const RationalMatrix& a, const exact::FieldVector& v) {
    if (v.size() != a.rows()) throw DimensionError("vector length mismatch");
    exact::FieldVector out;
    for (std::size_t i = 0; i < a.cols(); ++i) {
        exact::NumberFieldElement acc(v.front().field(), Rational(0));
        for (std::size_t j = 0; j < a.rows(); ++j) {
            if (!a(j, i).is_zero()) acc += exact::NumberFieldElement(v[j].field(), a(j, i)) * v[j];
        }
        out.push_back(std::move(acc));
    }
    return out;
}

ExactCentral exact_central_star(const RationalMatrix& a) {
    if (!a.is_square()) throw DimensionError("central subspace needs a square matrix");
    const std::size_t d = a.rows();
    const RationalMatrix at = a.transpose();
    // Rejects defective unit blocks.
    (void)splitting(a);

    const Polynomial sf = exact::charpoly(a).squarefree_part();
    const UnitCircleProfile prof = unit_circle_profile(sf);
    ExactCentral out;

    if (prof.roots_in_open_band > 0) {
        const Polynomial& q = prof.y_polynomial;
        std::optional<RationalInterval> best;
        for (const auto& iv : exact::isolate_real_roots(q)) {
            if (iv.lo > Rational(-2) && iv.hi < Rational(2)) best = iv;
        }
        if (!best) throw std::logic_error("unit-circle root count inconsistent with isolation");
        for (const auto& fp : exact::factor_over_Q(q).factors) {
            if (exact::sturm_count(fp.factor, best->lo, best->hi) == 1) {
                out.y = {fp.factor, *best, best->midpoint().to_double()};
                break;
            }
        }
        out.field = out.y.field();
        exact::NumberFieldElement y = exact::NumberFieldElement::generator(out.field);
        RationalMatrix at2 = at * at;
        exact::FieldMatrix m(d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                exact::NumberFieldElement e(out.field, at2(i, j));
                e -= y * exact::NumberFieldElement(out.field, at(i, j));
                if (i == j) e += exact::NumberFieldElement(out.field, Rational(1));
                m[i].push_back(std::move(e));
            }
        }
        auto kernel = exact::field_solve(m);
        if (kernel.empty()) throw std::logic_error("empty central kernel");
        out.basis.push_back(kernel.front());
        out.basis.push_back(transpose_apply(a, kernel.front()));
        return out;
    }
    if (prof.root_at_one || prof.root_at_minus_one) {
        const long sign = prof.root_at_one ? 1 : -1;
        out.y = {Polynomial{-2 * sign, 1}, {Rational(2 * sign) - Rational(1, 2), Rational(2 * sign) + Rational(1, 2)},
                 2.0 * static_cast<double>(sign)};
        out.field = out.y.field();
        RationalMatrix shifted = at - Rational(sign) * RationalMatrix::identity(d);
        auto kernel = shifted.kernel();
        exact::FieldVector v;
        for (const auto& x : kernel.front()) v.emplace_back(out.field, x);
        out.basis.push_back(std::move(v));
        return out;
    }
    throw UnsupportedStructure("matrix has no unit-modulus eigenvalue; E^c_* is trivial");
}

}  // namespace solvact::spectral
