#include "solvact/affine/affine.hpp"

#include <cmath>
#include <random>

#include "solvact/errors.hpp"

namespace solvact::affine {

AffineMap compose(const AffineMap& f, const AffineMap& g) {
    return {f.slope * g.slope, f.slope * g.offset + f.offset};
}

AffineMap inverse(const AffineMap& f) {
    NumberFieldElement inv = f.slope.inverse();
    return {inv, -(inv * f.offset)};
}

AffineMap homothety(const NumberFieldElement& lambda) {
    return {lambda, NumberFieldElement(lambda.field(), Rational(0))};
}

AffineMap translation(const NumberFieldElement& t) {
    return {NumberFieldElement(t.field(), Rational(1)), t};
}

NumberFieldElement AffineRepresentation::pairing(const RationalVector& v) const {
    if (v.size() != t.size()) throw DimensionError("exponent vector length mismatch");
    NumberFieldElement acc(field, Rational(0));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_zero()) acc += NumberFieldElement(field, v[i]) * t[i];
    }
    return acc;
}

AffineMap AffineRepresentation::evaluate(const GroupElement& g) const {
    NumberFieldElement lk = exact::pow(lambda, g.k);
    return {lk, lk * pairing(g.v)};
}

double AffineRepresentation::pairing_double(const std::vector<double>& v) const {
    double s = 0;
    for (std::size_t i = 0; i < t_approx.size(); ++i) s += t_approx[i] * v[i];
    return s;
}

double AffineRepresentation::evaluate_double(const GroupElement& g, double x) const {
    std::vector<double> v;
    for (const auto& c : g.v) v.push_back(c.to_double());
    return std::pow(lambda_approx, static_cast<double>(g.k)) * (x + pairing_double(v));
}

namespace {

void embed(AffineRepresentation& rep) {
    rep.lambda_approx = rep.lambda.to_double();
    rep.t_approx.clear();
    for (const auto& x : rep.t) rep.t_approx.push_back(x.to_double());
}

}  // namespace

AffineRepresentation synthesize(const RationalMatrix& a) {
    auto cls = spectral::classify(a);
    if (!cls.has_positive_real_eigenvalue) {
        throw NoPositiveRealEigenvalue(
            "A has no positive real eigenvalue; an action by orientation-preserving affine maps "
            "with non-abelian image does not exist");
    }
    return synthesize(a, *cls.chosen_lambda);
}

AffineRepresentation synthesize(const RationalMatrix& a, const spectral::RealAlgebraic& info) {
    if (info.minpoly == exact::Polynomial{-1, 1}) {
        throw DegenerateEigenvalue("the only positive real eigenvalue is 1; ψ(a) would be trivial");
    }
    if (info.value <= 0) throw NoPositiveRealEigenvalue("chosen eigenvalue is not positive");
    FieldPtr field = info.field();
    NumberFieldElement lambda = NumberFieldElement::generator(field);
    auto kernel = exact::field_solve(exact::shifted(a.transpose(), lambda));
    if (kernel.empty()) throw InputError("the chosen number is not an eigenvalue of A");
    FieldVector t = kernel.front();
    std::size_t lead = 0;
    while (t[lead].is_zero()) ++lead;
    NumberFieldElement inv = t[lead].inverse();
    for (auto& x : t) x *= inv;

    AffineRepresentation rep{GroupContext(a), info, field, lambda, t, 0.0, {}};
    embed(rep);
    // A^T t = λ t, exactly.
    auto img = exact::shifted(a.transpose(), lambda) * rep.t;
    for (const auto& x : img) {
        if (!x.is_zero()) throw std::logic_error("eigen-equation fails after synthesis");
    }
    return rep;
}

AffineRepresentation with_translation_vector(const AffineRepresentation& rep, FieldVector t) {
    if (t.size() != rep.t.size()) throw DimensionError("translation vector length mismatch");
    AffineRepresentation out = rep;
    out.t = std::move(t);
    embed(out);
    return out;
}

HomomorphismReport homomorphism_check(const AffineRepresentation& rep, std::size_t trials,
                                      std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> kdist(-4, 4), num(-20, 20), den(1, 20);
    auto random_element = [&] {
        GroupElement g{kdist(rng), RationalVector(rep.ctx.dim())};
        for (auto& x : g.v) {
            long n = num(rng);
            x = Rational(n, den(rng));
        }
        return g;
    };
    HomomorphismReport out;
    out.trials = trials;
    for (std::size_t i = 0; i < trials; ++i) {
        GroupElement g1 = random_element(), g2 = random_element();
        AffineMap lhs = rep.evaluate(group::multiply(rep.ctx, g1, g2));
        AffineMap rhs = compose(rep.evaluate(g1), rep.evaluate(g2));
        if (!(lhs == rhs)) {
            if (!out.counterexample) out.counterexample = std::make_pair(g1, g2);
            ++out.violations;
        }
    }
    return out;
}

FaithfulnessCertificate faithfulness_certificate(const AffineRepresentation& rep) {
    const std::size_t d = rep.t.size();
    const std::size_t e = rep.field->degree();
    FaithfulnessCertificate cert;
    cert.coordinates = RationalMatrix(d, e);
    for (std::size_t i = 0; i < d; ++i) {
        auto c = rep.t[i].coords();
        for (std::size_t j = 0; j < e; ++j) cert.coordinates(i, j) = c[j];
    }
    cert.rank = cert.coordinates.rank();
    cert.faithful = cert.rank == d;
    if (!cert.faithful) {
        auto left = cert.coordinates.transpose().kernel();
        cert.witness = left.front();
    }
    return cert;
}

}  // namespace solvact::affine
