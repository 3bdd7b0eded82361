#pragma once

#include <memory>
#include <string>
#include <vector>

#include "solvact/dynamics/action.hpp"

namespace solvact::constructions {

using dynamics::Action;
using dynamics::IntervalMap;
using exact::RationalMatrix;
using exact::RationalVector;

/// The parameter s = (s_1, ..., s_d) of the construction.
struct FlowParameter {
    enum class Kind { central, unstable, vector };
    Kind kind = Kind::central;
    /// central: coefficients (α, β) of s = α u + β A^T u in the exact basis of
    /// E^c_*; vector: s itself. Unused for unstable.
    std::vector<double> coefficients{1.0, 0.0};

    static FlowParameter central(double alpha = 1, double beta = 0) {
        return {Kind::central, {alpha, beta}};
    }
    static FlowParameter unstable() { return {Kind::unstable, {}}; }
    static FlowParameter vector(std::vector<double> s) { return {Kind::vector, std::move(s)}; }
};

std::string to_string(FlowParameter::Kind k);

struct BlockSpec {
    /// σ(k) = 1 / (1 + r^-k) and f(x) = r x / (1 + (r - 1) x), so f(I_k) = I_{k+1}.
    double ratio = 2;
    /// Blocks I_k with |k| > depth are left fixed (they lie within r^-depth of 0 or 1).
    long depth = 1000;
    long profile_radius = 40;
};

struct MultiplierProfile {
    std::vector<long> k;
    std::vector<double> c;  ///< c_k = <(A^T)^k s, t0>
    double sup_ratio = 0;   ///< max |c_k| / |c_0|
    double inf_ratio = 0;   ///< min |c_k| / |c_0|

    /// Columns k, c_k.
    std::string to_csv() const;
};

class FlowBlock;

/// a -> f, b^t -> g_t with g_t|I_{-k} = f^{-k} ∘ ξ^{c_k(t)} ∘ f^k on I_0 and
/// c_k(t) = <s, A^k t>.
struct FlowBlockAction {
    std::shared_ptr<const FlowBlock> data;
    Action action;
    RationalVector t0;
    MultiplierProfile profile;  ///< for t0

    const BlockSpec& spec() const;
    const std::vector<double>& s() const;
    FlowParameter::Kind kind() const;

    double sigma(long k) const;
    /// k with x in [σ(k), σ(k+1)).
    long block_index(double x) const;
    double f_power(long m, double x) const;
    /// <(A^T)^k s, t>
    double multiplier(long k, const std::vector<double>& t) const;
    /// g_t evaluated directly by its defining formula on I_{-k}.
    IntervalMap g(const std::vector<double>& t) const;
    IntervalMap f() const;
};

/// Throws GeometryError for a degenerate block partition (ratio <= 1),
/// UnsupportedStructure when E^c_* or E^u needed by s is absent.
FlowBlockAction flowblock_build(const RationalMatrix& a, const FlowParameter& s,
                                const RationalVector& t0, const BlockSpec& spec = {});

MultiplierProfile multiplier_profile(const FlowBlockAction& fb, const RationalVector& t,
                                     long radius);

/// Sample points of (0,1): a uniform grid plus points inside I_k for |k| <= blocks.
std::vector<double> flowblock_samples(const FlowBlockAction& fb, std::size_t grid = 10000,
                                      long blocks = 30, std::size_t per_block = 16);

struct FaithfulnessVerdict {
    bool applicable = true;  ///< false for t0 = 0
    bool moved = false;
    long k = 0;              ///< block I_{-k} holding the moved point
    double multiplier = 0;   ///< c_k
    double x = 0;
    double displacement = 0;
    bool irreducible = false;
    /// Every sampled c_k vanished although A is irreducible and s != 0.
    bool inconsistent = false;
    std::string note;
};

/// Scans k in [-radius, radius] for |c_k| > threshold and a point of I_{-k}
/// moved by more than threshold.
FaithfulnessVerdict faithfulness_probe(const FlowBlockAction& fb, const RationalVector& t0,
                                       long radius = 40, double threshold = 1e-9);

}  // namespace solvact::constructions
