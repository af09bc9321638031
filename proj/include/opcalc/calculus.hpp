#pragma once

#include <memory>

#include "opcalc/evaluate.hpp"

namespace opcalc {

// An analytic functor X -> (+)_n F[n] (x)_{Sigma_n} X^(x)n presented by its
// coefficient sequence. Reduced: F[0] = 0.
struct AnalyticFunctor {
    SymmetricSequence seq;

    explicit AnalyticFunctor(SymmetricSequence s) : seq(std::move(s)) {
        if (!seq.at(0).is_zero())
            throw std::invalid_argument("analytic functor must be reduced (F[0] = 0)");
    }

    int max_arity() const { return seq.max_arity; }

    // The n-th multilinearized cross effect at the unit, i.e. the n-th
    // coefficient module.
    const SymGroupModule& multilinear_coefficient(int n) const { return seq.at(n); }

    // arity truncation: coefficients above n zeroed
    AnalyticFunctor taylor_polynomial(int n) const;
    // the arity-n homogeneous part
    AnalyticFunctor layer(int n) const;
};

// Coordinate filter onto the arities in [lo, hi].
BasisFilter arity_filter(const Evaluation& ev, int lo, int hi);

// n-th cross effect at inputs X_1..X_k: the summand of F(X_1 (+) ... (+) X_k)
// whose basis words use every input at least once.
struct CrossEffect {
    std::shared_ptr<Evaluation> ambient;  // F evaluated at the labeled sum
    BasisFilter part;                     // the cross-effect subspace
    std::vector<int> multidegree(int degree, int index) const;
};

CrossEffect cross_effect(const AnalyticFunctor& f, const std::vector<GradedVectorSpace>& inputs,
                         int degree_cap);

// Differential: the part of F(X (+) Y) of multidegree exactly 1 in X.
struct Differential {
    std::shared_ptr<Evaluation> ambient;  // F(X (+) Y)
    BasisFilter part;                     // nabla F(X; Y)
    GradedLinearMap derivative;           // F(X (+) Y) -> nabla F(X; Y)
};

Differential differential(const AnalyticFunctor& f, const GradedVectorSpace& x,
                          const GradedVectorSpace& y, int degree_cap);

// Splitting data at vee_n X for n <= n_max: for each copy of X the canonical
// inclusion of the multidegree-1 part and the verified composite identity.
struct SplitCondition {
    struct Level {
        int n = 0;
        std::shared_ptr<Evaluation> ev;            // F(vee_n X)
        std::vector<BasisFilter> parts;            // D_1^i parts, i = 1..n
        std::vector<GradedLinearMap> sections;     // part -> F(vee_n X)
        bool composites_ok = true;
    };
    std::vector<Level> levels;
    bool ok = true;
};

SplitCondition check_split_condition(const AnalyticFunctor& f, const GradedVectorSpace& x,
                                     int n_max, int degree_cap);

// Assembles the block map (+)_{n <= n_max} D_n F(X) -> P_{n_max} F(X) from the
// sections and verifies it is a degreewise isomorphism.
struct SplittingReport {
    bool is_isomorphism = true;
    std::vector<std::pair<int, int>> failures;    // (n, degree) witnesses
    GradedVectorSpace taylor_space;               // P_{n_max} F(X)
    std::vector<GradedVectorSpace> layer_spaces;  // D_n F(X), n = 1..n_max
    GradedLinearMap block_map;
    bool eq1_consistent = true;  // coinvariant layer dims match the direct ones
};

SplittingReport build_splitting(const AnalyticFunctor& f, const GradedVectorSpace& x,
                                const SplitCondition& sections, int n_max, int degree_cap);

}  // namespace opcalc
