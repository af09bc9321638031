#pragma once

#include "opcalc/triples.hpp"

namespace opcalc {

// An algebra over an operad, presented monadically: the structure map
// xi : T_a(C) -> C on the evaluated free object. The per-arity actions
// theta_n are its restrictions to the outer-arity-n parts; they factor
// through the coinvariants by construction.
struct AlgebraOverOperad {
    std::shared_ptr<const Operad> op;
    std::shared_ptr<AnalyticTriple> triple;   // associated triple of op
    GradedVectorSpace carrier;
    int degree_cap = 0;
    std::shared_ptr<Evaluation> powers;       // T_a(carrier)
    GradedLinearMap xi;                       // T_a(C) -> C

    GradedLinearMap theta(int arity) const;   // restriction of xi
    // unit insertion C -> T_a(C)
    GradedLinearMap unit_insertion() const;
};

// Free algebra on x: carrier = T_a(x), xi = the free multiplication.
AlgebraOverOperad free_algebra(std::shared_ptr<const Operad> op, const GradedVectorSpace& x,
                               int degree_cap);

// Algebra from explicit structure data (xi given on the evaluated powers).
AlgebraOverOperad algebra_from_xi(std::shared_ptr<const Operad> op,
                                  const GradedVectorSpace& carrier, GradedLinearMap xi,
                                  int degree_cap);

// Monadic coherence: xi o eta = id and xi o T(xi) = xi o mu_C, checked
// exactly; violations decoded to composition signatures.
LawReport check_algebra_laws(const AlgebraOverOperad& c);

// Q_n: cokernel of theta_n.
struct QnResult {
    GradedVectorSpace space;
    GradedLinearMap projection;  // carrier -> Q_n
};
QnResult q_n_functor(const AlgebraOverOperad& c, int n);

// Span of a subspace of the carrier, one block of column vectors per degree.
using Subspace = std::map<int, Matrix>;

// The n-fold-product filtration I^n (iterated theta images).
std::vector<Subspace> product_filtration(const AlgebraOverOperad& c, int n_max);

enum class TowerMode { direct_mode, derived_mode };

struct Tower {
    TowerMode mode;
    // levels[m] = I/I^{m} for m = 1..n_max+1 stored at index m (level 1 is zero)
    std::vector<GradedVectorSpace> levels;
    std::vector<GradedLinearMap> projections;   // carrier -> level (direct mode)
    std::vector<GradedLinearMap> sections;      // level -> carrier (direct mode)
    std::vector<Subspace> filtration;           // I^m spans (direct mode)
    std::vector<GradedLinearMap> connecting;    // level m+1 -> level m
    std::vector<GradedVectorSpace> layers;      // I^m/I^{m+1} at index m
    // derived mode: homology table per level: (simplicial degree q -> dims)
    std::vector<std::map<int, std::map<int, int>>> homology;
};

Tower tower(const AlgebraOverOperad& c, int n_max, TowerMode mode, int simplicial_cap);

// Two-sided bar construction B_p = T^{p+1} C with faces and degeneracies.
struct BarResolution {
    std::vector<std::shared_ptr<Evaluation>> levels;   // levels[p] = B_p, p <= P
    std::vector<GradedVectorSpace> spaces;
    std::vector<std::vector<GradedLinearMap>> faces;        // faces[p][i]: B_p -> B_{p-1}
    std::vector<std::vector<GradedLinearMap>> degeneracies; // degeneracies[p][i]: B_p -> B_{p+1}
    LawReport simplicial_identities;

    // normalized chain complex and its homology (degreewise dimensions)
    std::vector<GradedVectorSpace> normalized;
    std::vector<GradedLinearMap> boundary;   // boundary[p]: N_p -> N_{p-1}
    std::map<int, std::map<int, int>> homology() const;  // q -> degree -> dim
    // augmented homology: H_0 compared against the carrier through xi
    bool augmentation_exact(const AlgebraOverOperad& c) const;
};

BarResolution bar_resolution(const AlgebraOverOperad& c, int simplicial_cap);

struct LayerCompare {
    bool equal = true;
    std::map<int, int> layer_dims;      // the tower layer I^n/I^{n+1}
    std::map<int, int> coefficient_dims;  // a(n) (x)_{Sigma_n} (I/I^2)^(x)n
    PrimGenWitness precondition;
};

LayerCompare layer_compare(const AlgebraOverOperad& c, int n, int n_max);

// Right inverse of the indecomposables projection C -> I/I^2(C).
struct SectionResult {
    GradedVectorSpace indecomposables;
    GradedLinearMap projection;
    std::optional<GradedLinearMap> section;
};
SectionResult find_section(const AlgebraOverOperad& c);

struct SplitReport {
    bool section_valid = true;
    bool is_isomorphism = true;
    std::vector<std::pair<int, int>> failures;  // (layer n, degree)
    GradedVectorSpace indecomposables;
    GradedLinearMap alpha;                      // T_a(I/I^2 C) -> C
    bool complete_iso = false;                  // alpha itself iso degreewise
};

// Theorem-style splitting: alpha = xi o T(phi), verified through the towers.
SplitReport split_algebra(const AlgebraOverOperad& c, const GradedLinearMap& phi, int n_max);

}  // namespace opcalc
