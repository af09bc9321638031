#pragma once

#include <string>

#include "opcalc/exactlin.hpp"

namespace opcalc {

inline constexpr int kDefaultArityCap = 7;

// Finite-dimensional representation of the symmetric group on n letters,
// given by the images of the adjacent transpositions s_1..s_{n-1}. Each
// degree of the carrier is a subrepresentation (blocks are degreewise).
struct SymGroupModule {
    int arity = 0;
    GradedVectorSpace space;
    std::vector<GradedLinearMap> gens;  // gens[i] = image of s_{i+1}, swapping letters i+1, i+2

    static SymGroupModule zero(int arity) {
        SymGroupModule m;
        m.arity = arity;
        m.gens.assign(std::max(0, arity - 1),
                      GradedLinearMap::zero(GradedVectorSpace(), GradedVectorSpace()));
        return m;
    }

    static SymGroupModule trivial(int arity, int degree = 0) {
        SymGroupModule m;
        m.arity = arity;
        m.space = GradedVectorSpace::point(degree, 1);
        m.gens.assign(std::max(0, arity - 1), GradedLinearMap::identity(m.space));
        return m;
    }

    static SymGroupModule sign(int arity, int degree = 0) {
        SymGroupModule m = trivial(arity, degree);
        for (auto& g : m.gens) g = g.scaled(Scalar(-1));
        return m;
    }

    // Permutation representation on the n! group elements (left translation).
    static SymGroupModule regular(int arity, int degree = 0);

    bool is_zero() const { return space.is_zero(); }
    int dim(int degree) const { return space.dim(degree); }
};

struct RelationViolation {
    int generator = 0;            // 1-based index of s_i
    int other = 0;                // second generator for braid/commute, 0 for square
    std::string kind;             // "square", "braid", "commute", "shape"
};

struct ActionReport {
    std::vector<RelationViolation> violations;
    bool ok() const { return violations.empty(); }
};

// Checks the Coxeter presentation exactly: s_i^2 = 1, (s_i s_{i+1})^3 = 1,
// (s_i s_j)^2 = 1 for |i-j| >= 2.
ActionReport verify_action(const SymGroupModule& m);

// Image of sigma under the representation, via the adjacent-transposition
// factorization. sigma is 0-based (images of 0..n-1).
GradedLinearMap apply_permutation(const SymGroupModule& m, const Perm& sigma);

struct Coinvariants {
    GradedVectorSpace space;
    GradedLinearMap projection;  // M -> M_Sigma
    GradedLinearMap section;     // M_Sigma -> M, projection o section = id
};

// Image of the averaging idempotent (1/n!) sum_sigma rho(sigma); in
// characteristic zero this realizes both coinvariants and invariants.
// Enumerates the group, so the arity cap applies.
Coinvariants coinvariants(const SymGroupModule& m, int arity_cap = kDefaultArityCap);

// Character inner product with the trivial character: (1/n!) sum_sigma tr rho(sigma),
// evaluated degreewise. Independent dimension oracle for coinvariants.
std::map<int, int> coinvariant_dims_by_character(const SymGroupModule& m,
                                                 int arity_cap = kDefaultArityCap);

// Induced representation Ind_{Sigma_{j_1} x ... x Sigma_{j_k}}^{Sigma_j} of the
// (outer) tensor product of the parts. Basis: (coset representative, tensor
// basis element), cosets ordered by their minimal-length representatives.
SymGroupModule induce(const std::vector<SymGroupModule>& parts,
                      int arity_cap = kDefaultArityCap);

}  // namespace opcalc
