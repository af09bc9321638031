#pragma once

#include <string>

#include "opcalc/evaluate.hpp"

namespace opcalc {

// Composition signature (k; j_1..j_k): an a(k)-shaped product of inner
// factors of arities j_1..j_k landing in arity j_1+...+j_k.
struct Signature {
    int k = 0;
    std::vector<int> js;

    int total() const {
        int t = 0;
        for (int j : js) t += j;
        return t;
    }
    std::string str() const {
        std::string s = std::to_string(k) + ";";
        for (size_t i = 0; i < js.size(); ++i) s += (i ? "," : "") + std::to_string(js[i]);
        return s;
    }
    friend bool operator<(const Signature& a, const Signature& b) {
        return std::tie(a.k, a.js) < std::tie(b.k, b.js);
    }
    friend bool operator==(const Signature& a, const Signature& b) {
        return a.k == b.k && a.js == b.js;
    }
};

// All signatures with every j_s >= 1 and total <= max_total.
std::vector<Signature> all_signatures(int max_total);

struct Operad {
    SymmetricSequence seq;
    GradedLinearMap unit;  // K (degree 0) -> seq[1]
    std::map<Signature, GradedLinearMap> gamma;

    int max_arity() const { return seq.max_arity; }
    SignRule rule() const { return seq.rule; }

    // Tensor basis of the gamma domain at a signature.
    TensorBasis domain(const Signature& sig) const;
    const GradedLinearMap& gamma_at(const Signature& sig) const;
};

struct LawViolation {
    std::string law;        // "associativity", "unit", "equivariance-perm",
                            // "equivariance-block", "action", "shape"
    std::string signature;  // offending signature (possibly compound)
    int discrepancy_rank = 0;
};

struct LawReport {
    std::vector<LawViolation> violations;
    bool ok() const { return violations.empty(); }
};

// Exhaustive verification of the three operad diagram families over all
// signatures with total arity <= N. Symmetric-group conditions are checked
// on adjacent-transposition generators at every signature, which generates
// the full family (signature sets are permutation-closed).
LawReport check_operad_laws(const Operad& a);

// Built-in operads. `poisson(n)` is spelled "poisson2", "poisson3", ...
Operad builtin_operad(const std::string& name, int max_arity,
                      SignRule rule = SignRule::koszul);

// component sequences of the builtins (exposed for tests and the calculus)
SymmetricSequence com_sequence(int max_arity, SignRule rule);
SymmetricSequence assoc_sequence(int max_arity, SignRule rule);
SymmetricSequence lie_sequence(int max_arity, SignRule rule);

struct OperadMorphism {
    const Operad* source = nullptr;
    const Operad* target = nullptr;
    std::vector<GradedLinearMap> components;  // per arity

    bool invertible() const {
        for (const auto& c : components)
            if (!c.is_isomorphism()) return false;
        return true;
    }
};

// Checks equivariance and compatibility with gamma and units.
LawReport verify_morphism(const OperadMorphism& m);

// Rooted-tree basis of the free operad: leaves labeled, internal vertices
// decorated by generator basis elements, children ordered by minimal leaf.
struct Tree {
    int leaf = -1;  // leaf label, or -1 for an internal vertex
    int dec_degree = 0;
    int dec_index = -1;  // basis index within gens[#children] at dec_degree
    std::vector<Tree> children;

    int min_leaf() const;
    int degree() const;
    friend bool operator<(const Tree& a, const Tree& b);
    friend bool operator==(const Tree& a, const Tree& b);
};

struct FreeOperad {
    Operad op;
    std::vector<std::vector<Tree>> tree_basis;  // per arity; parallel to component basis
    SymmetricSequence gens;

    // Universal property: the unique morphism extending an equivariant map
    // of sequences gens -> target (given per arity on generator spaces).
    OperadMorphism extend(const Operad& target,
                          const std::vector<GradedLinearMap>& gens_map) const;
};

FreeOperad free_operad(const SymmetricSequence& gens, int max_arity);

// Quotient of free_operad(gens2-in-arity-2) by the operadic ideal generated
// by a subspace of the arity-3 component (columns of `relations` per degree).
Operad quadratic_operad(const SymGroupModule& gens2, const std::map<int, Matrix>& relations,
                        int max_arity);

struct PrimGenWitness {
    bool primitively_generated = true;
    int arity = 0, degree = 0;  // first failure
    std::string note;
};

// Exactness reading of the Cartesian square: the image of
// a(n) (x)_{Sigma_n} T_a(X)^(x)n -> T_a(X) must be exactly the arity >= n part,
// for generic test spaces in degree 1 of the given dimensions.
PrimGenWitness is_primitively_generated(const Operad& a, const std::vector<int>& test_dims,
                                        int degree_cap);

}  // namespace opcalc
