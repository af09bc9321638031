#pragma once

#include "opcalc/calculus.hpp"
#include "opcalc/operads.hpp"

namespace opcalc {

// A triple (monad) on graded spaces presented analytically: an underlying
// coefficient sequence with multiplication mu : F o F => F given per arity
// on the partition basis, and unit eta : K -> F[1].
struct AnalyticTriple {
    SymmetricSequence seq;
    ComposeResult square;              // compose(seq, seq) with basis bookkeeping
    std::vector<GradedLinearMap> mu;   // per arity: (F o F)[n] -> F[n]
    GradedLinearMap eta;               // K -> F[1]

    int max_arity() const { return seq.max_arity; }
};

// F eta and eta F as sequence maps F => F o F.
std::vector<GradedLinearMap> unit_right(const AnalyticTriple& t);  // F eta
std::vector<GradedLinearMap> unit_left(const AnalyticTriple& t);   // eta F

// Verifies associativity, both unit laws, and naturality (equivariance of
// the mu components), exactly, arity by arity.
LawReport check_triple_laws(const AnalyticTriple& t);

// The triple associated to an operad: mu assembled from gamma over the
// partition basis.
AnalyticTriple associated_triple(const Operad& a);

// The operad induced by a triple: components are the multilinear
// coefficients, gamma the restriction of mu to the consecutive-block slice.
Operad induced_operad(const AnalyticTriple& t);

struct RoundtripResult {
    std::shared_ptr<Operad> induced;
    OperadMorphism iso;      // induced -> original, identity components
    LawReport morphism_report;
    bool ok() const { return morphism_report.ok() && iso.invertible(); }
};

// induced_operad(associated_triple(a)) back to a.
RoundtripResult roundtrip_identity(const Operad& a);

// The canonical transformation nu : T_{a_T} => T, unit insertion followed by
// multiplication, with the verification that it is a morphism of triples.
struct NuResult {
    std::vector<GradedLinearMap> components;  // per arity F[n] -> F[n]
    bool triple_map_ok = true;
    std::vector<int> failing_arities;
};

NuResult canonical_nu(const AnalyticTriple& t);

// The two algebra structures on F(X): via nu then mu, and via the induced
// operad's free multiplication. Reports exact degreewise equality.
struct CompatibilityReport {
    bool compatible = true;
    // named witness: (degree, outer arity) of the first mismatch
    int degree = 0;
    int outer_arity = 0;
};

CompatibilityReport check_compatibility(const AnalyticTriple& t, const GradedVectorSpace& x,
                                        int degree_cap);

// The free multiplication T(T(X)) -> T(X) of a triple, evaluated at x:
// eval_nat(mu) o kappa^{-1}. Shared by the compatibility machinery and the
// algebra module.
struct FreeMultiplication {
    std::shared_ptr<Evaluation> inner;   // T(X)
    std::shared_ptr<Evaluation> outer;   // T(T(X))
    GradedLinearMap kappa;               // eval(F o F, X) -> T(T(X))
    GradedLinearMap multiply;            // T(T(X)) -> T(X)
};

FreeMultiplication free_multiplication(const AnalyticTriple& t, const GradedVectorSpace& x,
                                       int degree_cap);

}  // namespace opcalc
