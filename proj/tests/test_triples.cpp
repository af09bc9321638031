#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "opcalc/poisson.hpp"
#include "opcalc/lyndon.hpp"
#include "opcalc/triples.hpp"

using namespace opcalc;

namespace {

long factorial(int n) {
    long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

const GradedVectorSpace K1 = GradedVectorSpace::point(1);

}  // namespace

TEST_CASE("triple laws hold for associated triples of the builtins") {
    CHECK(check_triple_laws(associated_triple(builtin_operad("com", 4))).ok());
    CHECK(check_triple_laws(associated_triple(builtin_operad("assoc", 4))).ok());
    CHECK(check_triple_laws(associated_triple(builtin_operad("lie", 4))).ok());
    auto rep = check_triple_laws(associated_triple(builtin_operad("poisson2", 4)));
    for (const auto& v : rep.violations)
        MESSAGE(v.law, " at ", v.signature, " rank ", v.discrepancy_rank);
    CHECK(rep.ok());
}

TEST_CASE("corrupted mu is reported with its component") {
    auto t = associated_triple(builtin_operad("assoc", 3));
    t.mu[2] = t.mu[2].scaled(Scalar(0));
    auto rep = check_triple_laws(t);
    REQUIRE(!rep.ok());
    bool named = false;
    for (const auto& v : rep.violations)
        if (v.signature.find("2") != std::string::npos) named = true;
    CHECK(named);
}

TEST_CASE("induced operad dimensions (tensor, symmetric, free Lie triples)") {
    // tensor algebra triple -> Assoc, dims n!
    auto t_assoc = associated_triple(builtin_operad("assoc", 5));
    Operad ind = induced_operad(t_assoc);
    for (int n = 1; n <= 5; ++n) CHECK(ind.seq.at(n).space.total_dim() == factorial(n));
    CHECK(check_operad_laws(ind).ok());

    // symmetric algebra triple -> Com, all ones
    auto t_com = associated_triple(builtin_operad("com", 5));
    Operad idc = induced_operad(t_com);
    for (int n = 1; n <= 5; ++n) CHECK(idc.seq.at(n).space.total_dim() == 1);
    CHECK(check_operad_laws(idc).ok());

    // free Lie triple -> Lie, dims (n-1)!
    auto t_lie = associated_triple(builtin_operad("lie", 5));
    Operad idl = induced_operad(t_lie);
    for (int n = 1; n <= 5; ++n) CHECK(idl.seq.at(n).space.total_dim() == factorial(n - 1));
    CHECK(check_operad_laws(idl).ok());
}

TEST_CASE("roundtrip: induced o associated = identity on builtins") {
    for (const char* name : {"com", "assoc", "lie", "poisson2"}) {
        auto a = builtin_operad(name, 4);
        auto rt = roundtrip_identity(a);
        CHECK(rt.ok());
        CHECK(rt.iso.invertible());
        // identity-shaped components
        for (int n = 1; n <= 4; ++n) CHECK(rt.iso.components[n].is_identity());
    }
}

TEST_CASE("canonical nu is the identity modulo the roundtrip for operadic triples") {
    auto t = associated_triple(builtin_operad("assoc", 4));
    auto nu = canonical_nu(t);
    CHECK(nu.triple_map_ok);
    for (int n = 1; n <= 4; ++n) CHECK(nu.components[n].is_identity());

    auto tl = associated_triple(builtin_operad("lie", 4));
    auto nul = canonical_nu(tl);
    CHECK(nul.triple_map_ok);
    for (int n = 1; n <= 4; ++n) CHECK(nul.components[n].is_identity());
}

TEST_CASE("nu detects a perturbed multiplication") {
    auto t = associated_triple(builtin_operad("assoc", 3));
    // negate one mu component: unit laws survive only on untouched arities,
    // and the triple-map property of nu must fail
    t.mu[3] = t.mu[3].scaled(Scalar(-1));
    auto nu = canonical_nu(t);
    CHECK(!nu.triple_map_ok);
}

TEST_CASE("compatibility of the two algebra structures") {
    auto tc = associated_triple(builtin_operad("com", 4));
    CHECK(check_compatibility(tc, K1, 4).compatible);

    auto tl = associated_triple(builtin_operad("lie", 4));
    CHECK(check_compatibility(tl, GradedVectorSpace::point(1, 2), 4).compatible);

    auto tp = associated_triple(builtin_operad("poisson2", 3));
    CHECK(check_compatibility(tp, K1, 3).compatible);

    // single-entry perturbation flips compatibility, with a named component
    auto bad = associated_triple(builtin_operad("assoc", 3));
    bad.mu[2] = bad.mu[2].scaled(Scalar(-1));
    auto rep = check_compatibility(bad, K1, 3);
    CHECK(!rep.compatible);
    CHECK(rep.outer_arity > 0);
}

TEST_CASE("primitively generated: builtins yes, arity-3 generator no") {
    CHECK(is_primitively_generated(builtin_operad("com", 4, SignRule::plain), {1, 2}, 4)
              .primitively_generated);
    CHECK(is_primitively_generated(builtin_operad("assoc", 4, SignRule::plain), {1, 2}, 4)
              .primitively_generated);
    CHECK(is_primitively_generated(builtin_operad("lie", 4, SignRule::plain), {1, 2}, 4)
              .primitively_generated);
    CHECK(is_primitively_generated(builtin_operad("com", 4), {1, 2}, 4).primitively_generated);
    CHECK(is_primitively_generated(builtin_operad("poisson2", 3), {1}, 3).primitively_generated);

    // plain rule so that a degree-1 test space counts arity honestly
    SymmetricSequence gens = SymmetricSequence::zeros(4, SignRule::plain);
    gens.components[3] = SymGroupModule::trivial(3);
    auto free3 = free_operad(gens, 4);
    auto w = is_primitively_generated(free3.op, {1, 2}, 4);
    CHECK(!w.primitively_generated);
    CHECK(w.arity == 2);

    // zero operad: vacuously true
    Operad zero;
    zero.seq = SymmetricSequence::zeros(3, SignRule::koszul);
    zero.unit = GradedLinearMap(GradedVectorSpace::unit(), zero.seq.at(1).space);
    for (const auto& sig : all_signatures(3))
        zero.gamma[sig] = GradedLinearMap(zero.domain(sig).space, zero.seq.at(sig.total()).space);
    CHECK(is_primitively_generated(zero, {1}, 3).primitively_generated);
}

TEST_CASE("functoriality: Lie -> Assoc bracket-to-commutator morphism") {
    // the standard inclusion of operads sends the bracket to xy - yx; the
    // induced operads inherit it through the roundtrip identification
    auto lie = builtin_operad("lie", 3);
    auto assoc = builtin_operad("assoc", 3);
    OperadMorphism phi;
    phi.source = &lie;
    phi.target = &assoc;
    // components: expansion of Lyndon brackets into words
    for (int n = 0; n <= 3; ++n) {
        GradedLinearMap f(lie.seq.at(n).space, assoc.seq.at(n).space);
        if (n >= 1) {
            const auto& ml = MultilinearLie::get(n, 0);
            Matrix m((int)ml.words.size(), ml.dim());
            for (int c = 0; c < ml.dim(); ++c)
                for (int w = 0; w < (int)ml.words.size(); ++w) {
                    Scalar v = ml.expansion.get(w, c);
                    if (v != 0) m.set(w, c, v);
                }
            f.set_block(0, std::move(m));
        }
        phi.components.push_back(std::move(f));
    }
    // NOTE: the word basis of MultilinearLie and the sequence basis of
    // assoc_sequence are both the lex-ordered permutations, so the matrix
    // above is already in the right bases.
    CHECK(verify_morphism(phi).ok());
}
