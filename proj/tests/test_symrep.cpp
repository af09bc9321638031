#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "opcalc/symrep.hpp"

using namespace opcalc;

TEST_CASE("verify_action accepts valid representations") {
    CHECK(verify_action(SymGroupModule::trivial(3)).ok());
    CHECK(verify_action(SymGroupModule::sign(4)).ok());
    CHECK(verify_action(SymGroupModule::regular(3)).ok());
    CHECK(verify_action(SymGroupModule::regular(4)).ok());
    CHECK(verify_action(SymGroupModule::trivial(1)).ok());
    CHECK(verify_action(SymGroupModule::zero(2)).ok());
}

TEST_CASE("verify_action names the broken relation") {
    SymGroupModule bad = SymGroupModule::trivial(3);
    bad.gens[0] = bad.gens[0].scaled(Scalar(2));  // s_1^2 = 4 != 1
    auto report = verify_action(bad);
    REQUIRE(!report.ok());
    CHECK(report.violations.front().generator == 1);
    CHECK(report.violations.front().kind == "square");
}

TEST_CASE("apply_permutation is a homomorphism") {
    SymGroupModule reg = SymGroupModule::regular(3);
    CHECK(apply_permutation(reg, perm_identity(3)).is_identity());
    CHECK(apply_permutation(reg, perm_adjacent(3, 0)) == reg.gens[0]);

    // 3-cycle (1 2 3): slot 0 -> 1 -> 2 -> 0, equals s_1 o s_2 as functions
    Perm cyc = {1, 2, 0};
    GradedLinearMap expect = reg.gens[0].compose(reg.gens[1]);
    CHECK(apply_permutation(reg, cyc) == expect);

    std::mt19937 rng(11);
    auto elements = all_permutations(4);
    SymGroupModule reg4 = SymGroupModule::regular(4);
    std::uniform_int_distribution<int> pick(0, (int)elements.size() - 1);
    for (int t = 0; t < 12; ++t) {
        Perm a = elements[pick(rng)], b = elements[pick(rng)];
        CHECK(apply_permutation(reg4, perm_compose(a, b)) ==
              apply_permutation(reg4, a).compose(apply_permutation(reg4, b)));
    }

    CHECK_THROWS(apply_permutation(reg, Perm{0, 0, 2}));
}

TEST_CASE("coinvariants via averaging") {
    // trivial rep: everything survives
    auto triv = coinvariants(SymGroupModule::trivial(4));
    CHECK(triv.space.dim(0) == 1);
    CHECK(triv.projection.is_identity());

    // regular rep of Sigma_3: average has rank 1
    auto reg = coinvariants(SymGroupModule::regular(3));
    CHECK(reg.space.dim(0) == 1);
    CHECK(reg.projection.compose(reg.section).is_identity());

    // sign rep of Sigma_2: e = (1 + (-1))/2 = 0
    auto sgn = coinvariants(SymGroupModule::sign(2));
    CHECK(sgn.space.is_zero());

    CHECK_THROWS(coinvariants(SymGroupModule::trivial(8)));
}

TEST_CASE("coinvariant dimension equals trivial-character multiplicity") {
    std::vector<SymGroupModule> mods = {
        SymGroupModule::trivial(3), SymGroupModule::sign(3), SymGroupModule::regular(3),
        SymGroupModule::regular(4), SymGroupModule::sign(4),
        induce({SymGroupModule::trivial(2), SymGroupModule::sign(1)})};
    for (const auto& m : mods) {
        auto direct = coinvariants(m);
        auto by_char = coinvariant_dims_by_character(m);
        for (const auto& [d, k] : m.space.dims) {
            int expect = by_char.count(d) ? by_char.at(d) : 0;
            CHECK(direct.space.dim(d) == expect);
        }
    }
}

TEST_CASE("induction dimensions and known cases") {
    // Ind from Sigma_1 x Sigma_1 of trivials = regular rep of Sigma_2
    auto reg2 = induce({SymGroupModule::trivial(1), SymGroupModule::trivial(1)});
    CHECK(reg2.space.dim(0) == 2);
    CHECK(verify_action(reg2).ok());
    CHECK(coinvariants(reg2).space.dim(0) == 1);

    // index-1 subgroup: nothing happens
    auto same = induce({SymGroupModule::trivial(2)});
    CHECK(same.space.dim(0) == 1);
    CHECK(verify_action(same).ok());

    // Sigma_1^3 -> Sigma_3 gives the regular rep, dim 6
    auto reg3 = induce({SymGroupModule::trivial(1), SymGroupModule::trivial(1),
                        SymGroupModule::trivial(1)});
    CHECK(reg3.space.dim(0) == 6);
    CHECK(verify_action(reg3).ok());
    CHECK(coinvariants(reg3).space.dim(0) == 1);

    // dim = multinomial * product of part dims
    auto mixed = induce({SymGroupModule::regular(2), SymGroupModule::trivial(2)});
    CHECK(mixed.space.dim(0) == 6 * 2);  // binom(4,2) * 2 * 1
    CHECK(verify_action(mixed).ok());

    // graded part: degrees add up
    SymGroupModule shifted = SymGroupModule::trivial(1, 2);
    auto graded = induce({shifted, SymGroupModule::trivial(1)});
    CHECK(graded.space.dim(2) == 2);
    CHECK(verify_action(graded).ok());

    CHECK_THROWS(induce({SymGroupModule::regular(4), SymGroupModule::regular(4)}));
}

TEST_CASE("induced sign representations keep their character") {
    // Ind of sign (x) sign from Sigma_2 x Sigma_2 to Sigma_4: no trivial component.
    auto ind = induce({SymGroupModule::sign(2), SymGroupModule::sign(2)});
    CHECK(ind.space.dim(0) == 6);
    CHECK(verify_action(ind).ok());
    CHECK(coinvariants(ind).space.is_zero());
}
