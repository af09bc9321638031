#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "opcalc/calculus.hpp"
#include "opcalc/operads.hpp"

using namespace opcalc;

namespace {

const GradedVectorSpace K1 = GradedVectorSpace::point(1);
const GradedVectorSpace K2 = GradedVectorSpace::point(1, 2);

AnalyticFunctor sym2_functor() {
    // F(X) = Sym^2 X: only F[2] = trivial
    SymmetricSequence s = SymmetricSequence::zeros(4, SignRule::plain);
    s.components[2] = SymGroupModule::trivial(2);
    return AnalyticFunctor(std::move(s));
}

}  // namespace

TEST_CASE("cross effects of a degree-2 functor") {
    AnalyticFunctor f = sym2_functor();
    auto cr2 = cross_effect(f, {K1, K1}, 4);
    CHECK(cr2.part.space.dim(2) == 1);
    CHECK(cr2.part.space.total_dim() == 1);
    auto cr3 = cross_effect(f, {K1, K1, K1}, 4);
    CHECK(cr3.part.space.is_zero());

    // reduced: cr_1 F = F
    auto cr1 = cross_effect(f, {K1}, 4);
    CHECK(cr1.part.space == cr1.ambient->space());
}

TEST_CASE("cross effect of the Assoc coefficients: words using both letters") {
    AnalyticFunctor assoc(assoc_sequence(3, SignRule::plain));
    auto cr2 = cross_effect(assoc, {K1, K1}, 2);
    // arity-2 part: words xy and yx
    CHECK(cr2.part.space.dim(2) == 2);
}

TEST_CASE("cross-effect recursion on small functors") {
    // cr_{k-1}F(M1 (+) M2, ...) = cr_k F(M1, M2, ...) (+) cr_{k-1}F(M1, ...)
    //                             (+) cr_{k-1}F(M2, ...)
    std::vector<AnalyticFunctor> fs;
    fs.push_back(AnalyticFunctor(com_sequence(4, SignRule::plain)));
    fs.push_back(AnalyticFunctor(assoc_sequence(4, SignRule::plain)));
    fs.push_back(AnalyticFunctor(lie_sequence(4, SignRule::koszul)));
    fs.push_back(sym2_functor());
    GradedVectorSpace m1 = K1;
    GradedVectorSpace m2 = GradedVectorSpace::point(2);
    for (const auto& f : fs) {
        for (int k = 2; k <= 4; ++k) {
            std::vector<GradedVectorSpace> joined{m1.direct_sum(m2)};
            std::vector<GradedVectorSpace> split{m1, m2};
            for (int t = 2; t < k; ++t) {
                joined.push_back(K1);
                split.push_back(K1);
            }
            auto lhs = cross_effect(f, joined, 5);
            auto top = cross_effect(f, split, 5);
            // (M1, X..) and (M2, X..), each k-1 inputs
            std::vector<GradedVectorSpace> rest1{m1}, rest2{m2};
            for (int t = 2; t < k; ++t) {
                rest1.push_back(K1);
                rest2.push_back(K1);
            }
            auto r1 = cross_effect(f, rest1, 5);
            auto r2 = cross_effect(f, rest2, 5);
            for (const auto& [d, dim] : lhs.part.space.dims) {
                CHECK(dim == top.part.space.dim(d) + r1.part.space.dim(d) +
                                 r2.part.space.dim(d));
            }
        }
    }
}

TEST_CASE("taylor polynomials and layers") {
    AnalyticFunctor assoc(assoc_sequence(4, SignRule::plain));
    // P_1 of the tensor algebra is the identity functor
    auto p1 = assoc.taylor_polynomial(1);
    auto dims = poincare_series(p1.seq, K2, 4);
    CHECK(dims == std::map<int, int>{{1, 2}});

    // D_3 of the Com triple on K(deg1) is one dimensional in degree 3
    AnalyticFunctor com(com_sequence(4, SignRule::plain));
    auto d3 = com.layer(3);
    auto ddims = poincare_series(d3.seq, K1, 4);
    CHECK(ddims == std::map<int, int>{{3, 1}});

    // P_n F = F for F of degree <= n
    AnalyticFunctor f = sym2_functor();
    auto p2 = f.taylor_polynomial(2);
    CHECK(poincare_series(p2.seq, K2, 4) == poincare_series(f.seq, K2, 4));
}

TEST_CASE("differential") {
    AnalyticFunctor com(com_sequence(5, SignRule::plain));
    // nabla F(X; 0) = F[1] (x) X
    auto d0 = differential(com, K2, GradedVectorSpace(), 4);
    CHECK(d0.part.space == K2);

    // F = Com triple, X = Y = K(deg1): dims 1 per total degree >= 1
    auto d = differential(com, K1, K1, 4);
    for (int deg = 1; deg <= 4; ++deg) CHECK(d.part.space.dim(deg) == 1);

    // linearity in X: nabla F(X1 (+) X2; Y) = nabla F(X1; Y) (+) nabla F(X2; Y)
    auto dsum = differential(com, K1.direct_sum(K1), K1, 4);
    for (const auto& [deg, k] : dsum.part.space.dims) CHECK(k == 2 * d.part.space.dim(deg));

    // derivative map is the projection onto the part
    CHECK(d.derivative.compose(d.part.inclusion).is_identity());
}

TEST_CASE("chain rule on coefficients") {
    // D_1(F o G) = D_1 F o D_1 G on the partition basis
    auto f = assoc_sequence(3, SignRule::plain);
    auto g = lie_sequence(3, SignRule::plain);
    auto fg = compose(f, g);
    CHECK(fg.seq.at(1).space.total_dim() ==
          f.at(1).space.total_dim() * g.at(1).space.total_dim());
}

TEST_CASE("Prop deriv part 2: arity truncation of cr_n equals its multilinear part") {
    AnalyticFunctor assoc(assoc_sequence(4, SignRule::plain));
    for (int n = 2; n <= 3; ++n) {
        std::vector<GradedVectorSpace> inputs(n, K1);
        auto cr = cross_effect(assoc, inputs, 4);
        auto ml = filter_basis(*cr.ambient, [&](int d, int i) {
            auto md = cr.ambient->multidegree_of(d, i);
            for (int v : md)
                if (v != 1) return false;
            return true;
        });
        auto low = filter_basis(*cr.ambient, [&](int d, int i) {
            if (cr.ambient->elems(d)[i].arity > n) return false;
            auto md = cr.ambient->multidegree_of(d, i);
            for (int v : md)
                if (v == 0) return false;
            return true;
        });
        CHECK(ml.space == low.space);
    }
}

TEST_CASE("split condition: sections exist and composites are identities") {
    AnalyticFunctor assoc(assoc_sequence(3, SignRule::plain));
    auto sc = check_split_condition(assoc, K1, 2, 3);
    CHECK(sc.ok);
    // n=2: the multidegree-1-in-copy-1 part has dim 2 in degree 2 (xy, yx)
    CHECK(sc.levels[1].parts[0].space.dim(2) == 2);

    AnalyticFunctor zero(SymmetricSequence::zeros(3, SignRule::plain));
    auto scz = check_split_condition(zero, K1, 2, 3);
    CHECK(scz.ok);
    CHECK(scz.levels[0].ev->space().is_zero());
}

TEST_CASE("build_splitting: P_3 = D_1 (+) D_2 (+) D_3 for builtin triples") {
    std::vector<SymmetricSequence> seqs = {com_sequence(3, SignRule::plain),
                                           assoc_sequence(3, SignRule::plain),
                                           lie_sequence(3, SignRule::plain)};
    for (auto& s : seqs) {
        AnalyticFunctor f(s);
        auto sc = check_split_condition(f, K1, 3, 3);
        REQUIRE(sc.ok);
        auto report = build_splitting(f, K1, sc, 3, 3);
        CHECK(report.is_isomorphism);
        CHECK(report.eq1_consistent);
        CHECK(report.failures.empty());
    }

    // spec example: Com triple, dims of the three layers are 1,1,1
    AnalyticFunctor com(com_sequence(3, SignRule::plain));
    auto sc = check_split_condition(com, K1, 3, 3);
    auto report = build_splitting(com, K1, sc, 3, 3);
    for (int n = 1; n <= 3; ++n) CHECK(report.layer_spaces[n - 1].dim(n) == 1);

    // functor supported in arity 1: identity isomorphism
    AnalyticFunctor lin(SymmetricSequence::one(3, SignRule::plain));
    auto scl = check_split_condition(lin, K2, 2, 3);
    auto rl = build_splitting(lin, K2, scl, 2, 3);
    CHECK(rl.is_isomorphism);
    CHECK(rl.block_map.is_identity());
}

TEST_CASE("eq dnfa: layer dims at a wedge computed two ways") {
    std::vector<SymmetricSequence> seqs = {com_sequence(3, SignRule::plain),
                                           assoc_sequence(3, SignRule::plain),
                                           lie_sequence(3, SignRule::plain)};
    for (auto& s : seqs) {
        AnalyticFunctor f(s);
        for (int k = 1; k <= 3; ++k) {
            GradedVectorSpace wedge;
            for (int i = 0; i < k; ++i) wedge = wedge.direct_sum(K1);
            Evaluation ev(f.seq, LabeledSpace::single(wedge), 3);
            for (int n = 1; n <= 3; ++n) {
                auto direct = arity_filter(ev, n, n);
                auto via = poincare_series(f.layer(n).seq, wedge, 3);
                for (const auto& [d, dim] : direct.space.dims) CHECK(dim == via[d]);
            }
        }
    }
}

TEST_CASE("corrupted sections are rejected with a witness") {
    AnalyticFunctor assoc(assoc_sequence(2, SignRule::plain));
    auto sc = check_split_condition(assoc, K1, 2, 2);
    REQUIRE(sc.ok);
    sc.levels[1].sections[0] =
        GradedLinearMap::zero(sc.levels[1].parts[0].space, sc.levels[1].ev->space());
    auto report = build_splitting(assoc, K1, sc, 2, 2);
    CHECK(!report.is_isomorphism);
    REQUIRE(!report.failures.empty());
    CHECK(report.failures.front().first == 2);
}
