#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "opcalc/operads.hpp"
#include "opcalc/poisson.hpp"

using namespace opcalc;

namespace {

long factorial(int n) {
    long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

TEST_CASE("signature enumeration") {
    auto sigs = all_signatures(3);
    // totals 1..3: (1;1) (1;2) (2;1,1) (1;3) (2;1,2) (2;2,1) (3;1,1,1)
    CHECK(sigs.size() == 7);
}

TEST_CASE("builtin operads pass the law suite") {
    CHECK(check_operad_laws(builtin_operad("com", 5)).ok());
    CHECK(check_operad_laws(builtin_operad("assoc", 4)).ok());
    CHECK(check_operad_laws(builtin_operad("lie", 4)).ok());
    CHECK(check_operad_laws(builtin_operad("com", 4, SignRule::plain)).ok());
}

TEST_CASE("builtin dimensions") {
    auto com = builtin_operad("com", 5);
    for (int k = 1; k <= 5; ++k) CHECK(com.seq.at(k).space.total_dim() == 1);

    auto assoc = builtin_operad("assoc", 4);
    CHECK(assoc.seq.at(4).space.total_dim() == 24);

    auto lie = builtin_operad("lie", 5);
    CHECK(lie.seq.at(5).space.total_dim() == 24);  // (k-1)! at k = 5
    for (int k = 1; k <= 5; ++k) CHECK(lie.seq.at(k).space.total_dim() == factorial(k - 1));
}

TEST_CASE("law checker detects a corrupted gamma entry") {
    auto assoc = builtin_operad("assoc", 4);
    Signature bad{2, {1, 2}};
    assoc.gamma[bad] = assoc.gamma[bad].scaled(Scalar(-1));
    auto report = check_operad_laws(assoc);
    REQUIRE(!report.ok());
    bool named = false;
    for (const auto& v : report.violations)
        if (v.signature.find("2;1,2") != std::string::npos) named = true;
    CHECK(named);
}

TEST_CASE("unknown builtin name") {
    CHECK_THROWS(builtin_operad("frobenius", 3));
}

TEST_CASE("poisson operad: dimensions, grading, laws") {
    auto p2 = builtin_operad("poisson2", 4);
    for (int k = 1; k <= 4; ++k) CHECK(p2.seq.at(k).space.total_dim() == factorial(k));
    // internal grading (n-1)(k - #blocks): top degree k-1 has dim (k-1)!
    CHECK(p2.seq.at(3).space.dim(0) == 1);   // product of three
    CHECK(p2.seq.at(3).space.dim(2) == 2);   // double brackets
    CHECK(p2.seq.at(4).space.dim(3) == 6);
    auto report = check_operad_laws(p2);
    for (const auto& v : report.violations)
        MESSAGE(v.law, " at ", v.signature, " rank ", v.discrepancy_rank);
    CHECK(report.ok());

    auto p3 = builtin_operad("poisson3", 3);
    CHECK(p3.seq.at(2).space.dim(0) == 1);
    CHECK(p3.seq.at(2).space.dim(2) == 1);
    CHECK(check_operad_laws(p3).ok());
}

namespace {

SymmetricSequence binary_gens(const SymGroupModule& g2, int cap) {
    SymmetricSequence gens = SymmetricSequence::zeros(cap, SignRule::koszul);
    gens.components[2] = g2;
    return gens;
}

}  // namespace

TEST_CASE("free operad on a symmetric binary generator") {
    auto free = free_operad(binary_gens(SymGroupModule::trivial(2), 4), 4);
    CHECK(free.op.seq.at(1).space.total_dim() == 1);  // the unit tree
    CHECK(free.op.seq.at(2).space.total_dim() == 1);
    CHECK(free.op.seq.at(3).space.total_dim() == 3);   // three leaf-labeled binary trees
    CHECK(free.op.seq.at(4).space.total_dim() == 15);  // (2n-3)!!
    CHECK(check_operad_laws(free.op).ok());
}

TEST_CASE("free operad on a regular binary generator") {
    auto free = free_operad(binary_gens(SymGroupModule::regular(2), 3), 3);
    CHECK(free.op.seq.at(3).space.total_dim() == 12);  // 3 shapes x 2^2 decorations
    CHECK(check_operad_laws(free.op).ok());
}

TEST_CASE("free operad on empty generators is the unit operad") {
    auto free = free_operad(SymmetricSequence::zeros(3), 3);
    CHECK(free.op.seq.at(1).space.total_dim() == 1);
    CHECK(free.op.seq.at(2).space.total_dim() == 0);
    CHECK(free.op.seq.at(3).space.total_dim() == 0);
}

TEST_CASE("free operad on an arity-3 generator") {
    SymmetricSequence gens = SymmetricSequence::zeros(5, SignRule::koszul);
    gens.components[3] = SymGroupModule::trivial(3);
    auto free = free_operad(gens, 5);
    CHECK(free.op.seq.at(2).space.total_dim() == 0);
    CHECK(free.op.seq.at(3).space.total_dim() == 1);
    // arity 5: root with blocks {3-subset, singleton, singleton}: 10 trees
    CHECK(free.op.seq.at(5).space.total_dim() == 10);
    CHECK(check_operad_laws(free.op).ok());
}

TEST_CASE("universal property of the free operad") {
    // map the symmetric binary generator to the Com product
    auto free = free_operad(binary_gens(SymGroupModule::trivial(2), 4), 4);
    auto com = builtin_operad("com", 4);
    std::vector<GradedLinearMap> gm;
    for (int n = 0; n <= 4; ++n) {
        GradedLinearMap f(free.gens.at(n).space, com.seq.at(n).space);
        if (n == 2) f.set_block(0, Matrix::identity(1));
        gm.push_back(f);
    }
    OperadMorphism phi = free.extend(com, gm);
    CHECK(verify_morphism(phi).ok());
    // the extension hits the generator as prescribed
    CHECK(phi.components[2].block(0).get(0, 0) == Scalar(1));
}

TEST_CASE("quadratic operads: Com, Lie, Assoc presentations") {
    // Com: trivial generator, relations = complement of the symmetrizer in free(3)
    auto free_com = free_operad(binary_gens(SymGroupModule::trivial(2), 3), 3);
    // free(3) is 3-dimensional; the symmetric element is the sum of the three
    // trees, relations kill differences
    std::map<int, Matrix> rel_com;
    rel_com[0] = Matrix::from_rows(
        2, {{Scalar(1), Scalar(0)}, {Scalar(-1), Scalar(1)}, {Scalar(0), Scalar(-1)}});
    auto com_q = quadratic_operad(SymGroupModule::trivial(2), rel_com, 5);
    for (int k = 1; k <= 5; ++k) CHECK(com_q.seq.at(k).space.total_dim() == 1);
    CHECK(check_operad_laws(com_q).ok());

    // Lie: sign generator, relations = span of the Jacobi element
    // [[x0,x1],x2] + cyclic, built through the free operad's own composition
    auto free_lie = free_operad(binary_gens(SymGroupModule::sign(2), 3), 3);
    Signature graft{2, {2, 1}};
    TensorBasis dj = free_lie.op.domain(graft);
    TensorBasis::Elem bb{{0, 0}, {0, 0}, {0, 0}};
    Matrix e1(3, 1);
    {
        const Matrix g = free_lie.op.gamma_at(graft).block(0);
        int col = dj.index_of(0, bb);
        for (int r = 0; r < 3; ++r)
            if (g.get(r, col) != 0) e1.set(r, 0, g.get(r, col));
    }
    Perm cyc = {1, 2, 0};
    Matrix rho = apply_permutation(free_lie.op.seq.at(3), cyc).block(0);
    Matrix jac = e1 + rho * e1 + rho * (rho * e1);
    REQUIRE(!jac.is_zero());
    std::map<int, Matrix> rel_lie;
    rel_lie[0] = jac;
    auto lie_q = quadratic_operad(SymGroupModule::sign(2), rel_lie, 5);
    CHECK(lie_q.seq.at(2).space.total_dim() == 1);
    CHECK(lie_q.seq.at(3).space.total_dim() == 2);
    CHECK(lie_q.seq.at(4).space.total_dim() == 6);
    CHECK(lie_q.seq.at(5).space.total_dim() == 24);
    CHECK(check_operad_laws(lie_q).ok());

    // Assoc: regular generator, relations generated by (xy)z - x(yz) and its
    // Sigma_3 translates (dim 6 inside dim 12)
    auto free_assoc = free_operad(binary_gens(SymGroupModule::regular(2), 3), 3);
    REQUIRE(free_assoc.op.seq.at(3).space.total_dim() == 12);
    Signature left{2, {2, 1}}, right{2, {1, 2}};
    TensorBasis dl = free_assoc.op.domain(left), dr = free_assoc.op.domain(right);
    // decoration 0 of the regular rep is the in-order product
    TensorBasis::Elem el{{0, 0}, {0, 0}, {0, 0}};
    TensorBasis::Elem er{{0, 0}, {0, 0}, {0, 0}};
    Matrix assoc_rel(12, 1);
    {
        const Matrix glb = free_assoc.op.gamma_at(left).block(0);
        const Matrix grb = free_assoc.op.gamma_at(right).block(0);
        int lcol = dl.index_of(0, el), rcol = dr.index_of(0, er);
        for (int row = 0; row < 12; ++row) {
            Scalar v = glb.get(row, lcol) - grb.get(row, rcol);
            if (v != 0) assoc_rel.set(row, 0, v);
        }
    }
    // close the span under the Sigma_3 action
    Matrix closed = assoc_rel;
    for (bool changed = true; changed;) {
        changed = false;
        for (int g = 0; g < 2; ++g) {
            Matrix moved = free_assoc.op.seq.at(3).gens[g].block(0) * closed;
            if (rank(closed.beside(moved)) > rank(closed)) {
                closed = closed.beside(moved);
                changed = true;
            }
        }
    }
    closed = closed.columns(pivot_columns(closed));
    CHECK(closed.cols() == 6);
    std::map<int, Matrix> rel_assoc;
    rel_assoc[0] = closed;
    auto assoc_q = quadratic_operad(SymGroupModule::regular(2), rel_assoc, 4);
    CHECK(assoc_q.seq.at(3).space.total_dim() == 6);
    CHECK(assoc_q.seq.at(4).space.total_dim() == 24);
    CHECK(check_operad_laws(assoc_q).ok());

    // relations that are not Sigma_3-stable are rejected
    std::map<int, Matrix> bad;
    bad[0] = Matrix::from_rows(1, {{Scalar(1)}, {Scalar(0)}, {Scalar(0)}});
    CHECK_THROWS(quadratic_operad(SymGroupModule::trivial(2), bad, 3));
}
