#include <algorithm>
#include <stdexcept>

#include "opcalc/operads.hpp"

namespace opcalc {

int Tree::min_leaf() const {
    if (leaf >= 0) return leaf;
    int m = INT32_MAX;
    for (const auto& c : children) m = std::min(m, c.min_leaf());
    return m;
}

int Tree::degree() const {
    if (leaf >= 0) return 0;
    int d = dec_degree;
    for (const auto& c : children) d += c.degree();
    return d;
}

bool operator<(const Tree& a, const Tree& b) {
    if (a.leaf != b.leaf) return a.leaf < b.leaf;
    if (a.dec_degree != b.dec_degree) return a.dec_degree < b.dec_degree;
    if (a.dec_index != b.dec_index) return a.dec_index < b.dec_index;
    return a.children < b.children;
}

bool operator==(const Tree& a, const Tree& b) {
    return a.leaf == b.leaf && a.dec_degree == b.dec_degree && a.dec_index == b.dec_index &&
           a.children == b.children;
}

namespace {

using Terms = std::vector<std::pair<Tree, Scalar>>;

// Restores canonical form (children sorted by minimal leaf) after leaves
// have been relabeled or substituted. Reordering children acts on the
// decoration and contributes a Koszul sign from the subtree degrees.
Terms canonicalize(const Tree& t, const SymmetricSequence& gens) {
    if (t.leaf >= 0) return {{t, Scalar(1)}};
    std::vector<Terms> kids;
    for (const auto& c : t.children) kids.push_back(canonicalize(c, gens));
    const int c = (int)t.children.size();
    Terms out;
    auto rec = [&](auto&& self, int at, Scalar coeff, std::vector<Tree>& chosen) -> void {
        if (at < c) {
            for (const auto& [sub, sc] : kids[at]) {
                chosen.push_back(sub);
                self(self, at + 1, coeff * sc, chosen);
                chosen.pop_back();
            }
            return;
        }
        std::vector<int> mins(c), degs(c);
        for (int i = 0; i < c; ++i) {
            mins[i] = chosen[i].min_leaf();
            degs[i] = chosen[i].degree();
        }
        Perm pi = sorting_permutation(mins);
        int sign = sign_for(gens.rule, pi, degs);
        // decoration transforms by rho(pi)
        const SymGroupModule& gc = gens.at(c);
        GradedLinearMap rho = apply_permutation(gc, pi);
        const Matrix block = rho.block(t.dec_degree);
        for (int r = 0; r < block.rows(); ++r) {
            Scalar v = block.get(r, t.dec_index);
            if (v == 0) continue;
            Tree nt;
            nt.dec_degree = t.dec_degree;
            nt.dec_index = r;
            nt.children.resize(c);
            for (int i = 0; i < c; ++i) nt.children[pi[i]] = chosen[i];
            out.push_back({std::move(nt), coeff * v * Scalar(sign)});
        }
    };
    std::vector<Tree> chosen;
    rec(rec, 0, Scalar(1), chosen);
    return out;
}

Tree relabel_leaves(const Tree& t, const std::vector<int>& map) {
    Tree out = t;
    if (out.leaf >= 0) {
        out.leaf = map[out.leaf];
        return out;
    }
    for (auto& c : out.children) c = relabel_leaves(c, map);
    return out;
}

void leaf_traversal(const Tree& t, std::vector<int>& out) {
    if (t.leaf >= 0) {
        out.push_back(t.leaf);
        return;
    }
    for (const auto& c : t.children) leaf_traversal(c, out);
}

// All canonical trees on the given (sorted) label set with degree <= cap.
std::vector<Tree> trees_on(const std::vector<int>& labels, const SymmetricSequence& gens,
                           int degree_cap) {
    std::vector<Tree> out;
    if (labels.size() == 1) {
        Tree leaf;
        leaf.leaf = labels[0];
        out.push_back(leaf);
    }
    if (labels.size() >= 2) {
        for (const auto& pi : SetPartition::all((int)labels.size())) {
            const int c = pi.num_blocks();
            if (c < 2) continue;
            const SymGroupModule& gc = gens.at(c);
            if (gc.is_zero()) continue;
            std::vector<std::vector<Tree>> block_trees;
            bool empty = false;
            for (const auto& b : pi.blocks) {
                std::vector<int> sub;
                for (int v : b) sub.push_back(labels[v]);
                block_trees.push_back(trees_on(sub, gens, degree_cap));
                if (block_trees.back().empty()) empty = true;
            }
            if (empty) continue;
            std::vector<Tree> chosen;
            auto rec = [&](auto&& self, int at, int deg) -> void {
                if (at == c) {
                    for (const auto& [dd, dim] : gc.space.dims) {
                        if (deg + dd > degree_cap) continue;
                        for (int idx = 0; idx < dim; ++idx) {
                            Tree t;
                            t.dec_degree = dd;
                            t.dec_index = idx;
                            t.children = chosen;
                            out.push_back(std::move(t));
                        }
                    }
                    return;
                }
                for (const auto& sub : block_trees[at]) {
                    int sd = sub.degree();
                    if (deg + sd > degree_cap) continue;
                    chosen.push_back(sub);
                    self(self, at + 1, deg + sd);
                    chosen.pop_back();
                }
            };
            rec(rec, 0, 0);
        }
    }
    // unary vertices on top of anything built so far (positive degree only,
    // so the tower terminates at the cap)
    const SymGroupModule& g1 = gens.at(1);
    if (!g1.is_zero()) {
        size_t head = 0;
        std::vector<Tree> queue = out;
        while (head < queue.size()) {
            Tree base = queue[head++];
            for (const auto& [dd, dim] : g1.space.dims) {
                if (base.degree() + dd > degree_cap) continue;
                for (int idx = 0; idx < dim; ++idx) {
                    Tree t;
                    t.dec_degree = dd;
                    t.dec_index = idx;
                    t.children = {base};
                    out.push_back(t);
                    queue.push_back(t);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct TreeIndex {
    std::map<int, std::vector<Tree>> by_degree;
    std::map<Tree, std::pair<int, int>> find;  // tree -> (degree, index)

    void add_all(const std::vector<Tree>& trees) {
        for (const auto& t : trees) by_degree[t.degree()].push_back(t);
        for (auto& [d, list] : by_degree) {
            std::sort(list.begin(), list.end());
            for (int i = 0; i < (int)list.size(); ++i) find[list[i]] = {d, i};
        }
    }
};

}  // namespace

FreeOperad free_operad(const SymmetricSequence& gens, int max_arity) {
    if (!gens.at(0).is_zero())
        throw std::invalid_argument("free_operad: nullary generators unsupported");
    int degree_cap = INT32_MAX / 4;
    if (!gens.at(1).is_zero()) {
        for (const auto& [d, k] : gens.at(1).space.dims)
            if (d <= 0)
                throw std::invalid_argument(
                    "free_operad: unary generators must have positive degree");
    }

    FreeOperad free;
    free.gens = gens;
    free.op.seq.max_arity = max_arity;
    free.op.seq.rule = gens.rule;
    std::vector<TreeIndex> index(max_arity + 1);

    for (int n = 0; n <= max_arity; ++n) {
        SymGroupModule comp;
        comp.arity = n;
        if (n == 0) {
            free.op.seq.components.push_back(SymGroupModule::zero(0));
            free.tree_basis.push_back({});
            continue;
        }
        std::vector<int> labels(n);
        std::iota(labels.begin(), labels.end(), 0);
        std::vector<Tree> trees = trees_on(labels, gens, degree_cap);
        index[n].add_all(trees);
        for (const auto& [d, list] : index[n].by_degree) comp.space.set_dim(d, (int)list.size());

        std::vector<Tree> flat;
        for (const auto& [d, list] : index[n].by_degree)
            flat.insert(flat.end(), list.begin(), list.end());
        free.tree_basis.push_back(flat);

        for (int g = 0; g + 1 < n; ++g) {
            Perm s = perm_adjacent(n, g);
            std::vector<int> map(s.begin(), s.end());
            GradedLinearMap gm(comp.space, comp.space);
            std::map<int, Matrix> blocks;
            for (const auto& [d, k] : comp.space.dims) blocks[d] = Matrix(k, k);
            for (const auto& [d, list] : index[n].by_degree) {
                for (int col = 0; col < (int)list.size(); ++col) {
                    Tree moved = relabel_leaves(list[col], map);
                    for (const auto& [ct, coeff] : canonicalize(moved, gens)) {
                        auto [dd, row] = index[n].find.at(ct);
                        assert(dd == d);
                        blocks[d].add_to(row, col, coeff);
                    }
                }
            }
            for (auto& [d, blk] : blocks)
                if (!blk.is_zero()) gm.blocks[d] = std::move(blk);
            comp.gens.push_back(std::move(gm));
        }
        free.op.seq.components.push_back(std::move(comp));
    }

    // unit: the bare leaf at arity 1
    free.op.unit = GradedLinearMap(GradedVectorSpace::unit(), free.op.seq.at(1).space);
    {
        Tree leaf;
        leaf.leaf = 0;
        auto [d, i] = index[1].find.at(leaf);
        Matrix u(free.op.seq.at(1).space.dim(d), 1);
        u.set(i, 0, Scalar(1));
        free.op.unit.set_block(d, std::move(u));
    }

    // gamma: grafting
    for (const auto& sig : all_signatures(max_arity)) {
        int j = sig.total();
        TensorBasis dom = free.op.domain(sig);
        GradedLinearMap gm(dom.space, free.op.seq.at(j).space);
        std::vector<int> offs(sig.k + 1, 0);
        for (int s = 0; s < sig.k; ++s) offs[s + 1] = offs[s] + sig.js[s];
        for (const auto& [d, list] : dom.elems) {
            Matrix m(free.op.seq.at(j).space.dim(d), (int)list.size());
            for (int col = 0; col < (int)list.size(); ++col) {
                const TensorBasis::Elem& e = list[col];
                const Tree& outer =
                    index[sig.k].by_degree.at(e[0].first)[e[0].second];
                std::vector<Tree> inner;
                std::vector<int> inner_degs;
                for (int s = 0; s < sig.k; ++s) {
                    Tree it = index[sig.js[s]].by_degree.at(e[s + 1].first)[e[s + 1].second];
                    std::vector<int> shift(sig.js[s]);
                    std::iota(shift.begin(), shift.end(), offs[s]);
                    inner.push_back(relabel_leaves(it, shift));
                    inner_degs.push_back(e[s + 1].first);
                }
                // substitution sign: inner factors are consumed in the leaf
                // traversal order of the outer tree
                std::vector<int> order;
                leaf_traversal(outer, order);
                Perm move(sig.k);
                for (int pos = 0; pos < sig.k; ++pos) move[order[pos]] = pos;
                int sign = sign_for(gens.rule, move, inner_degs);

                // graft: replace leaf s by inner[s]
                auto graft = [&](auto&& self, const Tree& t) -> Tree {
                    if (t.leaf >= 0) return inner[t.leaf];
                    Tree out_t = t;
                    for (auto& c : out_t.children) c = self(self, c);
                    return out_t;
                };
                Tree grafted = graft(graft, outer);
                for (const auto& [ct, coeff] : canonicalize(grafted, gens)) {
                    auto [dd, row] = index[j].find.at(ct);
                    assert(dd == d);
                    m.add_to(row, col, coeff * Scalar(sign));
                }
            }
            gm.set_block(d, std::move(m));
        }
        free.op.gamma[sig] = std::move(gm);
    }
    return free;
}

OperadMorphism FreeOperad::extend(const Operad& target,
                                  const std::vector<GradedLinearMap>& gens_map) const {
    OperadMorphism m;
    m.source = &op;
    m.target = &target;

    // value of a tree in the target, by structural recursion
    auto value = [&](auto&& self, const Tree& t)
        -> std::map<std::pair<int, int>, Scalar> {  // (degree, index) -> coeff in target.at(arity)
        std::map<std::pair<int, int>, Scalar> out;
        if (t.leaf >= 0) {
            const Matrix u = target.unit.block(0);
            for (int r = 0; r < u.rows(); ++r)
                if (u.get(r, 0) != 0) out[{0, r}] = u.get(r, 0);
            return out;
        }
        const int c = (int)t.children.size();
        std::vector<std::map<std::pair<int, int>, Scalar>> kid_vals;
        std::vector<int> arities;
        std::vector<std::vector<int>> blocks;
        for (const auto& ch : t.children) {
            kid_vals.push_back(self(self, ch));
            std::vector<int> lv;
            leaf_traversal(ch, lv);
            std::sort(lv.begin(), lv.end());
            arities.push_back((int)lv.size());
            blocks.push_back(lv);
        }
        Signature sig{c, arities};
        TensorBasis dom = target.domain(sig);
        const GradedLinearMap& gam = target.gamma_at(sig);
        // consecutive-block value, then transported along the block shuffle
        int total = sig.total();
        Perm shuffle(total);
        {
            int at = 0;
            for (int s = 0; s < c; ++s)
                for (int v : blocks[s]) {
                    // local consecutive label `at` corresponds to leaf v
                    shuffle[at++] = v;  // maps consecutive position to actual label
                }
        }
        // normalize: the actual labels are a subset of 0..; rank them
        {
            std::vector<int> sorted = shuffle;
            std::sort(sorted.begin(), sorted.end());
            std::map<int, int> rank;
            for (int i = 0; i < (int)sorted.size(); ++i) rank[sorted[i]] = i;
            for (auto& v : shuffle) v = rank[v];
        }
        const GradedLinearMap trans = apply_permutation(target.seq.at(total), shuffle);
        const Matrix gdec = gens_map[c].block(t.dec_degree);

        // assemble gamma(phi(dec) (x) kid values)
        for (int fr = 0; fr < gdec.rows(); ++fr) {
            Scalar fv = gdec.get(fr, t.dec_index);
            if (fv == 0) continue;
            std::vector<std::pair<TensorBasis::Elem, Scalar>> terms{
                {{{t.dec_degree, fr}}, fv}};
            for (int s = 0; s < c; ++s) {
                std::vector<std::pair<TensorBasis::Elem, Scalar>> next;
                for (const auto& [partial, coeff] : terms) {
                    for (const auto& [di, v] : kid_vals[s]) {
                        auto ext = partial;
                        ext.push_back({di.first, di.second});
                        next.push_back({std::move(ext), coeff * v});
                    }
                }
                terms = std::move(next);
            }
            for (const auto& [elem, coeff] : terms) {
                int d = TensorBasis::degree_of(elem);
                int colidx = dom.index_of(d, elem);
                const Matrix gb = gam.block(d);
                const Matrix tb = trans.block(d);
                for (int r = 0; r < gb.rows(); ++r) {
                    Scalar gv = gb.get(r, colidx);
                    if (gv == 0) continue;
                    for (int rr = 0; rr < tb.rows(); ++rr) {
                        Scalar tv = tb.get(rr, r);
                        if (tv == 0) continue;
                        Scalar add = coeff * gv * tv;
                        auto [it, ins] = out.try_emplace({d, rr}, add);
                        if (!ins) {
                            it->second += add;
                            if (it->second == 0) out.erase(it);
                        }
                    }
                }
            }
        }
        return out;
    };

    for (int n = 0; n <= op.max_arity(); ++n) {
        GradedLinearMap comp(op.seq.at(n).space, target.seq.at(n).space);
        std::map<int, int> seen;
        for (const auto& t : tree_basis[n]) {
            int d = t.degree();
            int col = seen[d]++;
            for (const auto& [di, v] : value(value, t)) {
                if (comp.blocks.find(di.first) == comp.blocks.end())
                    comp.blocks[di.first] =
                        Matrix(target.seq.at(n).space.dim(di.first), op.seq.at(n).space.dim(di.first));
                assert(di.first == d);
                comp.blocks[d].add_to(di.second, col, v);
            }
            (void)col;
        }
        // drop zero blocks
        for (auto it = comp.blocks.begin(); it != comp.blocks.end();) {
            if (it->second.is_zero()) it = comp.blocks.erase(it);
            else ++it;
        }
        m.components.push_back(std::move(comp));
    }
    return m;
}

Operad quadratic_operad(const SymGroupModule& gens2, const std::map<int, Matrix>& relations,
                        int max_arity) {
    if (gens2.arity != 2) throw std::invalid_argument("quadratic_operad: generators must be arity 2");
    SymmetricSequence gens = SymmetricSequence::zeros(std::max(2, max_arity), SignRule::koszul);
    gens.components[2] = gens2;
    FreeOperad free = free_operad(gens, max_arity);

    // relations must span a Sigma_3-subrepresentation
    for (const auto& [d, cols] : relations) {
        if (cols.rows() != free.op.seq.at(3).space.dim(d))
            throw std::invalid_argument("quadratic_operad: relation shape mismatch");
    }
    for (int g = 0; g + 1 < 3; ++g) {
        for (const auto& [d, cols] : relations) {
            Matrix moved = free.op.seq.at(3).gens[g].block(d) * cols;
            if (rank(cols) != rank(cols.beside(moved)))
                throw std::invalid_argument("quadratic_operad: relations not Sigma_3-stable");
        }
    }

    // operadic ideal: saturate gamma-closures arity by arity
    std::vector<std::map<int, Matrix>> ideal(max_arity + 1);
    if (max_arity >= 3) ideal[3] = relations;
    auto reduce_span = [](std::map<int, Matrix>& s) {
        for (auto it = s.begin(); it != s.end();) {
            auto piv = pivot_columns(it->second);
            if (piv.empty()) {
                it = s.erase(it);
            } else {
                it->second = it->second.columns(piv);
                ++it;
            }
        }
    };
    // gamma images sit over consecutive blocks; the ideal also needs all of
    // their symmetric-group translates, so close under the action as well.
    auto close_under_action = [&](int arity, std::map<int, Matrix>& span) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int g = 0; g + 1 < arity; ++g) {
                for (auto& [d, cols] : span) {
                    Matrix moved = free.op.seq.at(arity).gens[g].block(d) * cols;
                    int before = rank(cols);
                    Matrix joined = cols.beside(moved);
                    if (rank(joined) > before) {
                        cols = joined;
                        changed = true;
                    }
                }
            }
        }
    };

    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& sig : all_signatures(max_arity)) {
            int total = sig.total();
            TensorBasis dom = free.op.domain(sig);
            if (dom.space.is_zero()) continue;
            for (int pos = 0; pos <= sig.k; ++pos) {
                int part_arity = pos == 0 ? sig.k : sig.js[pos - 1];
                if (ideal[part_arity].empty()) continue;
                // factor maps: inclusion of the ideal span at `pos`, identity elsewhere
                GradedVectorSpace span_space;
                for (const auto& [d, m] : ideal[part_arity]) span_space.set_dim(d, m.cols());
                GradedLinearMap incl(span_space, free.op.seq.at(part_arity).space);
                for (const auto& [d, m] : ideal[part_arity]) incl.blocks[d] = m;

                std::vector<GradedVectorSpace> src_factors;
                std::vector<GradedLinearMap> facs;
                src_factors.push_back(pos == 0 ? span_space : free.op.seq.at(sig.k).space);
                facs.push_back(pos == 0
                                   ? incl
                                   : GradedLinearMap::identity(free.op.seq.at(sig.k).space));
                for (int s = 0; s < sig.k; ++s) {
                    bool here = (pos == s + 1);
                    src_factors.push_back(here ? span_space : free.op.seq.at(sig.js[s]).space);
                    facs.push_back(here ? incl
                                        : GradedLinearMap::identity(free.op.seq.at(sig.js[s]).space));
                }
                TensorBasis src = TensorBasis::build(src_factors);
                if (src.space.is_zero()) continue;
                std::vector<const GradedLinearMap*> fptr;
                for (const auto& f : facs) fptr.push_back(&f);
                GradedLinearMap lift = tensor_of_maps(src, dom, fptr);
                GradedLinearMap imgs = free.op.gamma_at(sig).compose(lift);
                for (const auto& [d, blk] : imgs.blocks) {
                    if (blk.is_zero()) continue;
                    auto it = ideal[total].find(d);
                    int before = it == ideal[total].end() ? 0 : rank(it->second);
                    Matrix joined = it == ideal[total].end()
                                        ? blk
                                        : it->second.beside(blk);
                    if (rank(joined) > before) {
                        ideal[total][d] = joined;
                        grew = true;
                    }
                }
            }
        }
        for (int m = 0; m <= max_arity; ++m)
            if (!ideal[m].empty()) close_under_action(m, ideal[m]);
        for (auto& s : ideal) reduce_span(s);
    }

    // quotient operad
    Operad q;
    q.seq.max_arity = max_arity;
    q.seq.rule = free.op.rule();
    std::vector<QuotientMaps> qm(max_arity + 1);
    for (int n = 0; n <= max_arity; ++n) {
        qm[n] = quotient_by_span(free.op.seq.at(n).space, ideal[n]);
        SymGroupModule comp;
        comp.arity = n;
        comp.space = qm[n].space;
        for (int g = 0; g + 1 < n; ++g)
            comp.gens.push_back(
                qm[n].projection.compose(free.op.seq.at(n).gens[g]).compose(qm[n].section));
        q.seq.components.push_back(std::move(comp));
    }
    q.unit = qm[1].projection.compose(free.op.unit);
    for (const auto& sig : all_signatures(max_arity)) {
        TensorBasis qdom = q.domain(sig);
        TensorBasis fdom = free.op.domain(sig);
        std::vector<const GradedLinearMap*> sects;
        sects.push_back(&qm[sig.k].section);
        for (int j : sig.js) sects.push_back(&qm[j].section);
        GradedLinearMap lift = tensor_of_maps(qdom, fdom, sects);
        q.gamma[sig] = qm[sig.total()].projection.compose(free.op.gamma_at(sig).compose(lift));
    }
    return q;
}

}  // namespace opcalc
