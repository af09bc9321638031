#include "opcalc/poisson.hpp"

#include <algorithm>

#include "opcalc/lyndon.hpp"

namespace opcalc {

namespace {

// A monomial of the n-Poisson operad: a set partition with one shifted-Lie
// bracket (Lyndon index) per block, blocks ordered by minimal label. The
// block over B carries internal degree (n-1)(|B|-1).
struct PMono {
    std::vector<std::pair<std::vector<int>, int>> blocks;  // (labels asc, lyndon index)
    friend bool operator<(const PMono& a, const PMono& b) { return a.blocks < b.blocks; }
};
using PElt = std::map<PMono, Scalar>;

struct PoissonCalc {
    int shift;  // n-1

    int block_degree(int size) const { return shift * (size - 1); }

    void add(PElt& acc, const PMono& m, const Scalar& c) const {
        if (c == 0) return;
        auto [it, ins] = acc.try_emplace(m, c);
        if (!ins) {
            it->second += c;
            if (it->second == 0) acc.erase(it);
        }
    }

    // product of monomials on disjoint label sets: merge blocks by minimal
    // label with the Koszul sign of the interleaving
    PElt product(const PMono& a, const PMono& b) const {
        std::vector<std::pair<std::vector<int>, int>> items = a.blocks;
        items.insert(items.end(), b.blocks.begin(), b.blocks.end());
        std::vector<int> mins, degs;
        for (const auto& [labels, idx] : items) {
            mins.push_back(labels[0]);
            degs.push_back(block_degree((int)labels.size()));
        }
        Perm pi = sorting_permutation(mins);
        int sign = koszul_sign(pi, degs);
        PMono out;
        out.blocks.resize(items.size());
        for (size_t i = 0; i < items.size(); ++i) out.blocks[pi[i]] = items[i];
        PElt e;
        add(e, out, Scalar(sign));
        return e;
    }

    PElt product(const PElt& a, const PElt& b) const {
        PElt out;
        for (const auto& [ma, ca] : a)
            for (const auto& [mb, cb] : b)
                for (const auto& [m, c] : product(ma, mb)) add(out, m, ca * cb * c);
        return out;
    }

    // shifted-Lie bracket of two single blocks: graded commutator of the
    // word expansions, desuspension sign, re-coordinatized over the union
    PElt block_bracket(const std::pair<std::vector<int>, int>& u,
                       const std::pair<std::vector<int>, int>& v) const {
        const auto& [la, ia] = u;
        const auto& [lb, ib] = v;
        int ma = (int)la.size(), mb = (int)lb.size();
        const MultilinearLie& mla = MultilinearLie::get(ma, shift, true);
        const MultilinearLie& mlb = MultilinearLie::get(mb, shift, true);
        std::vector<int> uni = la;
        uni.insert(uni.end(), lb.begin(), lb.end());
        std::sort(uni.begin(), uni.end());
        std::map<int, int> rank;
        for (int i = 0; i < (int)uni.size(); ++i) rank[uni[i]] = i;
        const MultilinearLie& mlu = MultilinearLie::get(ma + mb, shift, true);

        // graded commutator in the shifted word space
        long da = (long)shift * ma, db = (long)shift * mb;
        int comm_sign = (da % 2 != 0 && db % 2 != 0) ? -1 : 1;
        int desusp = (shift % 2 != 0 && ((long)shift * ma) % 2 != 0) ? -1 : 1;
        std::vector<Scalar> words((size_t)mlu.words.size(), Scalar(0));
        for (int wa = 0; wa < (int)mla.words.size(); ++wa) {
            Scalar ca = mla.expansion.get(wa, ia);
            if (ca == 0) continue;
            for (int wb = 0; wb < (int)mlb.words.size(); ++wb) {
                Scalar cb = mlb.expansion.get(wb, ib);
                if (cb == 0) continue;
                std::vector<int> ab, ba;
                for (int t : mla.words[wa]) ab.push_back(rank[la[t]]);
                for (int t : mlb.words[wb]) ab.push_back(rank[lb[t]]);
                for (int t : mlb.words[wb]) ba.push_back(rank[lb[t]]);
                for (int t : mla.words[wa]) ba.push_back(rank[la[t]]);
                words[mlu.word_index.at(ab)] += ca * cb;
                words[mlu.word_index.at(ba)] -= Scalar(comm_sign) * ca * cb;
            }
        }
        for (auto& w : words) w *= Scalar(desusp);
        auto coords = mlu.from_words(words);
        assert(coords);
        PElt out;
        for (int c = 0; c < (int)coords->size(); ++c) {
            if ((*coords)[c] == 0) continue;
            PMono m;
            m.blocks.push_back({uni, c});
            add(out, m, (*coords)[c]);
        }
        return out;
    }

    int degree(const PMono& m) const {
        int d = 0;
        for (const auto& [labels, idx] : m.blocks) d += block_degree((int)labels.size());
        return d;
    }

    // biderivation extension; d = shift is the bracket's own degree
    PElt bracket(const PMono& a, const PMono& b) const {
        if (a.blocks.size() == 1 && b.blocks.size() == 1)
            return block_bracket(a.blocks[0], b.blocks[0]);
        PElt out;
        if (b.blocks.size() > 1) {
            // {a, b1 b'} = {a,b1} b' + (-1)^{(|a|+d)|b1|} b1 {a,b'}
            PMono b1, brest;
            b1.blocks = {b.blocks[0]};
            brest.blocks.assign(b.blocks.begin() + 1, b.blocks.end());
            PElt t1 = bracket(a, b1);
            PElt bb;
            add(bb, brest, Scalar(1));
            for (const auto& [m, c] : product(t1, bb)) add(out, m, c);
            long sg = (long)(degree(a) + shift) * degree(b1);
            PElt b1e;
            add(b1e, b1, Scalar(sg % 2 != 0 ? -1 : 1));
            for (const auto& [m, c] : product(b1e, bracket(a, brest))) add(out, m, c);
            return out;
        }
        // a has >= 2 blocks, b is a single block:
        // {a1 a', v} = (-1)^{s|a1|} a1 {a', v} + (-1)^{|a'||v|} {a1, v} a'
        PMono a1, arest;
        a1.blocks = {a.blocks[0]};
        arest.blocks.assign(a.blocks.begin() + 1, a.blocks.end());
        long s1 = (long)shift * degree(a1);
        PElt a1e;
        add(a1e, a1, Scalar(s1 % 2 != 0 ? -1 : 1));
        for (const auto& [m, c] : product(a1e, bracket(arest, b))) add(out, m, c);
        long sg = (long)degree(b) * degree(arest);
        PElt reste;
        add(reste, arest, Scalar(sg % 2 != 0 ? -1 : 1));
        for (const auto& [m, c] : product(bracket(a1, b), reste)) add(out, m, c);
        return out;
    }

    PElt bracket(const PElt& a, const PElt& b) const {
        PElt out;
        for (const auto& [ma, ca] : a)
            for (const auto& [mb, cb] : b)
                for (const auto& [m, c] : bracket(ma, mb)) add(out, m, ca * cb * c);
        return out;
    }
};

void leafs(const BracketTree& t, std::vector<int>& out) {
    if (t.leaf >= 0) {
        out.push_back(t.leaf);
        return;
    }
    leafs(*t.left, out);
    leafs(*t.right, out);
}

// Shifted-Lie symmetric sequence: component m is the multilinear free Lie
// algebra on letters of degree n-1, placed in internal degree (n-1)(m-1).
SymmetricSequence shifted_lie_sequence(int max_arity, int n) {
    const int shift = n - 1;
    SymmetricSequence s = SymmetricSequence::zeros(max_arity, SignRule::koszul);
    for (int m = 1; m <= max_arity; ++m) {
        const MultilinearLie& ml = MultilinearLie::get(m, shift, true);
        SymGroupModule comp;
        comp.arity = m;
        int deg = shift * (m - 1);
        comp.space = GradedVectorSpace::point(deg, ml.dim());
        for (int g = 0; g + 1 < m; ++g) {
            Perm sg = perm_adjacent(m, g);
            Matrix rhs((int)ml.words.size(), ml.dim());
            for (int c = 0; c < ml.dim(); ++c) {
                for (int w = 0; w < (int)ml.words.size(); ++w) {
                    Scalar v = ml.expansion.get(w, c);
                    if (v == 0) continue;
                    std::vector<int> relabeled;
                    for (int letter : ml.words[w]) relabeled.push_back(sg[letter]);
                    rhs.add_to(ml.word_index.at(relabeled), c, v);
                }
            }
            auto coords = solve(ml.expansion, rhs);
            assert(coords);
            GradedLinearMap gm(comp.space, comp.space);
            gm.set_block(deg, std::move(*coords));
            comp.gens.push_back(std::move(gm));
        }
        s.components[m] = std::move(comp);
    }
    return s;
}

}  // namespace

Operad poisson_operad(int n, int max_arity) {
    if (n < 2) throw std::invalid_argument("poisson operad needs n >= 2");
    PoissonCalc calc{n - 1};

    ComposeResult comp = compose(com_sequence(max_arity, SignRule::koszul),
                                 shifted_lie_sequence(max_arity, n));
    Operad p;
    p.seq = comp.seq;

    // encode/decode between composite-basis elements and monomials
    auto decode = [&](int arity, int degree, int index) {
        auto [part, elem] = comp.bases[arity].locate(degree, index);
        const SetPartition& pi = comp.bases[arity].partitions[part];
        PMono m;
        for (int j = 0; j < pi.num_blocks(); ++j)
            m.blocks.push_back({pi.blocks[j], elem[j + 1].second});
        return m;
    };
    auto encode = [&](int arity, const PMono& m) {
        SetPartition pi;
        TensorBasis::Elem elem;
        elem.push_back({0, 0});  // the Com coefficient
        for (const auto& [labels, idx] : m.blocks) {
            pi.blocks.push_back(labels);
            elem.push_back({calc.block_degree((int)labels.size()), idx});
        }
        const CompositeBasis& cb = comp.bases[arity];
        int part = (int)(std::lower_bound(cb.partitions.begin(), cb.partitions.end(), pi) -
                         cb.partitions.begin());
        int degree = calc.degree(m);
        return std::pair<int, int>{degree, cb.index_of(part, degree, elem)};
    };

    p.unit = GradedLinearMap(GradedVectorSpace::unit(), p.seq.at(1).space);
    {
        Matrix u(1, 1);
        u.set(0, 0, Scalar(1));
        p.unit.set_block(0, std::move(u));
    }

    for (const auto& sig : all_signatures(max_arity)) {
        TensorBasis dom = p.domain(sig);
        int j = sig.total();
        GradedLinearMap gm(dom.space, p.seq.at(j).space);
        std::vector<int> offs(sig.k + 1, 0);
        for (int s = 0; s < sig.k; ++s) offs[s + 1] = offs[s] + sig.js[s];
        std::map<int, Matrix> blocks;
        for (const auto& [d, cnt] : dom.space.dims)
            blocks[d] = Matrix(p.seq.at(j).space.dim(d), cnt);
        for (const auto& [d, list] : dom.elems) {
            Matrix& target = blocks[d];
            for (int col = 0; col < (int)list.size(); ++col) {
                const TensorBasis::Elem& e = list[col];
                PMono outer = decode(sig.k, e[0].first, e[0].second);
                std::vector<PElt> args(sig.k);
                std::vector<int> arg_degs(sig.k);
                for (int s = 0; s < sig.k; ++s) {
                    PMono g = decode(sig.js[s], e[s + 1].first, e[s + 1].second);
                    for (auto& [labels, idx] : g.blocks)
                        for (auto& v : labels) v += offs[s];
                    args[s] = PElt{};
                    calc.add(args[s], g, Scalar(1));
                    arg_degs[s] = e[s + 1].first;
                }
                // reading order: blocks in order, letters in Lyndon-word order
                std::vector<int> order;
                for (const auto& [labels, idx] : outer.blocks) {
                    const MultilinearLie& ml = MultilinearLie::get((int)labels.size(), n - 1, true);
                    for (int t : ml.lyndon[idx]) order.push_back(labels[t]);
                }
                Perm move(sig.k);
                for (int pos = 0; pos < sig.k; ++pos) move[order[pos]] = pos;
                int sign = koszul_sign(move, arg_degs);
                // applying the tensor of block operations: each odd block
                // operation crosses the inputs consumed by earlier blocks
                {
                    long prior = 0;
                    for (const auto& [labels, idx] : outer.blocks) {
                        int bdeg = calc.block_degree((int)labels.size());
                        if (bdeg % 2 != 0 && prior % 2 != 0) sign = -sign;
                        for (int t : labels) prior += arg_degs[t];
                    }
                }

                // evaluate: per block the bracket tree on its arguments,
                // then the product of the block values in block order
                PElt result;
                bool first = true;
                for (const auto& [labels, idx] : outer.blocks) {
                    const MultilinearLie& ml = MultilinearLie::get((int)labels.size(), n - 1, true);
                    BracketTree tree = BracketTree::of_word(ml.lyndon[idx]);
                    // At each node the right operation crosses the inputs of
                    // the left subtree: (opL (x) opR)(xL (x) xR) Koszul sign.
                    auto eval = [&](auto&& self, const BracketTree& t) -> PElt {
                        if (t.leaf >= 0) return args[labels[t.leaf]];
                        PElt val = calc.bracket(self(self, *t.left), self(self, *t.right));
                        int op_right = calc.block_degree(t.right->size());
                        long in_left = 0;
                        std::vector<int> lv;
                        leafs(*t.left, lv);
                        for (int s : lv) in_left += arg_degs[labels[s]];
                        if (op_right % 2 != 0 && in_left % 2 != 0) {
                            PElt neg;
                            for (const auto& [m, c] : val) neg[m] = -c;
                            val = std::move(neg);
                        }
                        return val;
                    };
                    PElt val = eval(eval, tree);
                    result = first ? val : calc.product(result, val);
                    first = false;
                }
                for (const auto& [m, c] : result) {
                    auto [dd, row] = encode(j, m);
                    assert(dd == d);
                    target.add_to(row, col, c * Scalar(sign));
                }
            }
        }
        for (auto& [d, blk] : blocks)
            if (!blk.is_zero()) gm.blocks[d] = std::move(blk);
        p.gamma[sig] = std::move(gm);
    }
    return p;
}

}  // namespace opcalc
