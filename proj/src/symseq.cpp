#include "opcalc/symseq.hpp"

#include <algorithm>
#include <stdexcept>

namespace opcalc {

std::vector<SetPartition> SetPartition::all(int n) {
    std::vector<SetPartition> out;
    SetPartition current;
    auto rec = [&](auto&& self, int elem) -> void {
        if (elem == n) {
            out.push_back(current);
            return;
        }
        const size_t count = current.blocks.size();
        for (size_t i = 0; i < count; ++i) {
            current.blocks[i].push_back(elem);
            self(self, elem + 1);
            current.blocks[i].pop_back();
        }
        current.blocks.push_back({elem});
        self(self, elem + 1);
        current.blocks.pop_back();
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

PartitionMove move_partition(const SetPartition& pi, const Perm& sigma) {
    PartitionMove mv;
    int k = pi.num_blocks();
    std::vector<std::pair<std::vector<int>, int>> moved(k);  // (sorted image, source block)
    mv.local.resize(k);
    for (int j = 0; j < k; ++j) {
        std::vector<int> img;
        for (int v : pi.blocks[j]) img.push_back(sigma[v]);
        Perm within = sorting_permutation(img);  // img[t] lands at sorted slot within[t]
        std::sort(img.begin(), img.end());
        moved[j] = {img, j};
        mv.local[j] = within;
    }
    std::sort(moved.begin(), moved.end());
    mv.tau.assign(k, 0);
    for (int pos = 0; pos < k; ++pos) {
        mv.target.blocks.push_back(moved[pos].first);
        mv.tau[moved[pos].second] = pos;
    }
    return mv;
}

SymmetricSequence SymmetricSequence::zeros(int max_arity, SignRule rule) {
    SymmetricSequence s;
    s.max_arity = max_arity;
    s.rule = rule;
    for (int n = 0; n <= max_arity; ++n) s.components.push_back(SymGroupModule::zero(n));
    return s;
}

SymmetricSequence SymmetricSequence::one(int max_arity, SignRule rule) {
    SymmetricSequence s = zeros(max_arity, rule);
    if (max_arity >= 1) s.components[1] = SymGroupModule::trivial(1);
    return s;
}

bool SymmetricSequence::validate() const {
    if ((int)components.size() != max_arity + 1) return false;
    for (int n = 0; n <= max_arity; ++n) {
        if (components[n].arity != n) return false;
        if (!verify_action(components[n]).ok()) return false;
    }
    if (!unital && !components.empty() && !components[0].is_zero()) return false;
    return true;
}

std::pair<int, TensorBasis::Elem> CompositeBasis::locate(int degree, int index) const {
    for (int p = (int)partitions.size() - 1; p >= 0; --p) {
        auto it = offsets[p].find(degree);
        if (it == offsets[p].end()) continue;
        if (index >= it->second) {
            return {p, tensors[p].elems.at(degree)[index - it->second]};
        }
    }
    throw std::out_of_range("CompositeBasis::locate");
}

ComposeResult compose(const SymmetricSequence& f, const SymmetricSequence& g) {
    if (!g.at(0).is_zero())
        throw std::invalid_argument("compose: inner sequence must be non-unital (G[0] = 0)");
    ComposeResult out;
    out.seq.max_arity = f.max_arity;
    out.seq.rule = f.rule;
    const int cap = f.max_arity;

    for (int n = 0; n <= cap; ++n) {
        CompositeBasis cb;
        cb.n = n;
        cb.partitions = SetPartition::all(n);
        std::map<int, int> running;  // degree -> next free index
        for (const auto& pi : cb.partitions) {
            std::vector<GradedVectorSpace> factors;
            factors.push_back(f.at(pi.num_blocks()).space);
            for (const auto& b : pi.blocks) factors.push_back(g.at((int)b.size()).space);
            cb.tensors.push_back(TensorBasis::build(factors));
            std::map<int, int> offs;
            for (const auto& [d, cnt] : cb.tensors.back().space.dims) {
                offs[d] = running[d];
                running[d] += cnt;
            }
            cb.offsets.push_back(std::move(offs));
        }
        for (const auto& [d, cnt] : running) cb.space.set_dim(d, cnt);

        SymGroupModule comp;
        comp.arity = n;
        comp.space = cb.space;
        for (int gi = 0; gi + 1 < n; ++gi) {
            Perm s = perm_adjacent(n, gi);
            GradedLinearMap gm(cb.space, cb.space);
            std::map<int, Matrix> blocks;
            for (const auto& [d, cnt] : cb.space.dims) blocks[d] = Matrix(cnt, cnt);

            for (int p = 0; p < (int)cb.partitions.size(); ++p) {
                const SetPartition& pi = cb.partitions[p];
                const int k = pi.num_blocks();
                PartitionMove mv = move_partition(pi, s);
                int tgt = (int)(std::lower_bound(cb.partitions.begin(), cb.partitions.end(),
                                                 mv.target) -
                                cb.partitions.begin());
                const SymGroupModule& fk = f.at(k);
                GradedLinearMap f_act = apply_permutation(fk, mv.tau);
                std::vector<GradedLinearMap> g_act;
                for (int j = 0; j < k; ++j)
                    g_act.push_back(apply_permutation(g.at((int)pi.blocks[j].size()), mv.local[j]));

                for (const auto& [d, list] : cb.tensors[p].elems) {
                    for (int col = 0; col < (int)list.size(); ++col) {
                        const TensorBasis::Elem& e = list[col];
                        // g-factors reorder by tau; their degrees sit in
                        // tensor parts 1..k.
                        std::vector<int> gdegs(k);
                        for (int j = 0; j < k; ++j) gdegs[j] = e[j + 1].first;
                        int sign = sign_for(f.rule, mv.tau, gdegs);

                        std::vector<std::pair<TensorBasis::Elem, Scalar>> terms;
                        {
                            const auto [fd, fi] = e[0];
                            const Matrix& fm = f_act.block(fd);
                            for (int r = 0; r < fm.rows(); ++r) {
                                Scalar v = fm.get(r, fi);
                                if (v == 0) continue;
                                TensorBasis::Elem start(k + 1);
                                start[0] = {fd, r};
                                terms.push_back({std::move(start), v * Scalar(sign)});
                            }
                        }
                        for (int j = 0; j < k; ++j) {
                            const auto [gd, gidx] = e[j + 1];
                            const Matrix& gmat = g_act[j].block(gd);
                            std::vector<std::pair<TensorBasis::Elem, Scalar>> next;
                            for (const auto& [partial, coeff] : terms) {
                                for (int r = 0; r < gmat.rows(); ++r) {
                                    Scalar v = gmat.get(r, gidx);
                                    if (v == 0) continue;
                                    auto ext = partial;
                                    ext[mv.tau[j] + 1] = {gd, r};
                                    next.push_back({std::move(ext), coeff * v});
                                }
                            }
                            terms = std::move(next);
                        }
                        int src = cb.index_of(p, d, e);
                        for (const auto& [elem, coeff] : terms)
                            blocks[d].add_to(cb.index_of(tgt, d, elem), src, coeff);
                    }
                }
            }
            for (auto& [d, blk] : blocks)
                if (!blk.is_zero()) gm.blocks[d] = std::move(blk);
            comp.gens.push_back(std::move(gm));
        }
        out.seq.components.push_back(std::move(comp));
        out.bases.push_back(std::move(cb));
    }
    return out;
}

}  // namespace opcalc
