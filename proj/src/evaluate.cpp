#include "opcalc/evaluate.hpp"

#include <algorithm>
#include <stdexcept>

namespace opcalc {

namespace {

// Runs of equal letters in a sorted word: (start, length) pairs.
std::vector<std::pair<int, int>> word_runs(const std::vector<int>& sorted_word) {
    std::vector<std::pair<int, int>> runs;
    size_t i = 0;
    while (i < sorted_word.size()) {
        size_t j = i;
        while (j < sorted_word.size() && sorted_word[j] == sorted_word[i]) ++j;
        runs.push_back({(int)i, (int)(j - i)});
        i = j;
    }
    return runs;
}

}  // namespace

Evaluation::Evaluation(const SymmetricSequence& seq, LabeledSpace input, int degree_cap)
    : seq_(&seq), input_(std::move(input)), cap_(degree_cap) {
    for (int s = 0; s < (int)input_.summands.size(); ++s)
        for (const auto& [d, k] : input_.summands[s].dims)
            for (int i = 0; i < k; ++i) letters_.push_back({d, s, i});
    std::sort(letters_.begin(), letters_.end());
    build();
}

int Evaluation::word_degree(int arity, int word_id) const {
    int d = 0;
    for (int id : words_[arity][word_id]) d += letters_[id].degree;
    return d;
}

const std::vector<Evaluation::Elem>& Evaluation::elems(int degree) const {
    static const std::vector<Elem> empty;
    auto it = elems_.find(degree);
    return it == elems_.end() ? empty : it->second;
}

std::vector<int> Evaluation::multidegree_of(int degree, int index) const {
    const Elem& e = elems(degree)[index];
    std::vector<int> md(input_.summands.size(), 0);
    for (int id : words_[e.arity][e.word]) md[letters_[id].summand]++;
    return md;
}

const GradedLinearMap& Evaluation::rho(int n, const Perm& sigma) const {
    auto key = std::make_pair(n, sigma);
    auto it = rho_cache_.find(key);
    if (it != rho_cache_.end()) return it->second;
    return rho_cache_.emplace(key, apply_permutation(seq_->at(n), sigma)).first->second;
}

void Evaluation::build() {
    words_.resize(seq_->max_arity + 1);
    word_ids_.resize(seq_->max_arity + 1);
    for (int n = 0; n <= seq_->max_arity; ++n) {
        const SymGroupModule& m = seq_->at(n);
        if (m.is_zero()) continue;
        int min_mdeg = m.space.dims.begin()->first;
        // sorted words: non-decreasing letter ids, pruned by degree
        std::vector<int> cur;
        int cur_deg = 0;
        auto rec = [&](auto&& self, int from) -> void {
            if ((int)cur.size() == n) {
                word_ids_[n][cur] = (int)words_[n].size();
                words_[n].push_back(cur);
                return;
            }
            for (int id = from; id < (int)letters_.size(); ++id) {
                int rest = (n - 1 - (int)cur.size()) * letters_[id].degree;
                // letters are degree-sorted, so remaining slots cost at least
                // this letter's degree each
                if (cur_deg + letters_[id].degree + rest + min_mdeg > cap_) continue;
                cur.push_back(id);
                cur_deg += letters_[id].degree;
                self(self, id);
                cur_deg -= letters_[id].degree;
                cur.pop_back();
            }
        };
        rec(rec, 0);

        for (int w = 0; w < (int)words_[n].size(); ++w) {
            const std::vector<int>& word = words_[n][w];
            int wdeg = word_degree(n, w);
            std::vector<int> wdegs(n);
            for (int i = 0; i < n; ++i) wdegs[i] = letters_[word[i]].degree;

            // Twisted average over the stabilizer, one Young factor at a
            // time. Sigma_m = union of t_v Sigma_{m-1} with t_v = s_v ... s_{m-2}
            // a left transversal, so Avg_m = T_m o Avg_{m-1} with
            // rho(t_v) = rho(s_v) o rho(t_{v+1}) built incrementally.
            GradedLinearMap avg = GradedLinearMap::identity(m.space);
            for (const auto& [start, len] : word_runs(word)) {
                bool odd = (wdegs[start] % 2 != 0) && seq_->rule == SignRule::koszul;
                for (int mm = 2; mm <= len; ++mm) {
                    GradedLinearMap t = GradedLinearMap::identity(m.space);
                    GradedLinearMap sum = GradedLinearMap::identity(m.space);
                    int sign = 1;
                    for (int v = mm - 2; v >= 0; --v) {
                        t = m.gens[start + v].compose(t);
                        sign = odd ? -sign : sign;
                        sum = sum + t.scaled(Scalar(sign));
                    }
                    avg = sum.scaled(make_scalar(1, mm)).compose(avg);
                }
            }

            Orbit orbit;
            bool any = false;
            for (const auto& [md, dim] : m.space.dims) {
                if (md + wdeg > cap_) continue;
                Matrix e = avg.block(md);
                auto pivots = pivot_columns(e);
                if (pivots.empty()) continue;
                Matrix basis = e.columns(pivots);
                auto coords = solve(basis, e);
                assert(coords);
                orbit.maps[md] = {std::move(basis), std::move(*coords)};
                any = true;
            }
            if (any) orbits_[{n, w}] = std::move(orbit);
        }
    }

    // Global basis: per degree, (arity, word, rank) ascending.
    std::map<int, int> counts;
    for (int n = 0; n <= seq_->max_arity; ++n) {
        for (int w = 0; w < (int)words_[n].size(); ++w) {
            auto it = orbits_.find({n, w});
            if (it == orbits_.end()) continue;
            int wdeg = word_degree(n, w);
            for (const auto& [md, sp] : it->second.maps) {
                int d = md + wdeg;
                int r = sp.first.cols();
                offsets_[{n, w, md}] = counts[d];
                for (int t = 0; t < r; ++t) elems_[d].push_back({n, w, md, t});
                counts[d] += r;
            }
        }
    }
    for (const auto& [d, c] : counts) space_.set_dim(d, c);
}

void Evaluation::project(int n, const std::vector<int>& word, int m_deg,
                         const std::vector<std::pair<int, Scalar>>& mvec, const Scalar& scale,
                         std::map<int, Scalar>& out) const {
    assert((int)word.size() == n);
    Perm sigma = sorting_permutation(word);
    std::vector<int> degs(n);
    for (int i = 0; i < n; ++i) degs[i] = letters_[word[i]].degree;
    int sign = sign_for(seq_->rule, sigma, degs);

    std::vector<int> sorted = word;
    std::sort(sorted.begin(), sorted.end());
    auto wit = word_ids_[n].find(sorted);
    if (wit == word_ids_[n].end()) return;  // beyond the degree cap
    auto oit = orbits_.find({n, wit->second});
    if (oit == orbits_.end()) return;
    auto mit = oit->second.maps.find(m_deg);
    if (mit == oit->second.maps.end()) return;

    const Matrix& proj = mit->second.second;
    const GradedLinearMap& r = rho(n, sigma);
    const Matrix rblock = r.block(m_deg);

    int base = offsets_.at({n, wit->second, m_deg});
    // out += scale * sign * proj * rho * mvec
    std::vector<Scalar> x((size_t)rblock.cols(), Scalar(0));
    for (const auto& [j, c] : mvec) x[j] = c;
    std::vector<Scalar> y((size_t)rblock.rows(), Scalar(0));
    for (int i = 0; i < rblock.rows(); ++i)
        for (const auto& [col, val] : rblock.row(i))
            if (x[col] != 0) y[i] += val * x[col];
    Scalar factor = scale * Scalar(sign);
    for (int q = 0; q < proj.rows(); ++q) {
        Scalar acc(0);
        for (const auto& [col, val] : proj.row(q))
            if (y[col] != 0) acc += val * y[col];
        if (acc == 0) continue;
        Scalar add = factor * acc;
        auto [it2, inserted] = out.try_emplace(base + q, add);
        if (!inserted) {
            it2->second += add;
            if (it2->second == 0) out.erase(it2);
        }
    }
}

Evaluation::Rep Evaluation::include(int degree, int index) const {
    const Elem& e = elems(degree)[index];
    Rep rep;
    rep.arity = e.arity;
    rep.word = words_[e.arity][e.word];
    rep.m_deg = e.m_deg;
    const Matrix& s = orbits_.at({e.arity, e.word}).maps.at(e.m_deg).first;
    for (int i = 0; i < s.rows(); ++i) {
        Scalar v = s.get(i, e.r);
        if (v != 0) rep.mvec.push_back({i, v});
    }
    return rep;
}

GradedLinearMap eval_map(const Evaluation& from, const Evaluation& to, const GradedLinearMap& g) {
    assert(g.source == from.input().total());
    assert(g.target == to.input().total());
    // letter-to-letter expansion of g
    const auto& src_letters = from.letters();
    const auto& tgt_letters = to.letters();
    std::map<std::pair<int, int>, int> tgt_letter_at;  // (degree, flat) -> letter id
    for (int id = 0; id < (int)tgt_letters.size(); ++id) {
        const auto& lt = tgt_letters[id];
        tgt_letter_at[{lt.degree, to.input().flat_index(lt.degree, lt.summand, lt.index)}] = id;
    }
    std::vector<std::vector<std::pair<int, Scalar>>> images(src_letters.size());
    for (int id = 0; id < (int)src_letters.size(); ++id) {
        const auto& l = src_letters[id];
        int col = from.input().flat_index(l.degree, l.summand, l.index);
        Matrix block = g.block(l.degree);
        for (int row = 0; row < block.rows(); ++row) {
            Scalar v = block.get(row, col);
            if (v != 0) images[id].push_back({tgt_letter_at.at({l.degree, row}), v});
        }
    }

    GradedLinearMap out(from.space(), to.space());
    std::map<int, std::vector<std::map<int, Scalar>>> cols;
    for (const auto& [d, list] : from.space().dims) {
        cols[d].resize(list);
        for (int idx = 0; idx < list; ++idx) {
            Evaluation::Rep rep = from.include(d, idx);
            // expand word letters through g
            std::vector<std::pair<std::vector<int>, Scalar>> terms{{{}, Scalar(1)}};
            for (int slot = 0; slot < rep.arity; ++slot) {
                std::vector<std::pair<std::vector<int>, Scalar>> next;
                for (const auto& [w, c] : terms) {
                    for (const auto& [lid, lv] : images[rep.word[slot]]) {
                        auto ext = w;
                        ext.push_back(lid);
                        next.push_back({std::move(ext), c * lv});
                    }
                }
                terms = std::move(next);
            }
            for (const auto& [w, c] : terms)
                to.project(rep.arity, w, rep.m_deg, rep.mvec, c, cols[d][idx]);
        }
    }
    for (const auto& [d, colv] : cols) {
        Matrix m(to.space().dim(d), from.space().dim(d));
        for (int j = 0; j < (int)colv.size(); ++j)
            for (const auto& [i, v] : colv[j]) m.set(i, j, v);
        out.set_block(d, std::move(m));
    }
    return out;
}

GradedLinearMap eval_nat(const Evaluation& from, const Evaluation& to,
                         const std::vector<GradedLinearMap>& per_arity) {
    GradedLinearMap out(from.space(), to.space());
    std::map<int, std::vector<std::map<int, Scalar>>> cols;
    for (const auto& [d, cnt] : from.space().dims) {
        cols[d].resize(cnt);
        for (int idx = 0; idx < cnt; ++idx) {
            Evaluation::Rep rep = from.include(d, idx);
            if (rep.arity >= (int)per_arity.size()) continue;
            const GradedLinearMap& nat = per_arity[rep.arity];
            const Matrix block = nat.block(rep.m_deg);
            std::vector<std::pair<int, Scalar>> mapped;
            for (int row = 0; row < block.rows(); ++row) {
                Scalar acc(0);
                for (const auto& [j, c] : rep.mvec) acc += block.get(row, j) * c;
                if (acc != 0) mapped.push_back({row, acc});
            }
            if (!mapped.empty())
                to.project(rep.arity, rep.word, rep.m_deg, mapped, Scalar(1), cols[d][idx]);
        }
    }
    for (const auto& [d, colv] : cols) {
        Matrix m(to.space().dim(d), from.space().dim(d));
        for (int j = 0; j < (int)colv.size(); ++j)
            for (const auto& [i, v] : colv[j]) m.set(i, j, v);
        out.set_block(d, std::move(m));
    }
    return out;
}

GradedLinearMap eval_kappa(const Evaluation& comp_at_x, const ComposeResult& fg,
                           const Evaluation& g_at_x, const Evaluation& f_at_gx) {
    const SignRule rule = fg.seq.rule;
    GradedLinearMap out(comp_at_x.space(), f_at_gx.space());
    std::map<int, std::vector<std::map<int, Scalar>>> cols;
    for (const auto& [d, cnt] : comp_at_x.space().dims) {
        cols[d].resize(cnt);
        for (int idx = 0; idx < cnt; ++idx) {
            Evaluation::Rep rep = comp_at_x.include(d, idx);
            const int n = rep.arity;
            const CompositeBasis& cb = fg.bases[n];
            std::vector<int> xdegs(n);
            for (int i = 0; i < n; ++i) xdegs[i] = comp_at_x.letters()[rep.word[i]].degree;

            for (const auto& [ci, cval] : rep.mvec) {
                auto [part, elem] = cb.locate(rep.m_deg, ci);
                const SetPartition& pi = cb.partitions[part];
                const int k = pi.num_blocks();

                // Koszul sign: interleave (g_1..g_k, x_0..x_{n-1}) ->
                // (g_1, x|B_1, g_2, x|B_2, ...). Item list: g's then x's.
                std::vector<int> degs;
                for (int j = 0; j < k; ++j) degs.push_back(elem[j + 1].first);
                for (int i = 0; i < n; ++i) degs.push_back(xdegs[i]);
                Perm move(k + n);
                {
                    int pos = 0;
                    std::vector<int> xpos(n);
                    for (int j = 0; j < k; ++j) {
                        move[j] = pos++;
                        for (int v : pi.blocks[j]) xpos[v] = pos++;
                    }
                    for (int i = 0; i < n; ++i) move[k + i] = xpos[i];
                }
                int sign = sign_for(rule, move, degs);

                // each block projects to a letter combination in g_at_x
                std::vector<std::vector<std::pair<int, Scalar>>> block_letters(k);
                bool dead = false;
                for (int j = 0; j < k && !dead; ++j) {
                    std::vector<int> sub;
                    for (int v : pi.blocks[j]) sub.push_back(rep.word[v]);
                    std::map<int, Scalar> img;
                    g_at_x.project((int)sub.size(), sub, elem[j + 1].first,
                                   {{elem[j + 1].second, Scalar(1)}}, Scalar(1), img);
                    int bdeg = elem[j + 1].first;
                    for (int v : pi.blocks[j]) bdeg += xdegs[v];
                    const auto& ls = f_at_gx.letters();
                    for (const auto& [li, lv] : img) {
                        // letter id in f_at_gx of the g_at_x basis elt (bdeg, li);
                        // letters are sorted by (degree, summand, index)
                        Evaluation::Letter key{bdeg, 0, li};
                        auto pos = std::lower_bound(ls.begin(), ls.end(), key);
                        assert(pos != ls.end() && !(key < *pos));
                        block_letters[j].push_back({(int)(pos - ls.begin()), lv});
                    }
                    if (block_letters[j].empty()) dead = true;
                }
                if (dead) continue;

                // outer: f-part (x) letter word (block order)
                std::vector<std::pair<std::vector<int>, Scalar>> words{{{}, Scalar(sign) * cval}};
                for (int j = 0; j < k; ++j) {
                    std::vector<std::pair<std::vector<int>, Scalar>> next;
                    for (const auto& [w, c] : words) {
                        for (const auto& [lid, lv] : block_letters[j]) {
                            auto ext = w;
                            ext.push_back(lid);
                            next.push_back({std::move(ext), c * lv});
                        }
                    }
                    words = std::move(next);
                }
                for (const auto& [w, c] : words)
                    f_at_gx.project(k, w, elem[0].first, {{elem[0].second, Scalar(1)}}, c,
                                    cols[d][idx]);
            }
        }
    }
    for (const auto& [d, colv] : cols) {
        Matrix m(f_at_gx.space().dim(d), comp_at_x.space().dim(d));
        for (int j = 0; j < (int)colv.size(); ++j)
            for (const auto& [i, v] : colv[j]) m.set(i, j, v);
        out.set_block(d, std::move(m));
    }
    return out;
}

BasisFilter filter_basis(const Evaluation& ev,
                         const std::function<bool(int, int)>& keep) {
    BasisFilter bf;
    bf.inclusion = GradedLinearMap(GradedVectorSpace(), ev.space());
    bf.projection = GradedLinearMap(ev.space(), GradedVectorSpace());
    for (const auto& [d, cnt] : ev.space().dims) {
        std::vector<int> kept;
        for (int i = 0; i < cnt; ++i)
            if (keep(d, i)) kept.push_back(i);
        if (kept.empty()) continue;
        bf.space.set_dim(d, (int)kept.size());
        Matrix incl(cnt, (int)kept.size()), proj((int)kept.size(), cnt);
        for (int t = 0; t < (int)kept.size(); ++t) {
            incl.set(kept[t], t, Scalar(1));
            proj.set(t, kept[t], Scalar(1));
        }
        bf.inclusion.blocks[d] = std::move(incl);
        bf.projection.blocks[d] = std::move(proj);
    }
    bf.inclusion.source = bf.space;
    bf.projection.target = bf.space;
    return bf;
}

Evaluation evaluate(const SymmetricSequence& seq, const GradedVectorSpace& x, int degree_cap,
                    bool arity_bounded) {
    if (!arity_bounded) {
        for (const auto& [d, k] : x.dims)
            if (d <= 0)
                throw std::invalid_argument(
                    "evaluate: input with degree <= 0 needs an explicit arity bound");
    }
    return Evaluation(seq, LabeledSpace::single(x), degree_cap);
}

std::map<int, int> poincare_series(const SymmetricSequence& seq, const GradedVectorSpace& x,
                                   int degree_cap, bool arity_bounded) {
    Evaluation ev = evaluate(seq, x, degree_cap, arity_bounded);
    std::map<int, int> out;
    for (const auto& [d, k] : ev.space().dims) out[d] = k;
    return out;
}

}  // namespace opcalc
