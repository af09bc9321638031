#include "opcalc/operads.hpp"

#include <algorithm>
#include <stdexcept>

#include "opcalc/lyndon.hpp"
#include "opcalc/poisson.hpp"

namespace opcalc {

std::vector<Signature> all_signatures(int max_total) {
    std::vector<Signature> out;
    for (int total = 1; total <= max_total; ++total) {
        for (int k = 1; k <= total; ++k) {
            std::vector<int> js(k, 1);
            int rest = total - k;
            auto rec = [&](auto&& self, int pos, int extra) -> void {
                if (pos == k) {
                    if (extra == 0) out.push_back({k, js});
                    return;
                }
                for (int add = 0; add <= extra; ++add) {
                    js[pos] = 1 + add;
                    self(self, pos + 1, extra - add);
                }
            };
            rec(rec, 0, rest);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

TensorBasis Operad::domain(const Signature& sig) const {
    std::vector<GradedVectorSpace> factors;
    factors.push_back(seq.at(sig.k).space);
    for (int j : sig.js) factors.push_back(seq.at(j).space);
    return TensorBasis::build(factors);
}

const GradedLinearMap& Operad::gamma_at(const Signature& sig) const {
    auto it = gamma.find(sig);
    if (it == gamma.end()) throw std::out_of_range("gamma missing at " + sig.str());
    return it->second;
}

namespace {

int map_rank(const GradedLinearMap& f) {
    int r = 0;
    for (const auto& [d, blk] : f.blocks) r += rank(blk);
    return r;
}

// Block relabeling beta(sigma, js) in Sigma_j: letter at old slot s, local
// position t moves to the new offset of slot sigma(s) plus t.
Perm block_permutation(const Perm& sigma, const std::vector<int>& js) {
    int k = (int)js.size();
    std::vector<int> old_off(k + 1, 0);
    for (int s = 0; s < k; ++s) old_off[s + 1] = old_off[s] + js[s];
    std::vector<int> new_js(k);
    Perm inv = perm_inverse(sigma);
    for (int s = 0; s < k; ++s) new_js[s] = js[inv[s]];
    std::vector<int> new_off(k + 1, 0);
    for (int s = 0; s < k; ++s) new_off[s + 1] = new_off[s] + new_js[s];
    Perm beta(old_off[k]);
    for (int s = 0; s < k; ++s)
        for (int t = 0; t < js[s]; ++t) beta[old_off[s] + t] = new_off[sigma[s]] + t;
    return beta;
}

}  // namespace

LawReport check_operad_laws(const Operad& a) {
    LawReport report;
    const int cap = a.max_arity();

    for (int n = 0; n <= cap; ++n) {
        if (!verify_action(a.seq.at(n)).ok())
            report.violations.push_back({"action", std::to_string(n), 0});
    }
    if (!a.seq.unital && !a.seq.at(0).is_zero())
        report.violations.push_back({"shape", "0", 0});

    auto sigs = all_signatures(cap);
    for (const auto& sig : sigs) {
        if (!a.gamma.count(sig)) {
            report.violations.push_back({"shape", sig.str(), 0});
            return report;
        }
    }

    // (b) unit laws
    for (int k = 1; k <= cap; ++k) {
        const GradedVectorSpace& ak = a.seq.at(k).space;
        if (ak.is_zero()) continue;
        {
            Signature sig{k, std::vector<int>(k, 1)};
            TensorBasis dom = a.domain(sig);
            // gamma o (id (x) unit^(x)k) must be the canonical iso a(k) (x) K^k = a(k)
            GradedLinearMap id_ak = GradedLinearMap::identity(ak);
            std::vector<GradedVectorSpace> unit_factors{ak};
            for (int s = 0; s < k; ++s) unit_factors.push_back(a.unit.source);
            TensorBasis triv = TensorBasis::build(unit_factors);
            std::vector<const GradedLinearMap*> maps{&id_ak};
            for (int s = 0; s < k; ++s) maps.push_back(&a.unit);
            GradedLinearMap insert = tensor_of_maps(triv, dom, maps);
            // a(k) = a(k) (x) K (x) ... canonical iso
            GradedLinearMap canon(ak, triv.space);
            for (const auto& [d, dim] : ak.dims) {
                Matrix m(triv.dim(d), dim);
                for (int i = 0; i < dim; ++i) {
                    TensorBasis::Elem e;
                    e.push_back({d, i});
                    for (int s = 0; s < k; ++s) e.push_back({0, 0});
                    m.set(triv.index_of(d, e), i, Scalar(1));
                }
                canon.set_block(d, std::move(m));
            }
            GradedLinearMap lhs = a.gamma_at(sig).compose(insert.compose(canon));
            GradedLinearMap diff = lhs - GradedLinearMap::identity(ak);
            if (!diff.is_zero())
                report.violations.push_back({"unit", sig.str(), map_rank(diff)});
        }
        {
            Signature sig{1, {k}};
            TensorBasis dom = a.domain(sig);
            GradedLinearMap id_ak = GradedLinearMap::identity(ak);
            std::vector<GradedVectorSpace> unit_factors{a.unit.source, ak};
            TensorBasis triv = TensorBasis::build(unit_factors);
            std::vector<const GradedLinearMap*> maps{&a.unit, &id_ak};
            GradedLinearMap insert = tensor_of_maps(triv, dom, maps);
            GradedLinearMap canon(ak, triv.space);
            for (const auto& [d, dim] : ak.dims) {
                Matrix m(triv.dim(d), dim);
                for (int i = 0; i < dim; ++i) {
                    TensorBasis::Elem e{{0, 0}, {d, i}};
                    m.set(triv.index_of(d, e), i, Scalar(1));
                }
                canon.set_block(d, std::move(m));
            }
            GradedLinearMap lhs = a.gamma_at(sig).compose(insert.compose(canon));
            GradedLinearMap diff = lhs - GradedLinearMap::identity(ak);
            if (!diff.is_zero())
                report.violations.push_back({"unit", sig.str(), map_rank(diff)});
        }
    }

    // (c) equivariance, generators at every signature
    for (const auto& sig : sigs) {
        TensorBasis dom = a.domain(sig);
        if (dom.space.is_zero()) continue;
        int j = sig.total();
        // left family: sigma an adjacent transposition of Sigma_k
        for (int i = 0; i + 1 < sig.k; ++i) {
            Perm sigma = perm_adjacent(sig.k, i);
            Signature psig{sig.k, {}};
            Perm inv = perm_inverse(sigma);
            for (int s = 0; s < sig.k; ++s) psig.js.push_back(sig.js[inv[s]]);
            TensorBasis pdom = a.domain(psig);
            Perm factor_perm(sig.k + 1);
            factor_perm[0] = 0;
            for (int s = 0; s < sig.k; ++s) factor_perm[s + 1] = sigma[s] + 1;
            GradedLinearMap shuffle = permute_factors(dom, pdom, factor_perm, a.rule());
            GradedLinearMap sig_on_outer = apply_permutation(a.seq.at(sig.k), sigma);
            std::vector<const GradedLinearMap*> maps{&sig_on_outer};
            std::vector<GradedLinearMap> ids;
            ids.reserve(sig.k);
            for (int s = 0; s < sig.k; ++s) ids.push_back(GradedLinearMap::identity(a.seq.at(sig.js[s]).space));
            for (int s = 0; s < sig.k; ++s) maps.push_back(&ids[s]);
            GradedLinearMap act_outer = tensor_of_maps(dom, dom, maps);
            GradedLinearMap lhs = a.gamma_at(psig).compose(shuffle.compose(act_outer));
            GradedLinearMap rhs =
                apply_permutation(a.seq.at(j), block_permutation(sigma, sig.js))
                    .compose(a.gamma_at(sig));
            GradedLinearMap diff = lhs - rhs;
            if (!diff.is_zero())
                report.violations.push_back(
                    {"equivariance-perm", sig.str() + "|s" + std::to_string(i + 1),
                     map_rank(diff)});
        }
        // right family: tau an adjacent transposition inside one block
        for (int s = 0; s < sig.k; ++s) {
            for (int i = 0; i + 1 < sig.js[s]; ++i) {
                std::vector<GradedLinearMap> facs;
                facs.push_back(GradedLinearMap::identity(a.seq.at(sig.k).space));
                for (int t = 0; t < sig.k; ++t) {
                    if (t == s)
                        facs.push_back(a.seq.at(sig.js[t]).gens[i]);
                    else
                        facs.push_back(GradedLinearMap::identity(a.seq.at(sig.js[t]).space));
                }
                std::vector<const GradedLinearMap*> maps;
                for (const auto& f : facs) maps.push_back(&f);
                GradedLinearMap act = tensor_of_maps(dom, dom, maps);
                // block sum: the transposition lands at offset(s) + i
                int off = 0;
                for (int t = 0; t < s; ++t) off += sig.js[t];
                GradedLinearMap lhs = a.gamma_at(sig).compose(act);
                GradedLinearMap rhs = a.seq.at(j).gens[off + i].compose(a.gamma_at(sig));
                GradedLinearMap diff = lhs - rhs;
                if (!diff.is_zero())
                    report.violations.push_back(
                        {"equivariance-block",
                         sig.str() + "|b" + std::to_string(s + 1) + "." + std::to_string(i + 1),
                         map_rank(diff)});
            }
        }
    }

    // (a) associativity
    for (const auto& sig : sigs) {
        int j = sig.total();
        std::vector<int> is(j, 1);
        auto rec = [&](auto&& self, int pos, int budget) -> void {
            if (pos == j) {
                // big tensor [a(k), a(j_1..j_k), a(i_1..i_j)]
                std::vector<GradedVectorSpace> factors;
                factors.push_back(a.seq.at(sig.k).space);
                for (int v : sig.js) factors.push_back(a.seq.at(v).space);
                for (int v : is) factors.push_back(a.seq.at(v).space);
                TensorBasis big = TensorBasis::build(factors);
                if (!big.space.is_zero()) {
                    int itotal = 0;
                    for (int v : is) itotal += v;
                    Signature inner_sig{j, is};

                    // route 1: gamma (x) id, then gamma
                    std::vector<GradedVectorSpace> mid_factors;
                    mid_factors.push_back(a.seq.at(j).space);
                    for (int v : is) mid_factors.push_back(a.seq.at(v).space);
                    TensorBasis mid = TensorBasis::build(mid_factors);
                    GradedLinearMap r1 =
                        a.gamma_at(inner_sig)
                            .compose(contract_factors(big, 0, 1 + sig.k, a.domain(sig),
                                              a.gamma_at(sig), mid));

                    // route 2: shuffle into groups, gamma within groups, gamma
                    std::vector<GradedVectorSpace> grouped;
                    grouped.push_back(a.seq.at(sig.k).space);
                    std::vector<int> goff(sig.k);  // start of group s in grouped list
                    {
                        int at = 1;
                        int iat = 0;
                        for (int s = 0; s < sig.k; ++s) {
                            goff[s] = at;
                            grouped.push_back(a.seq.at(sig.js[s]).space);
                            ++at;
                            for (int t = 0; t < sig.js[s]; ++t) {
                                grouped.push_back(a.seq.at(is[iat + t]).space);
                                ++at;
                            }
                            iat += sig.js[s];
                        }
                    }
                    TensorBasis gbasis = TensorBasis::build(grouped);
                    Perm shuffle_perm(1 + sig.k + j);
                    shuffle_perm[0] = 0;
                    {
                        int iat = 0;
                        for (int s = 0; s < sig.k; ++s) {
                            shuffle_perm[1 + s] = goff[s];
                            for (int t = 0; t < sig.js[s]; ++t)
                                shuffle_perm[1 + sig.k + iat + t] = goff[s] + 1 + t;
                            iat += sig.js[s];
                        }
                    }
                    GradedLinearMap shuf = permute_factors(big, gbasis, shuffle_perm, a.rule());

                    // contract each group from the right
                    GradedLinearMap chain = shuf;
                    TensorBasis curr = gbasis;
                    std::vector<int> hs(sig.k);
                    {
                        int iat = 0;
                        for (int s = 0; s < sig.k; ++s) {
                            int h = 0;
                            for (int t = 0; t < sig.js[s]; ++t) h += is[iat + t];
                            hs[s] = h;
                            iat += sig.js[s];
                        }
                    }
                    {
                        int iat = j;
                        for (int s = sig.k - 1; s >= 0; --s) {
                            iat -= sig.js[s];
                            Signature gsig{sig.js[s],
                                           std::vector<int>(is.begin() + iat,
                                                            is.begin() + iat + sig.js[s])};
                            std::vector<GradedVectorSpace> next_factors;
                            for (int t = 0; t < (int)curr.factors.size(); ++t) {
                                if (t == goff[s]) {
                                    next_factors.push_back(a.seq.at(hs[s]).space);
                                    t += sig.js[s];  // skip the group
                                } else {
                                    next_factors.push_back(curr.factors[t]);
                                }
                            }
                            TensorBasis next = TensorBasis::build(next_factors);
                            chain = contract_factors(curr, goff[s], 1 + sig.js[s], a.domain(gsig),
                                             a.gamma_at(gsig), next)
                                        .compose(chain);
                            curr = next;
                        }
                    }
                    Signature outer{sig.k, hs};
                    GradedLinearMap r2 = a.gamma_at(outer).compose(chain);

                    GradedLinearMap diff = r1 - r2;
                    if (!diff.is_zero())
                        report.violations.push_back(
                            {"associativity", sig.str() + "|" + inner_sig.str(),
                             map_rank(diff)});
                }
                return;
            }
            for (int v = 1; v <= budget - (j - pos - 1); ++v) {
                is[pos] = v;
                self(self, pos + 1, budget - v);
            }
        };
        rec(rec, 0, cap);
    }
    return report;
}

SymmetricSequence com_sequence(int max_arity, SignRule rule) {
    SymmetricSequence s = SymmetricSequence::zeros(max_arity, rule);
    for (int n = 1; n <= max_arity; ++n) s.components[n] = SymGroupModule::trivial(n);
    return s;
}

SymmetricSequence assoc_sequence(int max_arity, SignRule rule) {
    SymmetricSequence s = SymmetricSequence::zeros(max_arity, rule);
    for (int n = 1; n <= max_arity; ++n) s.components[n] = SymGroupModule::regular(n);
    return s;
}

SymmetricSequence lie_sequence(int max_arity, SignRule rule) {
    SymmetricSequence s = SymmetricSequence::zeros(max_arity, rule);
    for (int n = 1; n <= max_arity; ++n) {
        const MultilinearLie& ml = MultilinearLie::get(n, 0);
        SymGroupModule m;
        m.arity = n;
        m.space = GradedVectorSpace::point(0, ml.dim());
        for (int g = 0; g + 1 < n; ++g) {
            Perm sg = perm_adjacent(n, g);
            Matrix rhs((int)ml.words.size(), ml.dim());
            for (int c = 0; c < ml.dim(); ++c) {
                // relabel letters of the expansion by the transposition
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
            GradedLinearMap gm(m.space, m.space);
            gm.set_block(0, std::move(*coords));
            m.gens.push_back(std::move(gm));
        }
        s.components[n] = std::move(m);
    }
    return s;
}

namespace {

GradedLinearMap com_gamma(const Operad& a, const Signature& sig) {
    TensorBasis dom = a.domain(sig);
    GradedLinearMap g(dom.space, a.seq.at(sig.total()).space);
    if (!dom.space.is_zero()) {
        Matrix m(1, 1);
        m.set(0, 0, Scalar(1));
        g.set_block(0, std::move(m));
    }
    return g;
}

GradedLinearMap assoc_gamma(const Operad& a, const Signature& sig) {
    // word substitution: splice inner multiplication orders into the outer one
    TensorBasis dom = a.domain(sig);
    int j = sig.total();
    auto outer_words = all_permutations(sig.k);
    std::sort(outer_words.begin(), outer_words.end());
    std::vector<std::vector<Perm>> inner_words(sig.k);
    std::vector<int> offs(sig.k + 1, 0);
    for (int s = 0; s < sig.k; ++s) {
        inner_words[s] = all_permutations(sig.js[s]);
        std::sort(inner_words[s].begin(), inner_words[s].end());
        offs[s + 1] = offs[s] + sig.js[s];
    }
    auto target_words = all_permutations(j);
    std::sort(target_words.begin(), target_words.end());
    std::map<Perm, int> target_index;
    for (int i = 0; i < (int)target_words.size(); ++i) target_index[target_words[i]] = i;

    GradedLinearMap g(dom.space, a.seq.at(j).space);
    const auto& list = dom.elems.at(0);
    Matrix m((int)target_words.size(), (int)list.size());
    for (int col = 0; col < (int)list.size(); ++col) {
        const TensorBasis::Elem& e = list[col];
        const Perm& u = outer_words[e[0].second];
        Perm word;
        for (int p = 0; p < sig.k; ++p) {
            int slot = u[p];
            for (int t : inner_words[slot][e[slot + 1].second]) word.push_back(offs[slot] + t);
        }
        m.set(target_index.at(word), col, Scalar(1));
    }
    g.set_block(0, std::move(m));
    return g;
}

GradedLinearMap lie_gamma(const Operad& a, const Signature& sig) {
    TensorBasis dom = a.domain(sig);
    int j = sig.total();
    const MultilinearLie& outer = MultilinearLie::get(sig.k, 0);
    const MultilinearLie& target = MultilinearLie::get(j, 0);
    std::vector<const MultilinearLie*> inner;
    std::vector<int> offs(sig.k + 1, 0);
    for (int s = 0; s < sig.k; ++s) {
        inner.push_back(&MultilinearLie::get(sig.js[s], 0));
        offs[s + 1] = offs[s] + sig.js[s];
    }
    GradedLinearMap g(dom.space, a.seq.at(j).space);
    if (dom.space.is_zero()) return g;
    const auto& list = dom.elems.at(0);
    Matrix rhs((int)target.words.size(), (int)list.size());
    for (int col = 0; col < (int)list.size(); ++col) {
        const TensorBasis::Elem& e = list[col];
        // expand outer bracket, then substitute inner expansions wordwise
        for (int w = 0; w < (int)outer.words.size(); ++w) {
            Scalar cw = outer.expansion.get(w, e[0].second);
            if (cw == 0) continue;
            std::vector<std::pair<std::vector<int>, Scalar>> terms{{{}, cw}};
            for (int p = 0; p < sig.k; ++p) {
                int slot = outer.words[w][p];
                const MultilinearLie& ml = *inner[slot];
                std::vector<std::pair<std::vector<int>, Scalar>> next;
                for (int iw = 0; iw < (int)ml.words.size(); ++iw) {
                    Scalar cv = ml.expansion.get(iw, e[slot + 1].second);
                    if (cv == 0) continue;
                    for (const auto& [partial, c] : terms) {
                        auto ext = partial;
                        for (int t : ml.words[iw]) ext.push_back(offs[slot] + t);
                        next.push_back({std::move(ext), c * cv});
                    }
                }
                terms = std::move(next);
            }
            for (const auto& [bigword, c] : terms)
                rhs.add_to(target.word_index.at(bigword), col, c);
        }
    }
    auto coords = solve(target.expansion, rhs);
    if (!coords) throw std::logic_error("lie gamma: image not in the Lie subspace");
    g.set_block(0, std::move(*coords));
    return g;
}

}  // namespace

Operad builtin_operad(const std::string& name, int max_arity, SignRule rule) {
    Operad a;
    if (name == "com") {
        a.seq = com_sequence(max_arity, rule);
    } else if (name == "assoc") {
        a.seq = assoc_sequence(max_arity, rule);
    } else if (name == "lie") {
        a.seq = lie_sequence(max_arity, rule);
    } else if (name.rfind("poisson", 0) == 0) {
        int n = name.size() > 7 ? std::stoi(name.substr(7)) : 2;
        return poisson_operad(n, max_arity);
    } else {
        throw std::invalid_argument("unknown operad name: " + name);
    }
    a.unit = GradedLinearMap(GradedVectorSpace::unit(), a.seq.at(1).space);
    {
        Matrix u(1, 1);
        u.set(0, 0, Scalar(1));
        a.unit.set_block(0, std::move(u));
    }
    for (const auto& sig : all_signatures(max_arity)) {
        if (name == "com") a.gamma[sig] = com_gamma(a, sig);
        else if (name == "assoc") a.gamma[sig] = assoc_gamma(a, sig);
        else a.gamma[sig] = lie_gamma(a, sig);
    }
    return a;
}

LawReport verify_morphism(const OperadMorphism& m) {
    LawReport report;
    const Operad& a = *m.source;
    const Operad& b = *m.target;
    int cap = std::min(a.max_arity(), b.max_arity());
    // unit compatibility
    if (!(m.components[1].compose(a.unit) == b.unit))
        report.violations.push_back({"unit", "1", 0});
    // equivariance
    for (int n = 1; n <= cap; ++n) {
        for (int g = 0; g + 1 < n; ++g) {
            GradedLinearMap lhs = m.components[n].compose(a.seq.at(n).gens[g]);
            GradedLinearMap rhs = b.seq.at(n).gens[g].compose(m.components[n]);
            if (!(lhs == rhs))
                report.violations.push_back(
                    {"equivariance-block", std::to_string(n) + "|s" + std::to_string(g + 1), 0});
        }
    }
    // gamma compatibility
    for (const auto& sig : all_signatures(cap)) {
        TensorBasis adom = a.domain(sig);
        TensorBasis bdom = b.domain(sig);
        std::vector<const GradedLinearMap*> maps;
        maps.push_back(&m.components[sig.k]);
        for (int js : sig.js) maps.push_back(&m.components[js]);
        GradedLinearMap lift = tensor_of_maps(adom, bdom, maps);
        GradedLinearMap lhs = b.gamma_at(sig).compose(lift);
        GradedLinearMap rhs = m.components[sig.total()].compose(a.gamma_at(sig));
        GradedLinearMap diff = lhs - rhs;
        if (!diff.is_zero())
            report.violations.push_back({"gamma", sig.str(), map_rank(diff)});
    }
    return report;
}

}  // namespace opcalc
