#include "opcalc/triples.hpp"

#include <algorithm>

namespace opcalc {

namespace {

int map_rank(const GradedLinearMap& f) {
    int r = 0;
    for (const auto& [d, blk] : f.blocks) r += rank(blk);
    return r;
}

// expansion of the unit column: (degree 0) coefficients in F[1]
std::vector<std::pair<int, Scalar>> unit_vector(const AnalyticTriple& t) {
    std::vector<std::pair<int, Scalar>> eta;
    const Matrix u = t.eta.block(0);
    for (int r = 0; r < u.rows(); ++r) {
        Scalar v = u.get(r, 0);
        if (v != 0) eta.push_back({r, v});
    }
    return eta;
}

}  // namespace

std::vector<GradedLinearMap> unit_right(const AnalyticTriple& t) {
    // F eta: f |-> (discrete partition; f; eta (x) ... (x) eta)
    std::vector<GradedLinearMap> out;
    auto eta = unit_vector(t);
    for (int n = 0; n <= t.max_arity(); ++n) {
        const CompositeBasis& cb = t.square.bases[n];
        GradedLinearMap m(t.seq.at(n).space, cb.space);
        SetPartition disc;
        for (int i = 0; i < n; ++i) disc.blocks.push_back({i});
        int part = (int)(std::lower_bound(cb.partitions.begin(), cb.partitions.end(), disc) -
                         cb.partitions.begin());
        for (const auto& [d, dim] : t.seq.at(n).space.dims) {
            Matrix blk(cb.space.dim(d), dim);
            for (int i = 0; i < dim; ++i) {
                std::vector<std::pair<TensorBasis::Elem, Scalar>> terms{
                    {{{d, i}}, Scalar(1)}};
                for (int s = 0; s < n; ++s) {
                    std::vector<std::pair<TensorBasis::Elem, Scalar>> next;
                    for (const auto& [e, c] : terms)
                        for (const auto& [r, v] : eta) {
                            auto ext = e;
                            ext.push_back({0, r});
                            next.push_back({std::move(ext), c * v});
                        }
                    terms = std::move(next);
                }
                for (const auto& [e, c] : terms) blk.add_to(cb.index_of(part, d, e), i, c);
            }
            m.set_block(d, std::move(blk));
        }
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<GradedLinearMap> unit_left(const AnalyticTriple& t) {
    // eta F: f |-> (single block; eta; f)
    std::vector<GradedLinearMap> out;
    auto eta = unit_vector(t);
    for (int n = 0; n <= t.max_arity(); ++n) {
        const CompositeBasis& cb = t.square.bases[n];
        GradedLinearMap m(t.seq.at(n).space, cb.space);
        if (n >= 1) {
            SetPartition single;
            single.blocks.push_back({});
            for (int i = 0; i < n; ++i) single.blocks[0].push_back(i);
            int part = (int)(std::lower_bound(cb.partitions.begin(), cb.partitions.end(),
                                              single) -
                             cb.partitions.begin());
            for (const auto& [d, dim] : t.seq.at(n).space.dims) {
                Matrix blk(cb.space.dim(d), dim);
                for (int i = 0; i < dim; ++i)
                    for (const auto& [r, v] : eta) {
                        TensorBasis::Elem e{{0, r}, {d, i}};
                        blk.add_to(cb.index_of(part, d, e), i, v);
                    }
                m.set_block(d, std::move(blk));
            }
        }
        out.push_back(std::move(m));
    }
    return out;
}

LawReport check_triple_laws(const AnalyticTriple& t) {
    LawReport report;
    const int cap = t.max_arity();

    // shapes
    if ((int)t.mu.size() != cap + 1) {
        report.violations.push_back({"shape", "mu", 0});
        return report;
    }
    for (int n = 0; n <= cap; ++n) {
        if (!(t.mu[n].source == t.square.seq.at(n).space) ||
            !(t.mu[n].target == t.seq.at(n).space)) {
            report.violations.push_back({"shape", std::to_string(n), 0});
            return report;
        }
    }

    // naturality: mu commutes with the symmetric-group actions
    for (int n = 2; n <= cap; ++n) {
        for (int g = 0; g + 1 < n; ++g) {
            GradedLinearMap lhs = t.mu[n].compose(t.square.seq.at(n).gens[g]);
            GradedLinearMap rhs = t.seq.at(n).gens[g].compose(t.mu[n]);
            GradedLinearMap diff = lhs - rhs;
            if (!diff.is_zero())
                report.violations.push_back(
                    {"naturality", std::to_string(n) + "|s" + std::to_string(g + 1),
                     map_rank(diff)});
        }
    }

    // unit laws
    auto fr = unit_right(t);
    auto fl = unit_left(t);
    for (int n = 0; n <= cap; ++n) {
        GradedLinearMap right = t.mu[n].compose(fr[n]);
        GradedLinearMap left = t.mu[n].compose(fl[n]);
        GradedLinearMap id = GradedLinearMap::identity(t.seq.at(n).space);
        GradedLinearMap dr = right - id;
        GradedLinearMap dl = left - id;
        if (!dr.is_zero())
            report.violations.push_back({"unit-right", std::to_string(n), map_rank(dr)});
        if (!dl.is_zero())
            report.violations.push_back({"unit-left", std::to_string(n), map_rank(dl)});
    }

    // associativity on F o (F o F)
    ComposeResult nested = compose(t.seq, t.square.seq);   // F o (F o F)
    ComposeResult outer2 = compose(t.square.seq, t.seq);   // (F o F) o F
    for (int n = 0; n <= cap; ++n) {
        const CompositeBasis& ncb = nested.bases[n];
        const CompositeBasis& ocb = outer2.bases[n];
        const CompositeBasis& scb = t.square.bases[n];

        // route A: apply mu inside each outer block
        GradedLinearMap routeA(ncb.space, scb.space);
        // route B: regroup, then apply mu to the outer composite coefficient
        GradedLinearMap routeB(ncb.space, scb.space);
        std::map<int, Matrix> blocksA, blocksB;
        for (const auto& [d, cnt] : ncb.space.dims) {
            blocksA[d] = Matrix(scb.space.dim(d), cnt);
            blocksB[d] = Matrix(scb.space.dim(d), cnt);
        }

        for (const auto& [d, cnt] : ncb.space.dims) {
            for (int col = 0; col < cnt; ++col) {
                auto [part, elem] = ncb.locate(d, col);
                const SetPartition& pi = ncb.partitions[part];
                const int k = pi.num_blocks();

                // ---- route A: mu on each block's (F o F) element
                {
                    std::vector<std::pair<TensorBasis::Elem, Scalar>> terms{
                        {TensorBasis::Elem{elem[0]}, Scalar(1)}};
                    for (int j = 0; j < k; ++j) {
                        const Matrix mb = t.mu[(int)pi.blocks[j].size()].block(elem[j + 1].first);
                        std::vector<std::pair<TensorBasis::Elem, Scalar>> next;
                        for (int r = 0; r < mb.rows(); ++r) {
                            Scalar v = mb.get(r, elem[j + 1].second);
                            if (v == 0) continue;
                            for (const auto& [e, c] : terms) {
                                auto ext = e;
                                ext.push_back({elem[j + 1].first, r});
                                next.push_back({std::move(ext), c * v});
                            }
                        }
                        terms = std::move(next);
                    }
                    int tgt_part = (int)(std::lower_bound(scb.partitions.begin(),
                                                          scb.partitions.end(), pi) -
                                         scb.partitions.begin());
                    for (const auto& [e, c] : terms)
                        blocksA[d].add_to(scb.index_of(tgt_part, d, e), col, c);
                }

                // ---- route B: regroup to (F o F) o F, then contract
                {
                    // decode the nested blocks
                    struct Sub {
                        std::vector<int> labels;        // actual labels of the sub-block
                        std::pair<int, int> h;          // F[|C|] part (degree, index)
                    };
                    std::vector<Sub> subs;
                    std::vector<std::pair<int, int>> gparts;  // per parent: F[#rho_j]
                    std::vector<std::vector<int>> parent_subs(k);  // indices into subs
                    std::vector<int> item_degs;  // degrees in source reading order
                    // source reading order: f, then per parent: g_j, h_{C in rho_j}
                    item_degs.push_back(elem[0].first);
                    for (int j = 0; j < k; ++j) {
                        const CompositeBasis& sub_cb =
                            t.square.bases[(int)pi.blocks[j].size()];
                        auto [sp, selem] = sub_cb.locate(elem[j + 1].first, elem[j + 1].second);
                        const SetPartition& rho = sub_cb.partitions[sp];
                        gparts.push_back(selem[0]);
                        item_degs.push_back(selem[0].first);
                        for (int c = 0; c < rho.num_blocks(); ++c) {
                            Sub s;
                            for (int v : rho.blocks[c]) s.labels.push_back(pi.blocks[j][v]);
                            s.h = selem[c + 1];
                            parent_subs[j].push_back((int)subs.size());
                            subs.push_back(s);
                            item_degs.push_back(selem[c + 1].first);
                        }
                    }
                    // flat partition pi' sorted by min label
                    std::vector<int> order((int)subs.size());
                    std::iota(order.begin(), order.end(), 0);
                    std::sort(order.begin(), order.end(), [&](int a, int b) {
                        return subs[a].labels[0] < subs[b].labels[0];
                    });
                    std::vector<int> rank(subs.size());
                    for (int p = 0; p < (int)order.size(); ++p) rank[order[p]] = p;

                    // Koszul sign: rearrange (f, g_1, h.., g_2, h..) into
                    // (f, g_1..g_k, h's by flat rank)
                    Perm move(item_degs.size());
                    move[0] = 0;
                    {
                        int at = 1;
                        int hbase = 1 + k;
                        for (int j = 0; j < k; ++j) {
                            move[at++] = 1 + j;  // g_j
                            for (int c : parent_subs[j]) move[at++] = hbase + rank[c];
                        }
                    }
                    int sign = sign_for(t.seq.rule, move, item_degs);

                    // the outer composite element: partition of sub-block
                    // ranks grouped by parent, coefficients f and g_j
                    SetPartition rho_bar;
                    for (int j = 0; j < k; ++j) {
                        std::vector<int> blk;
                        for (int c : parent_subs[j]) blk.push_back(rank[c]);
                        std::sort(blk.begin(), blk.end());
                        rho_bar.blocks.push_back(blk);
                    }
                    std::sort(rho_bar.blocks.begin(), rho_bar.blocks.end());
                    const CompositeBasis& kcb = t.square.bases[(int)subs.size()];
                    int kpart = (int)(std::lower_bound(kcb.partitions.begin(),
                                                       kcb.partitions.end(), rho_bar) -
                                      kcb.partitions.begin());
                    // NOTE: parents are ordered by min label, and rho_bar
                    // blocks by min rank; these agree, so g-parts line up.
                    TensorBasis::Elem kelem;
                    kelem.push_back(elem[0]);
                    for (int j = 0; j < k; ++j) kelem.push_back(gparts[j]);
                    int kdeg = TensorBasis::degree_of(kelem);
                    int kidx = kcb.index_of(kpart, kdeg, kelem);

                    // apply mu_{#subs} to the outer coefficient
                    const Matrix mb = t.mu[(int)subs.size()].block(kdeg);
                    // target: flat partition with the h-parts
                    SetPartition flat;
                    for (int p = 0; p < (int)order.size(); ++p)
                        flat.blocks.push_back(subs[order[p]].labels);
                    int tgt_part = (int)(std::lower_bound(scb.partitions.begin(),
                                                          scb.partitions.end(), flat) -
                                         scb.partitions.begin());
                    for (int r = 0; r < mb.rows(); ++r) {
                        Scalar v = mb.get(r, kidx);
                        if (v == 0) continue;
                        TensorBasis::Elem e;
                        e.push_back({kdeg, r});
                        for (int p = 0; p < (int)order.size(); ++p)
                            e.push_back(subs[order[p]].h);
                        blocksB[d].add_to(scb.index_of(tgt_part, d, e), col,
                                          v * Scalar(sign));
                    }
                }
            }
        }
        for (auto& [d, blk] : blocksA)
            if (!blk.is_zero()) routeA.blocks[d] = std::move(blk);
        for (auto& [d, blk] : blocksB)
            if (!blk.is_zero()) routeB.blocks[d] = std::move(blk);

        GradedLinearMap lhs = t.mu[n].compose(routeA);
        GradedLinearMap rhs = t.mu[n].compose(routeB);
        GradedLinearMap diff = lhs - rhs;
        if (!diff.is_zero())
            report.violations.push_back({"triple-assoc", std::to_string(n), map_rank(diff)});
    }
    (void)outer2;
    return report;
}

AnalyticTriple associated_triple(const Operad& a) {
    AnalyticTriple t;
    t.seq = a.seq;
    t.square = compose(a.seq, a.seq);
    t.eta = a.unit;
    for (int n = 0; n <= a.max_arity(); ++n) {
        const CompositeBasis& cb = t.square.bases[n];
        GradedLinearMap mu(cb.space, a.seq.at(n).space);
        std::map<int, Matrix> blocks;
        for (const auto& [d, cnt] : cb.space.dims)
            blocks[d] = Matrix(a.seq.at(n).space.dim(d), cnt);
        for (int p = 0; p < (int)cb.partitions.size(); ++p) {
            const SetPartition& pi = cb.partitions[p];
            const int k = pi.num_blocks();
            Signature sig{k, {}};
            for (const auto& b : pi.blocks) sig.js.push_back((int)b.size());
            if (n > 0 && !a.gamma.count(sig)) continue;
            // block shuffle transporting consecutive blocks onto pi
            Perm shuffle(n);
            {
                int at = 0;
                for (const auto& b : pi.blocks)
                    for (int v : b) shuffle[at++] = v;
            }
            GradedLinearMap trans =
                n > 0 ? apply_permutation(a.seq.at(n), shuffle)
                      : GradedLinearMap::identity(a.seq.at(0).space);
            GradedLinearMap composite =
                n > 0 ? trans.compose(a.gamma_at(sig)) : GradedLinearMap();
            for (const auto& [d, list] : cb.tensors[p].elems) {
                if (n == 0) continue;
                const Matrix gb = composite.block(d);
                // the partition's tensor basis and gamma's domain share
                // the same factor list, hence the same local indexing
                for (int col = 0; col < (int)list.size(); ++col) {
                    int src = cb.index_of(p, d, list[col]);
                    for (int r = 0; r < gb.rows(); ++r) {
                        Scalar v = gb.get(r, col);
                        if (v != 0) blocks[d].add_to(r, src, v);
                    }
                }
            }
        }
        for (auto& [d, blk] : blocks)
            if (!blk.is_zero()) mu.blocks[d] = std::move(blk);
        t.mu.push_back(std::move(mu));
    }
    return t;
}

Operad induced_operad(const AnalyticTriple& t) {
    Operad a;
    a.seq = t.seq;
    a.unit = t.eta;
    for (const auto& sig : all_signatures(t.max_arity())) {
        int n = sig.total();
        const CompositeBasis& cb = t.square.bases[n];
        TensorBasis dom = a.domain(sig);
        SetPartition consecutive;
        {
            int at = 0;
            for (int j : sig.js) {
                std::vector<int> blk;
                for (int v = 0; v < j; ++v) blk.push_back(at++);
                consecutive.blocks.push_back(blk);
            }
            std::sort(consecutive.blocks.begin(), consecutive.blocks.end());
        }
        int part = (int)(std::lower_bound(cb.partitions.begin(), cb.partitions.end(),
                                          consecutive) -
                         cb.partitions.begin());
        GradedLinearMap g(dom.space, t.seq.at(n).space);
        for (const auto& [d, list] : dom.elems) {
            const Matrix mb = t.mu[n].block(d);
            Matrix blk(t.seq.at(n).space.dim(d), (int)list.size());
            for (int col = 0; col < (int)list.size(); ++col) {
                int mcol = cb.index_of(part, d, list[col]);
                for (int r = 0; r < mb.rows(); ++r) {
                    Scalar v = mb.get(r, mcol);
                    if (v != 0) blk.set(r, col, v);
                }
            }
            g.set_block(d, std::move(blk));
        }
        a.gamma[sig] = std::move(g);
    }
    return a;
}

RoundtripResult roundtrip_identity(const Operad& a) {
    RoundtripResult out;
    out.induced = std::make_shared<Operad>(induced_operad(associated_triple(a)));
    out.iso.source = out.induced.get();
    out.iso.target = &a;
    for (int n = 0; n <= a.max_arity(); ++n)
        out.iso.components.push_back(GradedLinearMap::identity(a.seq.at(n).space));
    out.morphism_report = verify_morphism(out.iso);
    return out;
}

NuResult canonical_nu(const AnalyticTriple& t) {
    NuResult nu;
    auto fr = unit_right(t);  // F eta : F => F o F, lands in the discrete slice
    for (int n = 0; n <= t.max_arity(); ++n)
        nu.components.push_back(t.mu[n].compose(fr[n]));

    // nu must be a morphism of triples: nu o mu_{T_aT} = mu o (nu o nu)
    AnalyticTriple tat = associated_triple(induced_operad(t));
    for (int n = 0; n <= t.max_arity(); ++n) {
        // (nu o nu) on the square: outer coefficient and every block coefficient
        const CompositeBasis& cb = t.square.bases[n];
        GradedLinearMap both(cb.space, cb.space);
        std::map<int, Matrix> blocks;
        for (const auto& [d, cnt] : cb.space.dims) blocks[d] = Matrix(cnt, cnt);
        for (const auto& [d, cnt] : cb.space.dims) {
            for (int col = 0; col < cnt; ++col) {
                auto [part, elem] = cb.locate(d, col);
                const SetPartition& pi = cb.partitions[part];
                int k = pi.num_blocks();
                std::vector<std::pair<TensorBasis::Elem, Scalar>> terms{{{}, Scalar(1)}};
                for (int fac = 0; fac <= k; ++fac) {
                    int arity = fac == 0 ? k : (int)pi.blocks[fac - 1].size();
                    const Matrix nb = nu.components[arity].block(elem[fac].first);
                    std::vector<std::pair<TensorBasis::Elem, Scalar>> next;
                    for (int r = 0; r < nb.rows(); ++r) {
                        Scalar v = nb.get(r, elem[fac].second);
                        if (v == 0) continue;
                        for (const auto& [e, c] : terms) {
                            auto ext = e;
                            ext.push_back({elem[fac].first, r});
                            next.push_back({std::move(ext), c * v});
                        }
                    }
                    terms = std::move(next);
                }
                for (const auto& [e, c] : terms)
                    blocks[d].add_to(cb.index_of(part, d, e), col, c);
            }
        }
        for (auto& [d, blk] : blocks)
            if (!blk.is_zero()) both.blocks[d] = std::move(blk);

        GradedLinearMap lhs = nu.components[n].compose(tat.mu[n]);
        GradedLinearMap rhs = t.mu[n].compose(both);
        if (!(lhs == rhs)) {
            nu.triple_map_ok = false;
            nu.failing_arities.push_back(n);
        }
    }
    return nu;
}

FreeMultiplication free_multiplication(const AnalyticTriple& t, const GradedVectorSpace& x,
                                       int degree_cap) {
    FreeMultiplication fm;
    fm.inner = std::make_shared<Evaluation>(t.seq, LabeledSpace::single(x), degree_cap);
    fm.outer = std::make_shared<Evaluation>(
        t.seq, LabeledSpace::single(fm.inner->space(), "t"), degree_cap);
    Evaluation comp_eval(t.square.seq, LabeledSpace::single(x), degree_cap);
    fm.kappa = eval_kappa(comp_eval, t.square, *fm.inner, *fm.outer);
    // mu evaluated at x, transported through kappa^{-1}
    GradedLinearMap mu_at_x = eval_nat(comp_eval, *fm.inner, t.mu);
    GradedLinearMap kappa_inv(fm.outer->space(), comp_eval.space());
    for (const auto& [d, dim] : fm.outer->space().dims) {
        auto inv = inverse(fm.kappa.block(d));
        if (!inv) throw std::logic_error("free_multiplication: kappa not invertible");
        kappa_inv.set_block(d, std::move(*inv));
    }
    fm.multiply = mu_at_x.compose(kappa_inv);
    return fm;
}

CompatibilityReport check_compatibility(const AnalyticTriple& t, const GradedVectorSpace& x,
                                        int degree_cap) {
    CompatibilityReport report;
    // route 1: nu at T(X), then the triple multiplication
    NuResult nu = canonical_nu(t);
    FreeMultiplication fm = free_multiplication(t, x, degree_cap);
    GradedLinearMap nu_at_tx = eval_nat(*fm.outer, *fm.outer, nu.components);
    GradedLinearMap route1 = fm.multiply.compose(nu_at_tx);

    // route 2: the free multiplication of the induced operad's triple
    AnalyticTriple tat = associated_triple(induced_operad(t));
    Evaluation comp_eval(tat.square.seq, LabeledSpace::single(x), degree_cap);
    GradedLinearMap mu2_at_x = eval_nat(comp_eval, *fm.inner, tat.mu);
    GradedLinearMap route2 = mu2_at_x.compose([&]() {
        GradedLinearMap kinv(fm.outer->space(), comp_eval.space());
        Evaluation comp2(tat.square.seq, LabeledSpace::single(x), degree_cap);
        GradedLinearMap kap = eval_kappa(comp2, tat.square, *fm.inner, *fm.outer);
        for (const auto& [d, dim] : fm.outer->space().dims) {
            auto inv = inverse(kap.block(d));
            if (!inv) throw std::logic_error("check_compatibility: kappa not invertible");
            kinv.set_block(d, std::move(*inv));
        }
        return kinv;
    }());

    GradedLinearMap diff = route1 - route2;
    if (!diff.is_zero()) {
        report.compatible = false;
        for (const auto& [d, blk] : diff.blocks) {
            if (blk.is_zero()) continue;
            report.degree = d;
            for (int i = 0; i < blk.rows(); ++i) {
                if (!blk.row(i).empty()) {
                    int col = blk.row(i).front().first;
                    report.outer_arity = fm.outer->elems(d)[col].arity;
                    // report the first column with a discrepancy
                    break;
                }
            }
            break;
        }
    }
    return report;
}

PrimGenWitness is_primitively_generated(const Operad& a, const std::vector<int>& test_dims,
                                        int degree_cap) {
    PrimGenWitness w;
    AnalyticTriple t = associated_triple(a);
    for (int dim : test_dims) {
        GradedVectorSpace x = GradedVectorSpace::point(1, dim);
        FreeMultiplication fm = free_multiplication(t, x, degree_cap);
        for (int n = 1; n <= a.max_arity(); ++n) {
            // restriction of the free multiplication to outer arity n
            BasisFilter outer_n = filter_basis(*fm.outer, [&](int d, int i) {
                return fm.outer->elems(d)[i].arity == n;
            });
            GradedLinearMap restricted = fm.multiply.compose(outer_n.inclusion);
            BasisFilter high = filter_basis(*fm.inner, [&](int d, int i) {
                return fm.inner->elems(d)[i].arity >= n;
            });
            BasisFilter low = filter_basis(*fm.inner, [&](int d, int i) {
                return fm.inner->elems(d)[i].arity < n;
            });
            // image must land in the arity >= n part and hit all of it
            GradedLinearMap leak = low.projection.compose(restricted);
            for (const auto& [d, k] : high.space.dims) {
                if (rank(restricted.block(d)) != k) {
                    w.primitively_generated = false;
                    w.arity = n;
                    w.degree = d;
                    w.note = "image misses the arity >= n part";
                    return w;
                }
            }
            if (!leak.is_zero()) {
                w.primitively_generated = false;
                w.arity = n;
                w.note = "image leaks below arity n";
                return w;
            }
            for (const auto& [d, blk] : restricted.blocks) {
                if (high.space.dim(d) == 0 && !blk.is_zero()) {
                    w.primitively_generated = false;
                    w.arity = n;
                    w.degree = d;
                    w.note = "image at a degree with no arity >= n part";
                    return w;
                }
            }
        }
    }
    return w;
}

}  // namespace opcalc
