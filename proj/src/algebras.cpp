#include "opcalc/algebras.hpp"

#include <algorithm>

namespace opcalc {

namespace {

int map_rank(const GradedLinearMap& f) {
    int r = 0;
    for (const auto& [d, blk] : f.blocks) r += rank(blk);
    return r;
}

GradedLinearMap unit_insertion_into(const Evaluation& ev, const GradedLinearMap& eta) {
    // y |-> class(eta (x) y) in the arity-1 part
    const GradedVectorSpace& y = ev.input().summands[0];
    GradedLinearMap out(y, ev.space());
    std::vector<std::pair<int, Scalar>> etav;
    const Matrix u = eta.block(0);
    for (int r = 0; r < u.rows(); ++r)
        if (u.get(r, 0) != 0) etav.push_back({r, u.get(r, 0)});
    const auto& letters = ev.letters();
    std::map<int, std::vector<std::map<int, Scalar>>> cols;
    for (const auto& [d, dim] : y.dims) cols[d].resize(dim);
    for (int id = 0; id < (int)letters.size(); ++id) {
        const auto& l = letters[id];
        ev.project(1, {id}, 0, etav, Scalar(1), cols[l.degree][l.index]);
    }
    for (const auto& [d, colv] : cols) {
        Matrix m(ev.space().dim(d), (int)colv.size());
        for (int j = 0; j < (int)colv.size(); ++j)
            for (const auto& [i, v] : colv[j]) m.set(i, j, v);
        out.set_block(d, std::move(m));
    }
    return out;
}

}  // namespace

GradedLinearMap AlgebraOverOperad::theta(int arity) const {
    BasisFilter part = arity_filter(*powers, arity, arity);
    return xi.compose(part.inclusion);
}

GradedLinearMap AlgebraOverOperad::unit_insertion() const {
    return unit_insertion_into(*powers, op->unit);
}

AlgebraOverOperad free_algebra(std::shared_ptr<const Operad> op, const GradedVectorSpace& x,
                               int degree_cap) {
    for (const auto& [d, k] : x.dims)
        if (d <= 0)
            throw std::invalid_argument("free_algebra: generators must be in positive degrees");
    AlgebraOverOperad alg;
    alg.op = op;
    alg.triple = std::make_shared<AnalyticTriple>(associated_triple(*op));
    alg.degree_cap = degree_cap;
    FreeMultiplication fm = free_multiplication(*alg.triple, x, degree_cap);
    alg.carrier = fm.inner->space();
    alg.powers = fm.outer;
    alg.xi = fm.multiply;
    return alg;
}

AlgebraOverOperad algebra_from_xi(std::shared_ptr<const Operad> op,
                                  const GradedVectorSpace& carrier, GradedLinearMap xi,
                                  int degree_cap) {
    AlgebraOverOperad alg;
    alg.op = op;
    alg.triple = std::make_shared<AnalyticTriple>(associated_triple(*op));
    alg.degree_cap = degree_cap;
    alg.carrier = carrier;
    alg.powers = std::make_shared<Evaluation>(op->seq, LabeledSpace::single(carrier, "c"),
                                              degree_cap);
    assert(xi.source == alg.powers->space() && xi.target == carrier);
    alg.xi = std::move(xi);
    return alg;
}

LawReport check_algebra_laws(const AlgebraOverOperad& c) {
    LawReport report;
    // unit law: xi o eta_C = id
    GradedLinearMap unit_comp = c.xi.compose(c.unit_insertion());
    GradedLinearMap du = unit_comp - GradedLinearMap::identity(c.carrier);
    if (!du.is_zero()) report.violations.push_back({"unit", "1", map_rank(du)});

    // associativity: xi o T(xi) = xi o mu_C on T(T(C))
    FreeMultiplication fm = free_multiplication(*c.triple, c.carrier, c.degree_cap);
    // T(xi): identify T(C)-letters through c.powers (same construction)
    GradedLinearMap t_xi = eval_map(*fm.outer, *c.powers, c.xi);
    GradedLinearMap lhs = c.xi.compose(t_xi);
    GradedLinearMap rhs = c.xi.compose(fm.multiply);
    GradedLinearMap diff = lhs - rhs;
    if (!diff.is_zero()) {
        // name a failing composition signature: outer arity and block arities
        for (const auto& [d, blk] : diff.blocks) {
            if (blk.is_zero()) continue;
            int col = blk.row(0).empty() ? -1 : blk.row(0).front().first;
            for (int i = 0; i < blk.rows() && col < 0; ++i)
                if (!blk.row(i).empty()) col = blk.row(i).front().first;
            std::string sig = "?";
            if (col >= 0) {
                auto rep = fm.outer->include(d, col);
                sig = std::to_string(rep.arity) + ";";
                for (size_t i = 0; i < rep.word.size(); ++i) {
                    int inner_arity = 0;
                    // letters of the outer evaluation are T(C) basis elements
                    const auto& lt = fm.outer->letters()[rep.word[i]];
                    inner_arity = fm.inner->elems(lt.degree)[lt.index].arity;
                    sig += (i ? "," : "") + std::to_string(inner_arity);
                }
            }
            report.violations.push_back({"associativity", sig, map_rank(diff)});
            break;
        }
    }
    return report;
}

QnResult q_n_functor(const AlgebraOverOperad& c, int n) {
    if (n < 2) throw std::invalid_argument("q_n_functor needs n >= 2");
    GradedLinearMap th = c.theta(n);
    Subspace image;
    for (const auto& [d, blk] : th.blocks) {
        auto piv = pivot_columns(blk);
        if (!piv.empty()) image[d] = blk.columns(piv);
    }
    QuotientMaps q = quotient_by_span(c.carrier, image);
    return {q.space, q.projection};
}

namespace {

// Columns of xi(a(k) (x) W_1 (x) ... (x) W_k) over all basis choices, added
// into `acc`. The W's are subspaces of the carrier given by column spans.
void theta_image_of_subspaces(const AlgebraOverOperad& c,
                              const std::vector<const Subspace*>& ws, Subspace& acc) {
    const int k = (int)ws.size();
    const SymGroupModule& ak = c.op->seq.at(k);
    if (ak.is_zero()) return;
    // enumerate one column from each W, degree-pruned
    std::vector<std::pair<int, int>> choice(k);  // (degree, column)
    std::vector<int> mins(k + 1, 0);
    for (int i = k - 1; i >= 0; --i) {
        int mn = INT32_MAX / 4;
        for (const auto& [d, m] : *ws[i])
            if (m.cols() > 0) mn = std::min(mn, d);
        mins[i] = mins[i + 1] + mn;
    }
    auto rec = [&](auto&& self, int at, int deg) -> void {
        if (at == k) {
            // expand the tensor of chosen columns into letter words
            std::vector<std::pair<std::vector<int>, Scalar>> words{{{}, Scalar(1)}};
            for (int i = 0; i < k; ++i) {
                const Matrix& m = ws[i]->at(choice[i].first);
                std::vector<std::pair<std::vector<int>, Scalar>> next;
                for (int r = 0; r < m.rows(); ++r) {
                    Scalar v = m.get(r, choice[i].second);
                    if (v == 0) continue;
                    // letter id of carrier basis (choice[i].first, r)
                    Evaluation::Letter key{choice[i].first, 0, r};
                    const auto& ls = c.powers->letters();
                    auto pos = std::lower_bound(ls.begin(), ls.end(), key);
                    int lid = (int)(pos - ls.begin());
                    for (const auto& [w, cf] : words) {
                        auto ext = w;
                        ext.push_back(lid);
                        next.push_back({std::move(ext), cf * v});
                    }
                }
                words = std::move(next);
            }
            // one column per a(k)-basis vector
            for (const auto& [md, mdim] : ak.space.dims) {
                for (int ai = 0; ai < mdim; ++ai) {
                    std::map<int, Scalar> img;
                    for (const auto& [w, cf] : words)
                        c.powers->project(k, w, md, {{ai, Scalar(1)}}, cf, img);
                    if (img.empty()) continue;
                    // one xi application
                    int total = md + deg;
                    const Matrix xib = c.xi.block(total);
                    std::vector<Scalar> col((size_t)c.carrier.dim(total), Scalar(0));
                    bool nonzero = false;
                    for (int r = 0; r < xib.rows(); ++r) {
                        Scalar acc_v(0);
                        for (const auto& [j, v] : xib.row(r)) {
                            auto it = img.find(j);
                            if (it != img.end()) acc_v += v * it->second;
                        }
                        if (acc_v != 0) {
                            col[r] = acc_v;
                            nonzero = true;
                        }
                    }
                    if (!nonzero) continue;
                    auto it = acc.find(total);
                    if (it == acc.end())
                        it = acc.emplace(total, Matrix(c.carrier.dim(total), 0)).first;
                    Matrix joined(c.carrier.dim(total), it->second.cols() + 1);
                    for (int r = 0; r < it->second.rows(); ++r)
                        for (const auto& [j, v] : it->second.row(r)) joined.set(r, j, v);
                    for (int r = 0; r < (int)col.size(); ++r)
                        if (col[r] != 0) joined.set(r, it->second.cols(), col[r]);
                    it->second = std::move(joined);
                }
            }
            return;
        }
        for (const auto& [d, m] : *ws[at]) {
            if (deg + d + mins[at + 1] > c.degree_cap) continue;
            for (int col = 0; col < m.cols(); ++col) {
                choice[at] = {d, col};
                self(self, at + 1, deg + d);
            }
        }
    };
    rec(rec, 0, 0);
}

Subspace reduce_subspace(const Subspace& s) {
    Subspace out;
    for (const auto& [d, m] : s) {
        auto piv = pivot_columns(m);
        if (!piv.empty()) out[d] = m.columns(piv);
    }
    return out;
}

}  // namespace

std::vector<Subspace> product_filtration(const AlgebraOverOperad& c, int n_max) {
    std::vector<Subspace> filt(n_max + 2);
    // I^1 = C
    for (const auto& [d, k] : c.carrier.dims) filt[1][d] = Matrix::identity(k);
    for (int m = 2; m <= n_max + 1; ++m) {
        Subspace acc;
        for (int k = 2; k <= c.op->max_arity(); ++k) {
            // compositions (c_1..c_k), parts in [1, m-1], sum >= m; redundant
            // tuples only enlarge the span harmlessly, so enumerate minimal
            // ones: sum in [m, m + max part - 1] is enough, but the simple
            // filter below is already cheap at desk scale.
            std::vector<int> parts(k, 1);
            auto rec = [&](auto&& self, int at, int sum) -> void {
                if (at == k) {
                    if (sum < m) return;
                    // minimality: decreasing any part drops below m
                    if (sum - 1 >= m) {
                        bool minimal = true;
                        for (int i = 0; i < k && minimal; ++i)
                            if (parts[i] > 1) minimal = false;
                        if (!minimal) return;
                    }
                    std::vector<const Subspace*> ws;
                    for (int i = 0; i < k; ++i) ws.push_back(&filt[parts[i]]);
                    theta_image_of_subspaces(c, ws, acc);
                    return;
                }
                for (int p = 1; p <= m - 1; ++p) {
                    parts[at] = p;
                    self(self, at + 1, sum + p);
                }
            };
            rec(rec, 0, 0);
        }
        filt[m] = reduce_subspace(acc);
    }
    return filt;
}

Tower tower(const AlgebraOverOperad& c, int n_max, TowerMode mode, int simplicial_cap) {
    Tower t;
    t.mode = mode;
    t.levels.resize(n_max + 2);
    t.projections.resize(n_max + 2);
    t.connecting.resize(n_max + 2);
    t.layers.resize(n_max + 1);
    t.homology.resize(n_max + 2);

    if (mode == TowerMode::direct_mode) {
        auto filt = product_filtration(c, n_max);
        std::vector<QuotientMaps> qs(n_max + 2);
        for (int m = 1; m <= n_max + 1; ++m) {
            qs[m] = quotient_by_span(c.carrier, filt[m]);
            t.levels[m] = qs[m].space;
            t.projections[m] = qs[m].projection;
        }
        for (int m = 1; m <= n_max; ++m) {
            // I/I^{m+1} -> I/I^m
            t.connecting[m] = qs[m].projection.compose(qs[m + 1].section);
            // layer: kernel of the connecting map
            auto kc = kernel_cokernel(t.connecting[m]);
            t.layers[m] = kc.kernel;
        }
        return t;
    }

    // derived mode: Q_n applied levelwise to the bar resolution
    for (const auto& [d, k] : c.carrier.dims)
        if (d <= 0)
            throw std::invalid_argument("derived tower needs a connected carrier");
    BarResolution bar = bar_resolution(c, simplicial_cap);
    for (int m = 2; m <= n_max + 1; ++m) {
        // levelwise quotient by the image of theta_m of the free level algebra
        std::vector<QuotientMaps> lq(bar.levels.size());
        int levels = (int)bar.levels.size();
        for (int p = 0; p < levels; ++p) {
            // structure map of B_p is the 0th face of level p+1 when it
            // exists; B_p is free on the previous stage, so theta_m image is
            // the xi-image of the outer-arity-m part
            Subspace image;
            if (p + 1 < levels) {
                BasisFilter am = filter_basis(*bar.levels[p + 1], [&](int d, int i) {
                    return bar.levels[p + 1]->elems(d)[i].arity == m;
                });
                GradedLinearMap th = bar.faces[p + 1][0].compose(am.inclusion);
                for (const auto& [d, blk] : th.blocks) {
                    auto piv = pivot_columns(blk);
                    if (!piv.empty()) image[d] = blk.columns(piv);
                }
            } else {
                // top level: recompute the free multiplication directly
                FreeMultiplication fm =
                    free_multiplication(*c.triple, bar.spaces[p - 1], c.degree_cap);
                (void)fm;
            }
            lq[p] = quotient_by_span(bar.spaces[p], image);
        }
        // induced normalized complex on the quotients
        int usable = levels - 1;  // top level lacks its theta image
        std::vector<GradedLinearMap> qfaces_sum(usable);
        std::vector<std::vector<GradedLinearMap>> qdegen(usable);
        std::vector<GradedVectorSpace> qspaces(usable);
        for (int p = 0; p < usable; ++p) qspaces[p] = lq[p].space;
        // degeneracies descend
        for (int p = 0; p + 1 < usable; ++p)
            for (int i = 0; i <= p; ++i)
                qdegen[p].push_back(
                    lq[p + 1].projection.compose(bar.degeneracies[p][i]).compose(lq[p].section));
        // normalized chains: quotient by degeneracy images
        std::vector<QuotientMaps> norm(usable);
        for (int p = 0; p < usable; ++p) {
            Subspace span;
            if (p > 0) {
                for (const auto& g : qdegen[p - 1]) {
                    for (const auto& [d, blk] : g.blocks) {
                        auto piv = pivot_columns(blk);
                        if (piv.empty()) continue;
                        Matrix cols = blk.columns(piv);
                        auto it = span.find(d);
                        if (it == span.end()) span[d] = cols;
                        else it->second = it->second.beside(cols);
                    }
                }
            }
            norm[p] = quotient_by_span(lq[p].space, reduce_subspace(span));
        }
        std::vector<GradedLinearMap> bnd(usable);
        for (int p = 1; p < usable; ++p) {
            GradedLinearMap sum =
                GradedLinearMap::zero(lq[p].space, lq[p - 1].space);
            for (int i = 0; i <= p; ++i) {
                GradedLinearMap face =
                    lq[p - 1].projection.compose(bar.faces[p][i]).compose(lq[p].section);
                sum = (i % 2 == 0) ? sum + face : sum - face;
            }
            bnd[p] = norm[p - 1].projection.compose(sum).compose(norm[p].section);
        }
        std::map<int, std::map<int, int>> table;
        for (int q = 0; q < usable; ++q) {
            for (const auto& [d, dim] : norm[q].space.dims) {
                int r1 = q + 1 < usable ? rank(bnd[q + 1].block(d)) : 0;
                int r0 = q > 0 ? rank(bnd[q].block(d)) : 0;
                int h = dim - r0 - r1;
                if (h != 0) table[q][d] = h;
            }
        }
        t.levels[m] = GradedVectorSpace();
        if (table.count(0))
            for (const auto& [d, h] : table[0]) t.levels[m].set_dim(d, h);
        t.homology[m] = std::move(table);
    }
    for (int m = 2; m <= n_max; ++m) {
        // dims reconcile: layer dims from consecutive levels
        GradedVectorSpace layer;
        for (const auto& [d, k] : t.levels[m + 1].dims) {
            int low = t.levels[m].dim(d);
            if (k - low > 0) layer.set_dim(d, k - low);
        }
        t.layers[m] = layer;
    }
    return t;
}

BarResolution bar_resolution(const AlgebraOverOperad& c, int simplicial_cap) {
    for (const auto& [d, k] : c.carrier.dims)
        if (d <= 0)
            throw std::invalid_argument("bar resolution needs a connected carrier");
    BarResolution bar;
    const int P = simplicial_cap;
    // spaces S_q: S_0 = C, S_{q+1} = T(S_q); level p is S_{p+1}
    std::vector<GradedVectorSpace> s_spaces{c.carrier};
    std::vector<std::shared_ptr<Evaluation>> evals;  // evals[q] = T(S_q)
    std::vector<FreeMultiplication> mults;           // mults[q]: T(T(S_q)) -> T(S_q)
    for (int q = 0; q <= P; ++q) {
        FreeMultiplication fm = free_multiplication(*c.triple, s_spaces.back(), c.degree_cap);
        evals.push_back(fm.inner);
        s_spaces.push_back(fm.inner->space());
        mults.push_back(std::move(fm));
    }
    for (int p = 0; p <= P; ++p) {
        bar.levels.push_back(evals[p]);
        bar.spaces.push_back(evals[p]->space());
    }

    // T^i lift of a map g : S_a -> S_b through the tower of evaluations
    auto lift = [&](GradedLinearMap g, int from_level, int times) {
        // g maps S_{from_level} -> S_{to}; lifting i times gives
        // T^i(g): S_{from_level + i} -> ...
        int a = from_level;
        for (int i = 0; i < times; ++i) {
            // identify T(S_a) via evals[a]; the target eval is the one whose
            // input is g.target; rebuild it for the composite space
            Evaluation from(c.op->seq, LabeledSpace::single(g.source, "l"), c.degree_cap);
            Evaluation to(c.op->seq, LabeledSpace::single(g.target, "l"), c.degree_cap);
            g = eval_map(from, to, g);
            ++a;
        }
        return g;
    };

    bar.faces.resize(P + 1);
    bar.degeneracies.resize(P + 1);
    for (int p = 1; p <= P; ++p) {
        for (int i = 0; i < p; ++i) {
            // d_i = T^i mu at S_{p-1-i}
            bar.faces[p].push_back(lift(mults[p - 1 - i].multiply, p - i, i));
        }
        // d_p = T^p xi
        bar.faces[p].push_back(lift(c.xi, 1, p));
    }
    for (int p = 0; p < P; ++p) {
        for (int i = 0; i <= p; ++i) {
            // s_i = T^{i+1} eta at S_{p-i}
            GradedLinearMap eta_ins = unit_insertion_into(*evals[p - i], c.op->unit);
            bar.degeneracies[p].push_back(lift(eta_ins, p - i + 1, i + 1));
        }
    }

    // simplicial identities
    for (int p = 2; p <= P; ++p) {
        for (int i = 0; i < p; ++i)
            for (int j = i + 1; j <= p; ++j) {
                GradedLinearMap lhs = bar.faces[p - 1][i].compose(bar.faces[p][j]);
                GradedLinearMap rhs = bar.faces[p - 1][j - 1].compose(bar.faces[p][i]);
                if (!(lhs == rhs))
                    bar.simplicial_identities.violations.push_back(
                        {"d d", std::to_string(p) + "|" + std::to_string(i) + "," +
                                    std::to_string(j),
                         0});
            }
    }
    for (int p = 1; p < P; ++p) {
        for (int i = 0; i <= p; ++i) {
            for (int j = 0; j <= p + 1; ++j) {
                // d_j s_i rules at level p (s_i : B_p -> B_{p+1})
                GradedLinearMap lhs = bar.faces[p + 1][j].compose(bar.degeneracies[p][i]);
                GradedLinearMap rhs;
                if (j < i) {
                    rhs = bar.degeneracies[p - 1][i - 1].compose(bar.faces[p][j]);
                } else if (j == i || j == i + 1) {
                    rhs = GradedLinearMap::identity(bar.spaces[p]);
                } else {
                    rhs = bar.degeneracies[p - 1][i].compose(bar.faces[p][j - 1]);
                }
                if (!(lhs == rhs))
                    bar.simplicial_identities.violations.push_back(
                        {"d s", std::to_string(p) + "|" + std::to_string(j) + "," +
                                    std::to_string(i),
                         0});
            }
        }
    }

    // normalized chains: quotient by the degeneracy images
    std::vector<QuotientMaps> norm(P + 1);
    for (int p = 0; p <= P; ++p) {
        Subspace span;
        if (p > 0) {
            for (const auto& g : bar.degeneracies[p - 1]) {
                for (const auto& [d, blk] : g.blocks) {
                    auto piv = pivot_columns(blk);
                    if (piv.empty()) continue;
                    Matrix cols = blk.columns(piv);
                    auto it = span.find(d);
                    if (it == span.end()) span[d] = cols;
                    else it->second = it->second.beside(cols);
                }
            }
        }
        norm[p] = quotient_by_span(bar.spaces[p], reduce_subspace(span));
        bar.normalized.push_back(norm[p].space);
    }
    bar.boundary.resize(P + 1);
    for (int p = 1; p <= P; ++p) {
        GradedLinearMap sum = GradedLinearMap::zero(bar.spaces[p], bar.spaces[p - 1]);
        for (int i = 0; i <= p; ++i)
            sum = (i % 2 == 0) ? sum + bar.faces[p][i] : sum - bar.faces[p][i];
        bar.boundary[p] = norm[p - 1].projection.compose(sum).compose(norm[p].section);
    }
    return bar;
}

std::map<int, std::map<int, int>> BarResolution::homology() const {
    std::map<int, std::map<int, int>> table;
    int P = (int)normalized.size() - 1;
    for (int q = 0; q <= P; ++q) {
        for (const auto& [d, dim] : normalized[q].dims) {
            int r1 = q + 1 <= P ? rank(boundary[q + 1].block(d)) : 0;
            int r0 = q > 0 ? rank(boundary[q].block(d)) : 0;
            int h = dim - r0 - r1;
            if (h != 0) table[q][d] = h;
        }
    }
    return table;
}

bool BarResolution::augmentation_exact(const AlgebraOverOperad& c) const {
    // H_0(normalized) = carrier via xi, and H_{q>0} = 0
    auto table = homology();
    for (const auto& [q, row] : table) {
        if (q == 0) continue;
        if (!row.empty()) return false;
    }
    // xi o boundary_1 = 0 and xi surjective with kernel = im(boundary_1)
    GradedLinearMap xi_n = c.xi;  // B_0 = T(C); normalized[0] = B_0
    if (!(xi_n.compose(boundary[1]).is_zero())) return false;
    for (const auto& [d, k] : c.carrier.dims) {
        int rk_xi = rank(xi_n.block(d));
        if (rk_xi != k) return false;
        int dim_b0 = normalized[0].dim(d);
        int rk_b1 = rank(boundary[1].block(d));
        if (dim_b0 - rk_b1 != k) return false;
    }
    return true;
}

LayerCompare layer_compare(const AlgebraOverOperad& c, int n, int n_max) {
    LayerCompare lc;
    lc.precondition = is_primitively_generated(*c.op, {1, 2}, std::min(c.degree_cap, 4));
    if (!lc.precondition.primitively_generated) {
        lc.equal = false;
        return lc;
    }
    Tower t = tower(c, std::max(n, n_max), TowerMode::direct_mode, 0);
    for (const auto& [d, k] : t.layers[n].dims) lc.layer_dims[d] = k;

    // a(n) (x)_{Sigma_n} (I/I^2)^(x)n
    GradedVectorSpace q2 = t.levels[2];
    SymmetricSequence single = SymmetricSequence::zeros(c.op->max_arity(), c.op->seq.rule);
    single.components[n] = c.op->seq.at(n);
    Evaluation layer_ev(single, LabeledSpace::single(q2), c.degree_cap);
    for (const auto& [d, k] : layer_ev.space().dims) lc.coefficient_dims[d] = k;
    lc.equal = lc.layer_dims == lc.coefficient_dims;
    return lc;
}

SectionResult find_section(const AlgebraOverOperad& c) {
    SectionResult out;
    Tower t = tower(c, 1, TowerMode::direct_mode, 0);
    out.indecomposables = t.levels[2];
    out.projection = t.projections[2];
    out.section = solve_section(out.projection);
    return out;
}

SplitReport split_algebra(const AlgebraOverOperad& c, const GradedLinearMap& phi, int n_max) {
    SplitReport report;
    SectionResult sec = find_section(c);
    report.indecomposables = sec.indecomposables;
    if (!(sec.projection.compose(phi).is_identity())) {
        report.section_valid = false;
        report.is_isomorphism = false;
        return report;
    }
    // alpha: T(I/I^2 C) --T(phi)--> T(C) --xi--> C
    AlgebraOverOperad free_on_q = free_algebra(c.op, sec.indecomposables, c.degree_cap);
    Evaluation from(c.op->seq, LabeledSpace::single(sec.indecomposables, "q"), c.degree_cap);
    GradedLinearMap t_phi = eval_map(from, *c.powers, phi);
    report.alpha = c.xi.compose(t_phi);
    // NOTE: `from` and the carrier evaluation of free_on_q are the same
    // construction, so alpha is a map free_on_q.carrier -> c.carrier.

    Tower tf = tower(free_on_q, n_max, TowerMode::direct_mode, 0);
    Tower tc = tower(c, n_max, TowerMode::direct_mode, 0);
    for (int m = 2; m <= n_max + 1; ++m) {
        // induced map on levels I/I^m
        GradedLinearMap level_map =
            tc.projections[m].compose(report.alpha).compose(solve_section(tf.projections[m])
                                                                 ? *solve_section(tf.projections[m])
                                                                 : GradedLinearMap());
        // well-definedness: alpha(I^m(free)) must land in I^m(C); verified by
        // comparing through any section since both towers are quotients
        if (!level_map.is_isomorphism()) {
            report.is_isomorphism = false;
            // find the failing layer and degree
            for (const auto& [d, k] : tf.levels[m].dims) {
                if (tc.levels[m].dim(d) != k || rank(level_map.block(d)) != k) {
                    report.failures.push_back({m - 1, d});
                }
            }
        }
    }
    // layer dims must also match
    for (int m = 2; m <= n_max; ++m) {
        for (const auto& [d, k] : tf.layers[m].dims) {
            if (tc.layers[m].dim(d) != k) report.failures.push_back({m, d});
        }
        for (const auto& [d, k] : tc.layers[m].dims) {
            if (tf.layers[m].dim(d) != k) report.failures.push_back({m, d});
        }
    }
    std::sort(report.failures.begin(), report.failures.end());
    report.failures.erase(std::unique(report.failures.begin(), report.failures.end()),
                          report.failures.end());
    if (!report.failures.empty()) report.is_isomorphism = false;
    report.complete_iso = report.alpha.is_isomorphism();
    return report;
}

}  // namespace opcalc
