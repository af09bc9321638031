#include "opcalc/exactlin.hpp"

#include <algorithm>

namespace opcalc {

TensorBasis TensorBasis::build(std::vector<GradedVectorSpace> factor_list,
                               std::optional<int> degree_cap) {
    TensorBasis tb;
    tb.factors = std::move(factor_list);
    const int k = (int)tb.factors.size();

    // Minimal achievable degree of the remaining factors, for pruning.
    std::vector<int> min_rest(k + 1, 0);
    for (int i = k - 1; i >= 0; --i) {
        int mn = tb.factors[i].dims.empty() ? 0 : tb.factors[i].dims.begin()->first;
        min_rest[i] = min_rest[i + 1] + mn;
        if (tb.factors[i].dims.empty()) min_rest[i] = INT32_MAX / 2;  // empty factor: no elements
    }

    Elem current(k);
    auto emit = [&](auto&& self, int i, int degree) -> void {
        if (i == k) {
            auto& vec = tb.elems[degree];
            tb.position[degree][current] = (int)vec.size();
            vec.push_back(current);
            return;
        }
        for (const auto& [d, dim] : tb.factors[i].dims) {
            if (degree_cap && degree + d + min_rest[i + 1] > *degree_cap) continue;
            for (int idx = 0; idx < dim; ++idx) {
                current[i] = {d, idx};
                self(self, i + 1, degree + d);
            }
        }
    };
    if (k == 0) {
        tb.position[0][{}] = 0;
        tb.elems[0].push_back({});
    } else {
        bool any_empty = false;
        for (const auto& f : tb.factors)
            if (f.is_zero()) any_empty = true;
        if (!any_empty) emit(emit, 0, 0);
    }
    for (const auto& [d, v] : tb.elems) tb.space.set_dim(d, (int)v.size());
    return tb;
}

GradedLinearMap permute_factors(const TensorBasis& source, const TensorBasis& target,
                                const Perm& sigma, SignRule rule) {
    assert(source.factors.size() == sigma.size());
    GradedLinearMap out(source.space, target.space);
    for (const auto& [d, list] : source.elems) {
        Matrix m(target.dim(d), source.dim(d));
        for (int col = 0; col < (int)list.size(); ++col) {
            const TensorBasis::Elem& e = list[col];
            TensorBasis::Elem moved(e.size());
            std::vector<int> degs(e.size());
            for (size_t i = 0; i < e.size(); ++i) {
                moved[sigma[i]] = e[i];
                degs[i] = e[i].first;
            }
            int sign = sign_for(rule, sigma, degs);
            m.set(target.index_of(d, moved), col, Scalar(sign));
        }
        out.set_block(d, std::move(m));
    }
    return out;
}

GradedLinearMap tensor_of_maps(const TensorBasis& source, const TensorBasis& target,
                               const std::vector<const GradedLinearMap*>& per_factor) {
    GradedLinearMap out(source.space, target.space);
    for (const auto& [d, list] : source.elems) {
        Matrix m(target.dim(d), (int)list.size());
        for (int col = 0; col < (int)list.size(); ++col) {
            const TensorBasis::Elem& e = list[col];
            std::vector<std::pair<TensorBasis::Elem, Scalar>> terms{{{}, Scalar(1)}};
            for (size_t fs = 0; fs < e.size(); ++fs) {
                const auto [pd, pi] = e[fs];
                const Matrix fb = per_factor[fs]->block(pd);
                std::vector<std::pair<TensorBasis::Elem, Scalar>> next;
                for (int r = 0; r < fb.rows(); ++r) {
                    Scalar v = fb.get(r, pi);
                    if (v == 0) continue;
                    for (const auto& [partial, c] : terms) {
                        auto ext = partial;
                        ext.push_back({pd, r});
                        next.push_back({std::move(ext), c * v});
                    }
                }
                terms = std::move(next);
            }
            for (const auto& [elem, c] : terms) m.add_to(target.index_of(d, elem), col, c);
        }
        out.set_block(d, std::move(m));
    }
    return out;
}

GradedLinearMap contract_factors(const TensorBasis& src, int lo, int cnt,
                                 const TensorBasis& fdom, const GradedLinearMap& f,
                                 const TensorBasis& tgt) {
    GradedLinearMap out(src.space, tgt.space);
    for (const auto& [d, list] : src.elems) {
        Matrix m(tgt.dim(d), (int)list.size());
        for (int col = 0; col < (int)list.size(); ++col) {
            const TensorBasis::Elem& e = list[col];
            TensorBasis::Elem sub(e.begin() + lo, e.begin() + lo + cnt);
            int dsub = TensorBasis::degree_of(sub);
            const Matrix fb = f.block(dsub);
            int fcol = fdom.index_of(dsub, sub);
            for (int r = 0; r < fb.rows(); ++r) {
                Scalar v = fb.get(r, fcol);
                if (v == 0) continue;
                TensorBasis::Elem img(e.begin(), e.begin() + lo);
                img.push_back({dsub, r});
                img.insert(img.end(), e.begin() + lo + cnt, e.end());
                m.add_to(tgt.index_of(d, img), col, v);
            }
        }
        out.set_block(d, std::move(m));
    }
    return out;
}

TensorProduct tensor_product(const GradedVectorSpace& v, const GradedVectorSpace& w,
                             SignRule rule, std::optional<int> degree_cap) {
    (void)rule;
    TensorProduct tp;
    tp.basis = TensorBasis::build({v, w}, degree_cap);
    tp.space = tp.basis.space;
    return tp;
}

GradedLinearMap TensorProduct::swap_to(const TensorProduct& swapped, SignRule rule) const {
    return permute_factors(basis, swapped.basis, {1, 0}, rule);
}

KernelCokernel kernel_cokernel(const GradedLinearMap& f) {
    KernelCokernel out;
    out.inclusion = GradedLinearMap(GradedVectorSpace(), f.source);
    for (const auto& [d, sdim] : f.source.dims) {
        Matrix ker = kernel_basis(f.block(d));
        if (ker.cols() > 0) {
            out.kernel.set_dim(d, ker.cols());
            out.inclusion.blocks[d] = std::move(ker);
        }
    }
    out.inclusion.source = out.kernel;

    std::map<int, Matrix> image;
    for (const auto& [d, m] : f.blocks) {
        auto pivots = pivot_columns(m);
        if (!pivots.empty()) image[d] = m.columns(pivots);
    }
    QuotientMaps q = quotient_by_span(f.target, image);
    out.cokernel = q.space;
    out.projection = q.projection;
    return out;
}

QuotientMaps quotient_by_span(const GradedVectorSpace& ambient,
                              const std::map<int, Matrix>& subspace) {
    QuotientMaps out;
    out.projection = GradedLinearMap(ambient, GradedVectorSpace());
    out.section = GradedLinearMap(GradedVectorSpace(), ambient);
    for (const auto& [d, tdim] : ambient.dims) {
        auto it = subspace.find(d);
        Echelon ech;
        if (it != subspace.end()) {
            assert(it->second.rows() == tdim);
            ech = row_reduce(it->second.transposed());
        } else {
            ech.cols = tdim;
        }
        std::vector<int> pivot_of(tdim, -1);
        for (int t = 0; t < ech.rank(); ++t) pivot_of[ech.pivot_cols[t]] = t;
        std::vector<int> free_cols;
        for (int j = 0; j < tdim; ++j)
            if (pivot_of[j] < 0) free_cols.push_back(j);
        int qdim = (int)free_cols.size();
        if (qdim == 0) continue;
        out.space.set_dim(d, qdim);
        Matrix proj(qdim, tdim), sect(tdim, qdim);
        for (int k = 0; k < qdim; ++k) {
            proj.set(k, free_cols[k], Scalar(1));
            sect.set(free_cols[k], k, Scalar(1));
            // x ~ x - sum c_j * (rref row j): subtract the pivot-coordinate
            // expression of each free coordinate.
        }
        for (int p = 0; p < ech.rank(); ++p) {
            for (const auto& [c, v] : ech.rows[p]) {
                if (pivot_of[c] < 0) {
                    // rref row: e_{pivot} + v * e_c (c free). Killing the
                    // pivot coordinate adds -v times it to coordinate c.
                    int k = (int)(std::lower_bound(free_cols.begin(), free_cols.end(), c) -
                                  free_cols.begin());
                    proj.set(k, ech.pivot_cols[p], -v);
                }
            }
        }
        out.projection.blocks[d] = std::move(proj);
        out.section.blocks[d] = std::move(sect);
    }
    out.projection.target = out.space;
    out.section.source = out.space;
    return out;
}

std::optional<GradedLinearMap> solve_section(const GradedLinearMap& p) {
    GradedLinearMap s(p.target, p.source);
    for (const auto& [d, tdim] : p.target.dims) {
        Matrix block = p.block(d);
        auto pivots = pivot_columns(block);
        if ((int)pivots.size() < tdim) return std::nullopt;  // not surjective
        auto inv = inverse(block.columns(pivots));
        assert(inv);
        Matrix sec(p.source.dim(d), tdim);
        for (int t = 0; t < tdim; ++t)
            for (int j = 0; j < tdim; ++j) {
                Scalar v = inv->get(t, j);
                if (v != 0) sec.set(pivots[t], j, v);
            }
        s.set_block(d, std::move(sec));
    }
    return s;
}

}  // namespace opcalc
