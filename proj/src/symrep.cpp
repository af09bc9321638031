#include "opcalc/symrep.hpp"

#include <algorithm>
#include <stdexcept>

namespace opcalc {

SymGroupModule SymGroupModule::regular(int arity, int degree) {
    SymGroupModule m;
    m.arity = arity;
    auto elements = all_permutations(arity);
    std::map<Perm, int> index;
    for (int i = 0; i < (int)elements.size(); ++i) index[elements[i]] = i;
    m.space = GradedVectorSpace::point(degree, (int)elements.size());
    for (int g = 0; g + 1 < arity; ++g) {
        Perm s = perm_adjacent(arity, g);
        GradedLinearMap gm(m.space, m.space);
        Matrix block((int)elements.size(), (int)elements.size());
        for (int i = 0; i < (int)elements.size(); ++i)
            block.set(index[perm_compose(s, elements[i])], i, Scalar(1));
        gm.set_block(degree, std::move(block));
        m.gens.push_back(std::move(gm));
    }
    return m;
}

ActionReport verify_action(const SymGroupModule& m) {
    ActionReport report;
    const int n = m.arity;
    if ((int)m.gens.size() != std::max(0, n - 1)) {
        report.violations.push_back({0, 0, "shape"});
        return report;
    }
    for (int i = 0; i < (int)m.gens.size(); ++i) {
        if (!(m.gens[i].source == m.space) || !(m.gens[i].target == m.space) ||
            !m.gens[i].well_formed()) {
            report.violations.push_back({i + 1, 0, "shape"});
            return report;
        }
    }
    GradedLinearMap id = GradedLinearMap::identity(m.space);
    for (int i = 0; i < (int)m.gens.size(); ++i) {
        if (!(m.gens[i].compose(m.gens[i]) == id))
            report.violations.push_back({i + 1, 0, "square"});
    }
    for (int i = 0; i + 1 < (int)m.gens.size(); ++i) {
        GradedLinearMap ab = m.gens[i].compose(m.gens[i + 1]);
        if (!(ab.compose(ab).compose(ab) == id))
            report.violations.push_back({i + 1, i + 2, "braid"});
    }
    for (int i = 0; i < (int)m.gens.size(); ++i) {
        for (int j = i + 2; j < (int)m.gens.size(); ++j) {
            GradedLinearMap ab = m.gens[i].compose(m.gens[j]);
            if (!(ab.compose(ab) == id))
                report.violations.push_back({i + 1, j + 1, "commute"});
        }
    }
    return report;
}

GradedLinearMap apply_permutation(const SymGroupModule& m, const Perm& sigma) {
    if ((int)sigma.size() != m.arity || !perm_valid(sigma))
        throw std::invalid_argument("apply_permutation: not a permutation of 1..n");
    GradedLinearMap out = GradedLinearMap::identity(m.space);
    for (int a : adjacent_factorization(sigma)) out = m.gens[a].compose(out);
    return out;
}

Coinvariants coinvariants(const SymGroupModule& m, int arity_cap) {
    if (m.arity > arity_cap)
        throw std::invalid_argument("coinvariants: arity above cap");
    Coinvariants out;
    if (m.is_zero()) {
        out.projection = GradedLinearMap::zero(m.space, out.space);
        out.section = GradedLinearMap::zero(out.space, m.space);
        return out;
    }
    GradedLinearMap sum = GradedLinearMap::zero(m.space, m.space);
    for (const Perm& sigma : all_permutations(std::max(0, m.arity)))
        sum = sum + apply_permutation(m, sigma);
    long fact = 1;
    for (int i = 2; i <= m.arity; ++i) fact *= i;
    GradedLinearMap avg = sum.scaled(make_scalar(1, fact));

    out.projection = GradedLinearMap(m.space, GradedVectorSpace());
    out.section = GradedLinearMap(GradedVectorSpace(), m.space);
    for (const auto& [d, dim] : m.space.dims) {
        Matrix e = avg.block(d);
        auto pivots = pivot_columns(e);
        if (pivots.empty()) continue;
        Matrix basis = e.columns(pivots);  // section block
        auto coords = solve(basis, e);     // basis * coords = e
        assert(coords);
        out.space.set_dim(d, (int)pivots.size());
        out.section.blocks[d] = std::move(basis);
        out.projection.blocks[d] = std::move(*coords);
    }
    out.projection.target = out.space;
    out.section.source = out.space;
    assert(out.projection.compose(out.section).is_identity());
    return out;
}

std::map<int, int> coinvariant_dims_by_character(const SymGroupModule& m, int arity_cap) {
    if (m.arity > arity_cap)
        throw std::invalid_argument("coinvariant dims: arity above cap");
    std::map<int, Scalar> acc;
    long fact = 1;
    for (int i = 2; i <= m.arity; ++i) fact *= i;
    for (const Perm& sigma : all_permutations(std::max(0, m.arity))) {
        GradedLinearMap rho = apply_permutation(m, sigma);
        for (const auto& [d, block] : rho.blocks) {
            Scalar tr(0);
            for (int i = 0; i < block.rows(); ++i) tr += block.get(i, i);
            acc[d] += tr;
        }
    }
    std::map<int, int> dims;
    for (auto& [d, tr] : acc) {
        Scalar avg = tr / Scalar(fact);
        assert(avg.get_den() == 1);
        if (avg != 0) dims[d] = (int)avg.get_num().get_si();
    }
    return dims;
}

namespace {

// Ordered set partitions of {0..j-1} into blocks of sizes js, each block
// listed increasing. Enumeration order equals lexicographic order of the
// minimal-length coset representatives.
void enumerate_blocks(const std::vector<int>& js, std::vector<int> remaining, size_t at,
                      std::vector<std::vector<int>>& current,
                      std::vector<std::vector<std::vector<int>>>& out) {
    if (at == js.size()) {
        out.push_back(current);
        return;
    }
    std::vector<int> chosen;
    auto rec = [&](auto&& self, size_t idx, int need) -> void {
        if (need == 0) {
            std::vector<int> rest;
            size_t c = 0;
            for (int v : remaining) {
                if (c < chosen.size() && chosen[c] == v) ++c;
                else rest.push_back(v);
            }
            current.push_back(chosen);
            enumerate_blocks(js, rest, at + 1, current, out);
            current.pop_back();
            return;
        }
        if (remaining.size() - idx < (size_t)need) return;
        chosen.push_back(remaining[idx]);
        self(self, idx + 1, need - 1);
        chosen.pop_back();
        self(self, idx + 1, need);
    };
    rec(rec, 0, js[at]);
}

}  // namespace

SymGroupModule induce(const std::vector<SymGroupModule>& parts, int arity_cap) {
    int j = 0;
    std::vector<int> js;
    for (const auto& p : parts) {
        js.push_back(p.arity);
        j += p.arity;
    }
    if (j > arity_cap) throw std::invalid_argument("induce: arity above cap");
    SymGroupModule out;
    out.arity = j;
    for (const auto& p : parts)
        if (p.is_zero()) return SymGroupModule::zero(j);
    if (parts.empty()) return SymGroupModule::trivial(0);

    std::vector<GradedVectorSpace> factor_spaces;
    for (const auto& p : parts) factor_spaces.push_back(p.space);
    TensorBasis tensor = TensorBasis::build(factor_spaces);

    std::vector<std::vector<std::vector<int>>> cosets;
    {
        std::vector<int> all(j);
        std::iota(all.begin(), all.end(), 0);
        std::vector<std::vector<int>> current;
        enumerate_blocks(js, all, 0, current, cosets);
    }
    std::map<std::vector<std::vector<int>>, int> coset_index;
    for (int i = 0; i < (int)cosets.size(); ++i) coset_index[cosets[i]] = i;

    std::vector<int> offset(js.size() + 1, 0);
    for (size_t s = 0; s < js.size(); ++s) offset[s + 1] = offset[s] + js[s];

    // basis: (coset, tensor element), coset-major within each degree
    for (const auto& [d, count] : tensor.space.dims)
        out.space.set_dim(d, (int)cosets.size() * count);

    auto rep_of = [&](const std::vector<std::vector<int>>& blocks) {
        Perm c(j);
        for (size_t s = 0; s < blocks.size(); ++s)
            for (int t = 0; t < (int)blocks[s].size(); ++t) c[offset[s] + t] = blocks[s][t];
        return c;
    };

    for (int g = 0; g + 1 < j; ++g) {
        Perm s = perm_adjacent(j, g);
        GradedLinearMap gm(out.space, out.space);
        std::map<int, Matrix> blocks_by_degree;
        for (const auto& [d, count] : out.space.dims)
            blocks_by_degree[d] = Matrix(count, count);

        for (int ci = 0; ci < (int)cosets.size(); ++ci) {
            // s * c = c' * h with h in the Young subgroup
            std::vector<std::vector<int>> moved(cosets[ci].size());
            for (size_t bs = 0; bs < cosets[ci].size(); ++bs) {
                for (int v : cosets[ci][bs]) moved[bs].push_back(s[v]);
                std::sort(moved[bs].begin(), moved[bs].end());
            }
            int cj = coset_index.at(moved);
            Perm h = perm_compose(perm_inverse(rep_of(moved)), perm_compose(s, rep_of(cosets[ci])));
            std::vector<GradedLinearMap> local;
            for (size_t bs = 0; bs < js.size(); ++bs) {
                Perm hb(js[bs]);
                for (int t = 0; t < js[bs]; ++t) hb[t] = h[offset[bs] + t] - offset[bs];
                local.push_back(apply_permutation(parts[bs], hb));
            }
            for (const auto& [d, list] : tensor.elems) {
                Matrix& target = blocks_by_degree[d];
                int per_coset = (int)list.size();
                for (int col = 0; col < per_coset; ++col) {
                    const TensorBasis::Elem& e = list[col];
                    std::vector<std::pair<TensorBasis::Elem, Scalar>> terms{{{}, Scalar(1)}};
                    for (size_t fs = 0; fs < e.size(); ++fs) {
                        const auto [pd, pi] = e[fs];
                        const Matrix& lm = local[fs].block(pd);
                        std::vector<std::pair<TensorBasis::Elem, Scalar>> next;
                        for (int r = 0; r < lm.rows(); ++r) {
                            Scalar v = lm.get(r, pi);
                            if (v == 0) continue;
                            for (const auto& [partial, coeff] : terms) {
                                auto ext = partial;
                                ext.push_back({pd, r});
                                next.push_back({std::move(ext), coeff * v});
                            }
                        }
                        terms = std::move(next);
                    }
                    for (const auto& [elem, coeff] : terms) {
                        int row = cj * per_coset + tensor.index_of(d, elem);
                        target.add_to(row, ci * per_coset + col, coeff);
                    }
                }
            }
        }
        for (auto& [d, blk] : blocks_by_degree)
            if (!blk.is_zero()) gm.blocks[d] = std::move(blk);
        out.gens.push_back(std::move(gm));
    }
    return out;
}

}  // namespace opcalc
