#include "opcalc/calculus.hpp"

#include <algorithm>

namespace opcalc {

AnalyticFunctor AnalyticFunctor::taylor_polynomial(int n) const {
    SymmetricSequence s = seq;
    for (int m = n + 1; m <= s.max_arity; ++m) s.components[m] = SymGroupModule::zero(m);
    return AnalyticFunctor(std::move(s));
}

AnalyticFunctor AnalyticFunctor::layer(int n) const {
    SymmetricSequence s = SymmetricSequence::zeros(seq.max_arity, seq.rule);
    if (n <= seq.max_arity) s.components[n] = seq.at(n);
    return AnalyticFunctor(std::move(s));
}

BasisFilter arity_filter(const Evaluation& ev, int lo, int hi) {
    return filter_basis(ev, [&](int d, int i) {
        const auto& e = ev.elems(d)[i];
        return e.arity >= lo && e.arity <= hi;
    });
}

std::vector<int> CrossEffect::multidegree(int degree, int index) const {
    // index refers to the subspace basis; map through the inclusion
    const Matrix incl = part.inclusion.block(degree);
    for (int r = 0; r < incl.rows(); ++r)
        if (incl.get(r, index) != 0) return ambient->multidegree_of(degree, r);
    return std::vector<int>(ambient->input().summands.size(), 0);
}

CrossEffect cross_effect(const AnalyticFunctor& f, const std::vector<GradedVectorSpace>& inputs,
                         int degree_cap) {
    if (inputs.empty()) throw std::invalid_argument("cross_effect needs k >= 1");
    LabeledSpace ls;
    for (int i = 0; i < (int)inputs.size(); ++i) {
        ls.summands.push_back(inputs[i]);
        ls.names.push_back("m" + std::to_string(i + 1));
    }
    CrossEffect ce;
    ce.ambient = std::make_shared<Evaluation>(f.seq, ls, degree_cap);
    ce.part = filter_basis(*ce.ambient, [&](int d, int i) {
        auto md = ce.ambient->multidegree_of(d, i);
        for (int v : md)
            if (v == 0) return false;
        return true;
    });
    return ce;
}

Differential differential(const AnalyticFunctor& f, const GradedVectorSpace& x,
                          const GradedVectorSpace& y, int degree_cap) {
    LabeledSpace ls;
    ls.summands = {x, y};
    ls.names = {"x", "y"};
    Differential df;
    df.ambient = std::make_shared<Evaluation>(f.seq, ls, degree_cap);
    df.part = filter_basis(*df.ambient, [&](int d, int i) {
        return df.ambient->multidegree_of(d, i)[0] == 1;
    });
    df.derivative = df.part.projection;
    return df;
}

SplitCondition check_split_condition(const AnalyticFunctor& f, const GradedVectorSpace& x,
                                     int n_max, int degree_cap) {
    SplitCondition sc;
    for (int n = 1; n <= n_max; ++n) {
        SplitCondition::Level level;
        level.n = n;
        level.ev = std::make_shared<Evaluation>(f.seq, LabeledSpace::copies(x, n), degree_cap);
        for (int i = 0; i < n; ++i) {
            BasisFilter part = filter_basis(*level.ev, [&](int d, int idx) {
                return level.ev->multidegree_of(d, idx)[i] == 1;
            });
            // canonical section: the coordinate inclusion
            GradedLinearMap section = part.inclusion;
            GradedLinearMap composite = part.projection.compose(section);
            if (!composite.is_identity()) level.composites_ok = false;
            level.parts.push_back(std::move(part));
            level.sections.push_back(std::move(section));
        }
        sc.ok = sc.ok && level.composites_ok;
        sc.levels.push_back(std::move(level));
    }
    return sc;
}

SplittingReport build_splitting(const AnalyticFunctor& f, const GradedVectorSpace& x,
                                const SplitCondition& sections, int n_max, int degree_cap) {
    if ((int)sections.levels.size() < n_max)
        throw std::invalid_argument("build_splitting: sections missing levels");
    SplittingReport report;
    Evaluation full(f.seq, LabeledSpace::single(x), degree_cap);
    BasisFilter taylor = arity_filter(full, 1, n_max);
    report.taylor_space = taylor.space;

    std::vector<GradedLinearMap> columns;  // D_n F(X) -> P_{n_max} F(X)
    for (int n = 1; n <= n_max; ++n) {
        const SplitCondition::Level& level = sections.levels[n - 1];
        if ((int)level.sections.size() != n || !level.ev)
            throw std::invalid_argument("build_splitting: bad section level");
        const Evaluation& ev = *level.ev;

        // verify the supplied sections satisfy the composite-identity contract
        for (int i = 0; i < n; ++i) {
            if (!level.parts[i].projection.compose(level.sections[i]).is_identity()) {
                report.is_isomorphism = false;
                report.failures.push_back({n, INT32_MIN});
                return report;
            }
        }

        // multilinear part: multidegree (1,..,1)
        BasisFilter ml = filter_basis(ev, [&](int d, int idx) {
            auto md = ev.multidegree_of(d, idx);
            for (int v : md)
                if (v != 1) return false;
            return true;
        });

        // Sigma_n permutes the labels; coinvariants via the averaging package
        SymGroupModule mlmod;
        mlmod.arity = n;
        mlmod.space = ml.space;
        GradedVectorSpace total = ev.input().total();
        for (int g = 0; g + 1 < n; ++g) {
            // label swap as a linear map of the labeled sum
            GradedLinearMap swap(total, total);
            for (const auto& [d, dim] : total.dims) {
                Matrix m(dim, dim);
                int per = x.dim(d);
                for (int s = 0; s < n; ++s) {
                    int to = s == g ? g + 1 : (s == g + 1 ? g : s);
                    for (int i = 0; i < per; ++i) m.set(to * per + i, s * per + i, Scalar(1));
                }
                swap.set_block(d, std::move(m));
            }
            GradedLinearMap act = eval_map(ev, ev, swap);
            mlmod.gens.push_back(ml.projection.compose(act).compose(ml.inclusion));
        }
        assert(verify_action(mlmod).ok());
        Coinvariants co = coinvariants(mlmod);
        report.layer_spaces.push_back(co.space);

        // eq1: the coinvariant layer has the dimensions of the direct one
        BasisFilter direct = arity_filter(full, n, n);
        if (!(direct.space == co.space)) report.eq1_consistent = false;

        // eq2: include the multilinear part through the sections, fold, truncate
        GradedLinearMap eq2 = ml.inclusion;
        for (int i = 0; i < n; ++i)
            eq2 = level.sections[i].compose(level.parts[i].projection).compose(eq2);

        GradedLinearMap fold(total, x);
        for (const auto& [d, dim] : x.dims) {
            Matrix m(dim, n * dim);
            for (int s = 0; s < n; ++s)
                for (int i = 0; i < dim; ++i) m.set(i, s * dim + i, Scalar(1));
            fold.set_block(d, std::move(m));
        }
        GradedLinearMap folded = eval_map(ev, full, fold);
        columns.push_back(
            taylor.projection.compose(folded).compose(eq2).compose(co.section));
    }

    // assemble the block map and verify layer by layer, then globally
    GradedVectorSpace source;
    for (const auto& ls : report.layer_spaces)
        source = source.direct_sum(ls);
    GradedLinearMap block(source, taylor.space);
    for (const auto& [d, dim] : source.dims) {
        Matrix m(taylor.space.dim(d), dim);
        int at = 0;
        for (int n = 1; n <= n_max; ++n) {
            const Matrix cb = columns[n - 1].block(d);
            for (int j = 0; j < cb.cols(); ++j)
                for (int i = 0; i < cb.rows(); ++i) {
                    Scalar v = cb.get(i, j);
                    if (v != 0) m.set(i, at + j, v);
                }
            at += report.layer_spaces[n - 1].dim(d);
        }
        block.set_block(d, std::move(m));
    }
    report.block_map = block;

    // per-layer witness: the arity-n component of column n must be an iso
    for (int n = 1; n <= n_max; ++n) {
        BasisFilter direct = arity_filter(full, n, n);
        GradedLinearMap top = direct.projection.compose(taylor.inclusion).compose(columns[n - 1]);
        for (const auto& [d, k] : report.layer_spaces[n - 1].dims) {
            if (rank(top.block(d)) != k || direct.space.dim(d) != k) {
                report.is_isomorphism = false;
                report.failures.push_back({n, d});
            }
        }
        for (const auto& [d, k] : direct.space.dims) {
            if (report.layer_spaces[n - 1].dim(d) != k) {
                report.is_isomorphism = false;
                report.failures.push_back({n, d});
            }
        }
    }
    if (!block.is_isomorphism()) report.is_isomorphism = false;
    std::sort(report.failures.begin(), report.failures.end());
    report.failures.erase(std::unique(report.failures.begin(), report.failures.end()),
                          report.failures.end());
    return report;
}

}  // namespace opcalc
