#pragma once

#include <functional>
#include <string>

#include "opcalc/symseq.hpp"

namespace opcalc {

// A direct sum with named summands. Calculus operations track how many
// tensor slots each summand occupies, so the summand decomposition is part
// of the input, not just the total space.
struct LabeledSpace {
    std::vector<GradedVectorSpace> summands;
    std::vector<std::string> names;

    static LabeledSpace single(GradedVectorSpace x, std::string name = "x") {
        LabeledSpace ls;
        ls.summands.push_back(std::move(x));
        ls.names.push_back(std::move(name));
        return ls;
    }
    static LabeledSpace copies(const GradedVectorSpace& x, int n, const std::string& prefix = "x") {
        LabeledSpace ls;
        for (int i = 0; i < n; ++i) {
            ls.summands.push_back(x);
            ls.names.push_back(prefix + std::to_string(i + 1));
        }
        return ls;
    }

    // Flattened total, summand-major within each degree.
    GradedVectorSpace total() const {
        GradedVectorSpace t;
        for (const auto& s : summands)
            for (const auto& [d, k] : s.dims) t.dims[d] += k;
        return t;
    }
    int flat_index(int degree, int summand, int index) const {
        int base = 0;
        for (int s = 0; s < summand; ++s) base += summands[s].dim(degree);
        return base + index;
    }
};

// F(X) for an analytic functor F with coefficient sequence `seq`, evaluated
// at the labeled direct sum X, truncated to internal degree <= cap. The
// basis is organized by orbits of letter words: for each sorted word the
// stabilizer (a Young subgroup) is averaged with the Koszul twist, which
// keeps the elimination sizes at the coefficient-module dimension.
class Evaluation {
public:
    struct Letter {
        int degree, summand, index;
        friend bool operator<(const Letter& a, const Letter& b) {
            return std::tie(a.degree, a.summand, a.index) < std::tie(b.degree, b.summand, b.index);
        }
    };
    struct Elem {
        int arity, word, m_deg, r;
    };
    struct Rep {
        int arity;
        std::vector<int> word;  // sorted letter ids
        int m_deg;
        std::vector<std::pair<int, Scalar>> mvec;
    };

    Evaluation(const SymmetricSequence& seq, LabeledSpace input, int degree_cap);

    const SymmetricSequence& sequence() const { return *seq_; }
    const LabeledSpace& input() const { return input_; }
    int degree_cap() const { return cap_; }
    const GradedVectorSpace& space() const { return space_; }
    const std::vector<Letter>& letters() const { return letters_; }
    const std::vector<Elem>& elems(int degree) const;
    const std::vector<int>& word_letters(int arity, int word_id) const {
        return words_[arity][word_id];
    }

    int word_degree(int arity, int word_id) const;
    std::vector<int> multidegree_of(int degree, int index) const;

    // Projection of m (x) x_word into the coinvariant basis; `word` is a list
    // of letter ids in any order, `mvec` sparse coordinates of the arity-n
    // coefficient module at degree m_deg. Accumulates scale * class into out.
    void project(int n, const std::vector<int>& word, int m_deg,
                 const std::vector<std::pair<int, Scalar>>& mvec, const Scalar& scale,
                 std::map<int, Scalar>& out) const;

    // Section: representative of a basis element (sorted word).
    Rep include(int degree, int index) const;

    // rho of sigma on the arity-n coefficient module, cached.
    const GradedLinearMap& rho(int n, const Perm& sigma) const;

private:
    struct Orbit {
        std::map<int, std::pair<Matrix, Matrix>> maps;  // m_deg -> (S, P)
    };
    void build();

    const SymmetricSequence* seq_;
    LabeledSpace input_;
    int cap_;
    std::vector<Letter> letters_;
    std::vector<std::vector<std::vector<int>>> words_;          // per arity, sorted words
    std::vector<std::map<std::vector<int>, int>> word_ids_;     // per arity
    std::map<std::pair<int, int>, Orbit> orbits_;               // (arity, word) -> data
    std::map<std::tuple<int, int, int>, int> offsets_;          // (arity, word, m_deg) -> base
    std::map<int, std::vector<Elem>> elems_;
    GradedVectorSpace space_;
    mutable std::map<std::pair<int, Perm>, GradedLinearMap> rho_cache_;
};

// Functorial action: g is a degreewise map between the flattened totals of
// from.input() and to.input(); both evaluations use the same sequence.
GradedLinearMap eval_map(const Evaluation& from, const Evaluation& to, const GradedLinearMap& g);

// A map of sequences (one equivariant map per arity) evaluated at X.
GradedLinearMap eval_nat(const Evaluation& from, const Evaluation& to,
                         const std::vector<GradedLinearMap>& per_arity);

// Canonical isomorphism  eval(F o G, X) -> eval(F, eval(G, X)).
// comp_at_x evaluates fg.seq at X; g_at_x evaluates G at X; f_at_gx
// evaluates F at the single summand g_at_x.space().
GradedLinearMap eval_kappa(const Evaluation& comp_at_x, const ComposeResult& fg,
                           const Evaluation& g_at_x, const Evaluation& f_at_gx);

// Coordinate subspace selected by a predicate on basis elements.
struct BasisFilter {
    GradedVectorSpace space;
    GradedLinearMap inclusion;   // subspace -> ambient
    GradedLinearMap projection;  // ambient -> subspace
};
BasisFilter filter_basis(const Evaluation& ev,
                         const std::function<bool(int degree, int index)>& keep);

// Convenience wrapper with the convergence check from the contract: an input
// with a degree <= 0 part is only allowed when the caller accepts plain
// arity truncation at the sequence cap.
Evaluation evaluate(const SymmetricSequence& seq, const GradedVectorSpace& x, int degree_cap,
                    bool arity_bounded = false);

// Poincare polynomial: degree -> dimension of evaluate(seq, x, cap).
std::map<int, int> poincare_series(const SymmetricSequence& seq, const GradedVectorSpace& x,
                                   int degree_cap, bool arity_bounded = false);

}  // namespace opcalc
