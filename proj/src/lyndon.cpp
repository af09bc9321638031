#include "opcalc/lyndon.hpp"

#include <algorithm>

namespace opcalc {

bool is_lyndon(const std::vector<int>& w) {
    if (w.empty()) return false;
    for (size_t i = 1; i < w.size(); ++i) {
        std::vector<int> rot(w.begin() + i, w.end());
        rot.insert(rot.end(), w.begin(), w.begin() + i);
        if (!(w < rot)) return false;
    }
    return true;
}

std::pair<std::vector<int>, std::vector<int>> lyndon_factorize(const std::vector<int>& w) {
    assert(w.size() >= 2);
    for (size_t i = 1; i < w.size(); ++i) {
        std::vector<int> suffix(w.begin() + i, w.end());
        if (is_lyndon(suffix))
            return {{w.begin(), w.begin() + i}, suffix};
    }
    assert(false && "not a Lyndon word");
    return {};
}

BracketTree BracketTree::of_word(const std::vector<int>& w) {
    BracketTree t;
    if (w.size() == 1) {
        t.leaf = w[0];
        return t;
    }
    auto [u, v] = lyndon_factorize(w);
    t.left = std::make_unique<BracketTree>(of_word(u));
    t.right = std::make_unique<BracketTree>(of_word(v));
    return t;
}

const MultilinearLie& MultilinearLie::get(int arity, int letter_degree, bool desusp_signs) {
    static std::map<std::tuple<int, int, bool>, MultilinearLie> cache;
    auto key = std::make_tuple(arity, letter_degree, desusp_signs);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    MultilinearLie ml;
    ml.arity = arity;
    ml.letter_degree = letter_degree;
    ml.desusp_signs = desusp_signs;
    for (const Perm& p : all_permutations(arity)) ml.words.push_back(p);
    std::sort(ml.words.begin(), ml.words.end());
    for (int i = 0; i < (int)ml.words.size(); ++i) ml.word_index[ml.words[i]] = i;
    for (const auto& w : ml.words)
        if (is_lyndon(w)) ml.lyndon.push_back(w);

    // Expand each Lyndon bracketing recursively. A subtree expansion is a
    // combination of sub-words; the graded commutator of two expansions
    // concatenates both ways with the Koszul sign of the block degrees.
    struct SubElt {
        std::map<std::vector<int>, Scalar> terms;
        int length = 0;
    };
    auto expand = [&](auto&& self, const BracketTree& t) -> SubElt {
        SubElt out;
        if (t.leaf >= 0) {
            out.terms[{t.leaf}] = Scalar(1);
            out.length = 1;
            return out;
        }
        SubElt a = self(self, *t.left);
        SubElt b = self(self, *t.right);
        out.length = a.length + b.length;
        long da = (long)letter_degree * a.length;
        long db = (long)letter_degree * b.length;
        int sign = (da % 2 != 0 && db % 2 != 0) ? -1 : 1;
        Scalar node(1);
        if (desusp_signs && da % 2 != 0) node = Scalar(-1);
        for (const auto& [wa, ca] : a.terms) {
            for (const auto& [wb, cb] : b.terms) {
                std::vector<int> ab = wa;
                ab.insert(ab.end(), wb.begin(), wb.end());
                out.terms[ab] += node * ca * cb;
                std::vector<int> ba = wb;
                ba.insert(ba.end(), wa.begin(), wa.end());
                out.terms[ba] -= node * Scalar(sign) * ca * cb;
            }
        }
        return out;
    };

    ml.expansion = Matrix((int)ml.words.size(), (int)ml.lyndon.size());
    for (int c = 0; c < (int)ml.lyndon.size(); ++c) {
        BracketTree t = BracketTree::of_word(ml.lyndon[c]);
        SubElt e = expand(expand, t);
        for (const auto& [w, coeff] : e.terms)
            if (coeff != 0) ml.expansion.set(ml.word_index.at(w), c, coeff);
    }
    return cache.emplace(key, std::move(ml)).first->second;
}

std::vector<Scalar> MultilinearLie::to_words(const std::vector<Scalar>& coords) const {
    assert((int)coords.size() == dim());
    return expansion.apply(coords);
}

std::optional<std::vector<Scalar>> MultilinearLie::from_words(const std::vector<Scalar>& v) const {
    Matrix rhs((int)words.size(), 1);
    for (int i = 0; i < (int)words.size(); ++i)
        if (v[i] != 0) rhs.set(i, 0, v[i]);
    auto x = solve(expansion, rhs);
    if (!x) return std::nullopt;
    // `solve` only checks consistency of the reduced system; confirm exactly.
    std::vector<Scalar> coords(dim(), Scalar(0));
    for (int i = 0; i < dim(); ++i) coords[i] = x->get(i, 0);
    std::vector<Scalar> back = expansion.apply(coords);
    for (int i = 0; i < (int)words.size(); ++i)
        if (back[i] != v[i]) return std::nullopt;
    return coords;
}

std::vector<std::vector<int>> lyndon_words_of_length(int channels, int len) {
    // Brute-force filter; this is a counting oracle, not a hot path.
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self) -> void {
        if ((int)cur.size() == len) {
            if (is_lyndon(cur)) out.push_back(cur);
            return;
        }
        for (int c = 0; c < channels; ++c) {
            cur.push_back(c);
            self(self);
            cur.pop_back();
        }
    };
    rec(rec);
    return out;
}

}  // namespace opcalc
