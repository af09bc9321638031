#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "opcalc/matrix.hpp"
#include "opcalc/perm.hpp"

namespace opcalc {

// Multilinear part of the free Lie algebra on `arity` letters 0..arity-1,
// inside the tensor algebra: basis given by Lyndon words (each letter used
// exactly once) with their standard bracketings. Letters may carry an
// internal degree, in which case brackets expand with graded commutators;
// the plain Lie operad uses letter_degree 0.
struct MultilinearLie {
    int arity = 0;
    int letter_degree = 0;
    bool desusp_signs = false;
    std::vector<std::vector<int>> words;   // all arity! arrangements, lex order
    std::map<std::vector<int>, int> word_index;
    std::vector<std::vector<int>> lyndon;  // multilinear Lyndon words, lex order
    Matrix expansion;                      // words x lyndon, bracket expansions

    // With desusp_signs set, every bracket node carries the desuspension
    // factor (-1)^{letter_degree * |left subtree|}, matching the bracket of
    // the operadically shifted Lie structure.
    static const MultilinearLie& get(int arity, int letter_degree = 0,
                                     bool desusp_signs = false);

    int dim() const { return (int)lyndon.size(); }

    // Expansion of a coordinate vector into the word space.
    std::vector<Scalar> to_words(const std::vector<Scalar>& coords) const;

    // Lyndon coordinates of a word-space element; nullopt if it is not in
    // the Lie subspace.
    std::optional<std::vector<Scalar>> from_words(const std::vector<Scalar>& v) const;
};

bool is_lyndon(const std::vector<int>& w);

// Standard factorization w = uv, v the longest proper Lyndon suffix.
std::pair<std::vector<int>, std::vector<int>> lyndon_factorize(const std::vector<int>& w);

// Bracketing tree of a multilinear Lyndon word.
struct BracketTree {
    int leaf = -1;  // letter, or -1 for an internal node
    std::unique_ptr<BracketTree> left, right;
    static BracketTree of_word(const std::vector<int>& w);
    int size() const { return leaf >= 0 ? 1 : left->size() + right->size(); }
};

// All Lyndon words over `channels` letters with length `len` (repetitions
// allowed). Used as an independent counting oracle for free Lie dimensions.
std::vector<std::vector<int>> lyndon_words_of_length(int channels, int len);

}  // namespace opcalc
