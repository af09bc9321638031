#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

namespace opcalc {

// Permutation of {0..n-1} stored as images: p[i] is where slot i goes.
using Perm = std::vector<int>;

inline Perm perm_identity(int n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

inline bool perm_valid(const Perm& p) {
    std::vector<bool> seen(p.size(), false);
    for (int v : p) {
        if (v < 0 || v >= (int)p.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

inline Perm perm_compose(const Perm& p, const Perm& q) {  // (p o q)(i) = p(q(i))
    Perm r(q.size());
    for (size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
    return r;
}

inline Perm perm_inverse(const Perm& p) {
    Perm r(p.size());
    for (size_t i = 0; i < p.size(); ++i) r[p[i]] = (int)i;
    return r;
}

inline Perm perm_adjacent(int n, int i) {  // swaps slots i and i+1
    Perm p = perm_identity(n);
    std::swap(p[i], p[i + 1]);
    return p;
}

inline int perm_sign(const Perm& p) {
    int inv = 0;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

// Writes p as a product of adjacent transpositions, p = s[a_m] o ... o s[a_0]
// (bubble sort on the image array). Applying gens[a_0] first reproduces p.
inline std::vector<int> adjacent_factorization(Perm p) {
    std::vector<int> word;
    bool moved = true;
    while (moved) {
        moved = false;
        for (size_t i = 0; i + 1 < p.size(); ++i) {
            if (p[i] > p[i + 1]) {
                std::swap(p[i], p[i + 1]);
                word.push_back((int)i);
                moved = true;
            }
        }
    }
    return word;
}

inline std::vector<Perm> all_permutations(int n) {
    std::vector<Perm> out;
    Perm p = perm_identity(n);
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// The permutation moving slot i to slot sigma(i) such that word[i] lands at
// sorted position: stable sort, so equal letters keep their relative order.
template <typename T>
Perm sorting_permutation(const std::vector<T>& word) {
    std::vector<int> order(word.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return word[a] < word[b]; });
    // order[k] = original slot landing at position k; sigma = inverse.
    Perm sigma(word.size());
    for (size_t k = 0; k < order.size(); ++k) sigma[order[k]] = (int)k;
    return sigma;
}

// Koszul sign of moving graded items to new slots: item i (degree degs[i])
// goes to slot sigma(i); each crossing of two odd items contributes -1.
inline int koszul_sign(const Perm& sigma, const std::vector<int>& degs) {
    int sign = 1;
    for (size_t i = 0; i < sigma.size(); ++i)
        for (size_t j = i + 1; j < sigma.size(); ++j)
            if (sigma[i] > sigma[j] && (degs[i] & 1) && (degs[j] & 1)) sign = -sign;
    return sign;
}

}  // namespace opcalc
