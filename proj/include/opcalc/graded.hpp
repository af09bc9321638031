#pragma once

#include <map>
#include <string>
#include <vector>

#include "opcalc/matrix.hpp"

namespace opcalc {

// Finite-dimensional integer-graded vector space. Only finitely many degrees
// are nonzero; dims[d] == 0 entries are never stored.
struct GradedVectorSpace {
    std::map<int, int> dims;
    std::map<int, std::vector<std::string>> labels;  // optional, per degree

    GradedVectorSpace() = default;

    static GradedVectorSpace point(int degree, int dim = 1) {
        GradedVectorSpace v;
        if (dim > 0) v.dims[degree] = dim;
        return v;
    }

    static GradedVectorSpace unit() { return point(0, 1); }

    int dim(int degree) const {
        auto it = dims.find(degree);
        return it == dims.end() ? 0 : it->second;
    }

    int total_dim() const {
        int n = 0;
        for (const auto& [d, k] : dims) n += k;
        return n;
    }

    bool is_zero() const { return dims.empty(); }

    void set_dim(int degree, int dim) {
        if (dim > 0) dims[degree] = dim;
        else dims.erase(degree);
    }

    GradedVectorSpace direct_sum(const GradedVectorSpace& other) const {
        GradedVectorSpace out = *this;
        out.labels.clear();
        for (const auto& [d, k] : other.dims) out.dims[d] += k;
        return out;
    }

    friend bool operator==(const GradedVectorSpace& a, const GradedVectorSpace& b) {
        return a.dims == b.dims;
    }
};

// Degreewise linear map; absent block means zero.
struct GradedLinearMap {
    GradedVectorSpace source, target;
    std::map<int, Matrix> blocks;

    GradedLinearMap() = default;
    GradedLinearMap(GradedVectorSpace src, GradedVectorSpace tgt)
        : source(std::move(src)), target(std::move(tgt)) {}

    static GradedLinearMap zero(const GradedVectorSpace& src, const GradedVectorSpace& tgt) {
        return GradedLinearMap(src, tgt);
    }

    static GradedLinearMap identity(const GradedVectorSpace& v) {
        GradedLinearMap f(v, v);
        for (const auto& [d, k] : v.dims) f.blocks[d] = Matrix::identity(k);
        return f;
    }

    // The stored block, or an explicit zero block of the right shape.
    Matrix block(int degree) const {
        auto it = blocks.find(degree);
        if (it != blocks.end()) return it->second;
        return Matrix(target.dim(degree), source.dim(degree));
    }

    void set_block(int degree, Matrix m) {
        assert(m.rows() == target.dim(degree) && m.cols() == source.dim(degree));
        if (m.is_zero()) blocks.erase(degree);
        else blocks[degree] = std::move(m);
    }

    bool well_formed() const {
        for (const auto& [d, m] : blocks)
            if (m.rows() != target.dim(d) || m.cols() != source.dim(d)) return false;
        return true;
    }

    bool is_zero() const {
        for (const auto& [d, m] : blocks)
            if (!m.is_zero()) return false;
        return true;
    }

    bool is_identity() const {
        if (!(source == target)) return false;
        for (const auto& [d, k] : source.dims)
            if (!(block(d) == Matrix::identity(k))) return false;
        return true;
    }

    GradedLinearMap compose(const GradedLinearMap& inner) const {
        assert(inner.target == source);
        GradedLinearMap out(inner.source, target);
        for (const auto& [d, m] : inner.blocks) {
            auto it = blocks.find(d);
            if (it == blocks.end()) continue;
            Matrix prod = it->second * m;
            if (!prod.is_zero()) out.blocks[d] = std::move(prod);
        }
        return out;
    }

    GradedLinearMap operator+(const GradedLinearMap& other) const {
        assert(source == other.source && target == other.target);
        GradedLinearMap out(source, target);
        for (const auto& [d, k] : target.dims) {
            if (source.dim(d) == 0) continue;
            Matrix sum = block(d) + other.block(d);
            if (!sum.is_zero()) out.blocks[d] = std::move(sum);
        }
        return out;
    }

    GradedLinearMap operator-(const GradedLinearMap& other) const {
        return *this + other.scaled(Scalar(-1));
    }

    GradedLinearMap scaled(const Scalar& c) const {
        GradedLinearMap out(source, target);
        if (c == 0) return out;
        for (const auto& [d, m] : blocks) out.blocks[d] = m.scaled(c);
        return out;
    }

    friend bool operator==(const GradedLinearMap& a, const GradedLinearMap& b) {
        if (!(a.source == b.source) || !(a.target == b.target)) return false;
        for (const auto& [d, k] : a.target.dims) {
            if (!(a.block(d) == b.block(d))) return false;
        }
        return true;
    }

    bool is_isomorphism() const {
        if (!(source.dims == target.dims)) return false;
        for (const auto& [d, k] : source.dims)
            if (rank(block(d)) != k) return false;
        return true;
    }
};

}  // namespace opcalc
