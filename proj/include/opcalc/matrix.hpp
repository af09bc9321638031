#pragma once

#include <cassert>
#include <utility>
#include <vector>

#include "opcalc/rational.hpp"

namespace opcalc {

// Exact rational matrix with sparse rows. Group actions on the larger basis
// spaces in this project are signed-permutation-like, so row sparsity is the
// difference between milliseconds and hours; elimination routines tolerate
// fill-in since the spaces they see are small.
class Matrix {
public:
    using Entry = std::pair<int, Scalar>;  // (column, value), sorted by column
    using Row = std::vector<Entry>;

    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {
        assert(rows >= 0 && cols >= 0);
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.data_[i].push_back({i, Scalar(1)});
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Row& row(int i) const { return data_[i]; }

    Scalar get(int i, int j) const {
        for (const auto& [c, v] : data_[i])
            if (c == j) return v;
        return Scalar(0);
    }

    void set(int i, int j, const Scalar& v) {
        assert(0 <= i && i < rows_ && 0 <= j && j < cols_);
        Row& r = data_[i];
        auto it = r.begin();
        while (it != r.end() && it->first < j) ++it;
        if (it != r.end() && it->first == j) {
            if (v == 0) r.erase(it);
            else it->second = v;
        } else if (v != 0) {
            r.insert(it, {j, v});
        }
    }

    void add_to(int i, int j, const Scalar& v) {
        if (v == 0) return;
        Row& r = data_[i];
        auto it = r.begin();
        while (it != r.end() && it->first < j) ++it;
        if (it != r.end() && it->first == j) {
            it->second += v;
            if (it->second == 0) r.erase(it);
        } else {
            r.insert(it, {j, v});
        }
    }

    bool is_zero() const {
        for (const auto& r : data_)
            if (!r.empty()) return false;
        return true;
    }

    long long nonzeros() const {
        long long n = 0;
        for (const auto& r : data_) n += (long long)r.size();
        return n;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    Matrix operator*(const Matrix& other) const {
        assert(cols_ == other.rows_);
        Matrix out(rows_, other.cols_);
        std::vector<Scalar> acc(other.cols_, Scalar(0));
        std::vector<int> touched;
        for (int i = 0; i < rows_; ++i) {
            touched.clear();
            for (const auto& [k, a] : data_[i]) {
                for (const auto& [j, b] : other.data_[k]) {
                    if (acc[j] == 0) touched.push_back(j);
                    acc[j] += a * b;
                }
            }
            Row& r = out.data_[i];
            std::sort(touched.begin(), touched.end());
            for (int j : touched) {
                if (acc[j] != 0) r.push_back({j, acc[j]});
                acc[j] = 0;
            }
        }
        return out;
    }

    Matrix operator+(const Matrix& other) const { return combined(other, Scalar(1)); }
    Matrix operator-(const Matrix& other) const { return combined(other, Scalar(-1)); }

    Matrix scaled(const Scalar& c) const {
        Matrix out(rows_, cols_);
        if (c == 0) return out;
        for (int i = 0; i < rows_; ++i) {
            out.data_[i] = data_[i];
            for (auto& [j, v] : out.data_[i]) v *= c;
        }
        return out;
    }

    Matrix transposed() const {
        Matrix out(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (const auto& [j, v] : data_[i]) out.data_[j].push_back({i, v});
        return out;
    }

    // out = [this; other] stacked vertically (same cols).
    Matrix stacked(const Matrix& other) const {
        assert(cols_ == other.cols_);
        Matrix out(rows_ + other.rows_, cols_);
        for (int i = 0; i < rows_; ++i) out.data_[i] = data_[i];
        for (int i = 0; i < other.rows_; ++i) out.data_[rows_ + i] = other.data_[i];
        return out;
    }

    // out = [this | other] side by side (same rows).
    Matrix beside(const Matrix& other) const {
        assert(rows_ == other.rows_);
        Matrix out(rows_, cols_ + other.cols_);
        for (int i = 0; i < rows_; ++i) {
            out.data_[i] = data_[i];
            for (const auto& [j, v] : other.data_[i]) out.data_[i].push_back({j + cols_, v});
        }
        return out;
    }

    Matrix columns(const std::vector<int>& which) const {
        std::vector<int> pos(cols_, -1);
        for (int t = 0; t < (int)which.size(); ++t) pos[which[t]] = t;
        Matrix out(rows_, (int)which.size());
        for (int i = 0; i < rows_; ++i) {
            for (const auto& [j, v] : data_[i])
                if (pos[j] >= 0) out.data_[i].push_back({pos[j], v});
            std::sort(out.data_[i].begin(), out.data_[i].end(),
                      [](const Entry& a, const Entry& b) { return a.first < b.first; });
        }
        return out;
    }

    std::vector<Scalar> apply(const std::vector<Scalar>& x) const {
        assert((int)x.size() == cols_);
        std::vector<Scalar> y(rows_, Scalar(0));
        for (int i = 0; i < rows_; ++i)
            for (const auto& [j, v] : data_[i]) y[i] += v * x[j];
        return y;
    }

    static Matrix from_rows(int cols, const std::vector<std::vector<Scalar>>& dense) {
        Matrix out((int)dense.size(), cols);
        for (int i = 0; i < (int)dense.size(); ++i)
            for (int j = 0; j < cols; ++j)
                if (dense[i][j] != 0) out.data_[i].push_back({j, dense[i][j]});
        return out;
    }

private:
    Matrix combined(const Matrix& other, const Scalar& factor) const {
        assert(rows_ == other.rows_ && cols_ == other.cols_);
        Matrix out(rows_, cols_);
        for (int i = 0; i < rows_; ++i) {
            const Row& a = data_[i];
            const Row& b = other.data_[i];
            Row& r = out.data_[i];
            size_t p = 0, q = 0;
            while (p < a.size() || q < b.size()) {
                if (q == b.size() || (p < a.size() && a[p].first < b[q].first)) {
                    r.push_back(a[p++]);
                } else if (p == a.size() || b[q].first < a[p].first) {
                    r.push_back({b[q].first, factor * b[q].second});
                    ++q;
                } else {
                    Scalar v = a[p].second + factor * b[q].second;
                    if (v != 0) r.push_back({a[p].first, v});
                    ++p;
                    ++q;
                }
            }
        }
        return out;
    }

    int rows_, cols_;
    std::vector<Row> data_;
};

// Reduced row echelon form with pivot bookkeeping.
struct Echelon {
    std::vector<Matrix::Row> rows;  // normalized, fully back-substituted
    std::vector<int> pivot_cols;    // strictly increasing
    int cols = 0;

    int rank() const { return (int)pivot_cols.size(); }
};

Echelon row_reduce(const Matrix& m);

int rank(const Matrix& m);

// Columns spanning the kernel of m (deterministic: free columns left to right).
Matrix kernel_basis(const Matrix& m);

// Pivot columns of m, i.e. the leftmost independent column set.
std::vector<int> pivot_columns(const Matrix& m);

// Solves m * x = rhs exactly; empty result if inconsistent. Free variables
// are set to zero, so the solution is deterministic.
std::optional<Matrix> solve(const Matrix& m, const Matrix& rhs);

std::optional<Matrix> inverse(const Matrix& m);

// Rank over Z after clearing denominators, via fraction-free (Bareiss-style)
// elimination on integers. Independent route used as a cross-check oracle.
int integer_rank(const Matrix& m);

}  // namespace opcalc
