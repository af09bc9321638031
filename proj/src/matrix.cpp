#include "opcalc/matrix.hpp"

#include <algorithm>
#include <map>

namespace opcalc {

namespace {

// r -= c * p where p is a normalized pivot row.
Matrix::Row axpy(const Matrix::Row& r, const Scalar& c, const Matrix::Row& p) {
    Matrix::Row out;
    out.reserve(r.size() + p.size());
    size_t i = 0, j = 0;
    while (i < r.size() || j < p.size()) {
        if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
            out.push_back(r[i++]);
        } else if (i == r.size() || p[j].first < r[i].first) {
            out.push_back({p[j].first, -c * p[j].second});
            ++j;
        } else {
            Scalar v = r[i].second - c * p[j].second;
            if (v != 0) out.push_back({r[i].first, v});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

Echelon row_reduce(const Matrix& m) {
    Echelon ech;
    ech.cols = m.cols();
    std::map<int, Matrix::Row> pivots;  // pivot col -> normalized row
    for (int i = 0; i < m.rows(); ++i) {
        Matrix::Row r = m.row(i);
        while (!r.empty()) {
            auto it = pivots.find(r.front().first);
            if (it == pivots.end()) break;
            r = axpy(r, r.front().second, it->second);
        }
        if (r.empty()) continue;
        Scalar lead = r.front().second;
        for (auto& [c, v] : r) v /= lead;
        pivots[r.front().first] = std::move(r);
    }
    // Back-substitute for the reduced form.
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
        Matrix::Row& r = it->second;
        bool again = true;
        while (again) {
            again = false;
            for (size_t k = 1; k < r.size(); ++k) {
                auto jt = pivots.find(r[k].first);
                if (jt != pivots.end() && jt->first != it->first) {
                    r = axpy(r, r[k].second, jt->second);
                    again = true;
                    break;
                }
            }
        }
    }
    for (auto& [c, r] : pivots) {
        ech.pivot_cols.push_back(c);
        ech.rows.push_back(std::move(r));
    }
    return ech;
}

int rank(const Matrix& m) { return row_reduce(m).rank(); }

Matrix kernel_basis(const Matrix& m) {
    Echelon ech = row_reduce(m);
    std::vector<int> is_pivot(m.cols(), -1);
    for (int t = 0; t < ech.rank(); ++t) is_pivot[ech.pivot_cols[t]] = t;
    std::vector<int> free_cols;
    for (int j = 0; j < m.cols(); ++j)
        if (is_pivot[j] < 0) free_cols.push_back(j);
    Matrix out(m.cols(), (int)free_cols.size());
    for (int t = 0; t < (int)free_cols.size(); ++t) {
        out.set(free_cols[t], t, Scalar(1));
        for (int p = 0; p < ech.rank(); ++p) {
            for (const auto& [c, v] : ech.rows[p]) {
                if (c == free_cols[t]) out.set(ech.pivot_cols[p], t, -v);
            }
        }
    }
    return out;
}

std::vector<int> pivot_columns(const Matrix& m) { return row_reduce(m).pivot_cols; }

std::optional<Matrix> solve(const Matrix& m, const Matrix& rhs) {
    assert(m.rows() == rhs.rows());
    Echelon ech = row_reduce(m.beside(rhs));
    Matrix x(m.cols(), rhs.cols());
    for (int p = 0; p < ech.rank(); ++p) {
        int pc = ech.pivot_cols[p];
        if (pc >= m.cols()) return std::nullopt;  // pivot in the rhs block: inconsistent
        for (const auto& [c, v] : ech.rows[p]) {
            if (c >= m.cols()) x.set(pc, c - m.cols(), v);
        }
        // Any free-column entry in this row stays zero in the solution.
    }
    return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    auto x = solve(m, Matrix::identity(m.rows()));
    if (!x) return std::nullopt;
    if (!((m * *x) == Matrix::identity(m.rows()))) return std::nullopt;
    return x;
}

int integer_rank(const Matrix& m) {
    // Clear denominators row by row, then fraction-free elimination.
    std::vector<std::vector<mpz_class>> a(m.rows(), std::vector<mpz_class>(m.cols(), 0));
    for (int i = 0; i < m.rows(); ++i) {
        mpz_class lcm = 1;
        for (const auto& [j, v] : m.row(i)) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den().get_mpz_t());
        for (const auto& [j, v] : m.row(i)) a[i][j] = v.get_num() * (lcm / v.get_den());
    }
    int r = 0;
    mpz_class prev = 1;
    for (int col = 0; col < m.cols() && r < m.rows(); ++col) {
        int piv = -1;
        for (int i = r; i < m.rows(); ++i)
            if (a[i][col] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(a[r], a[piv]);
        for (int i = r + 1; i < m.rows(); ++i) {
            for (int j = col + 1; j < m.cols(); ++j)
                a[i][j] = (a[r][col] * a[i][j] - a[i][col] * a[r][j]) / prev;
            a[i][col] = 0;
        }
        prev = a[r][col];
        ++r;
    }
    return r;
}

}  // namespace opcalc
