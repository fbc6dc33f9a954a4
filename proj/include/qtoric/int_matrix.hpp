#pragma once

// Exact integer linear algebra: determinants by fraction-free elimination,
// Hermite and Smith normal forms with unimodular transforms, lattice
// membership and rational rank. Everything here returns enough data for the
// caller to re-verify the result by plain multiplication.

#include "qtoric/bigint.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

namespace qtoric {

struct IntMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Int> a;  // row-major

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rws) {
        if (rws.empty()) return IntMatrix();
        IntMatrix m(rws.size(), rws.front().size());
        for (std::size_t i = 0; i < rws.size(); ++i) {
            if (rws[i].size() != m.cols) throw InvalidInput("ragged row list");
            for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rws[i][j];
        }
        return m;
    }

    Int& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    std::vector<Int> row(std::size_t i) const {
        return std::vector<Int>(a.begin() + i * cols, a.begin() + (i + 1) * cols);
    }
    std::vector<Int> col(std::size_t j) const {
        std::vector<Int> c(rows);
        for (std::size_t i = 0; i < rows; ++i) c[i] = at(i, j);
        return c;
    }

    void swap_rows(std::size_t i, std::size_t k) {
        if (i == k) return;
        for (std::size_t j = 0; j < cols; ++j) std::swap(at(i, j), at(k, j));
    }
    void swap_cols(std::size_t j, std::size_t k) {
        if (j == k) return;
        for (std::size_t i = 0; i < rows; ++i) std::swap(at(i, j), at(i, k));
    }
    /// row i -= q * row k
    void add_row(std::size_t i, std::size_t k, const Int& q) {
        if (q == 0) return;
        for (std::size_t j = 0; j < cols; ++j) at(i, j) -= q * at(k, j);
    }
    /// col j -= q * col k
    void add_col(std::size_t j, std::size_t k, const Int& q) {
        if (q == 0) return;
        for (std::size_t i = 0; i < rows; ++i) at(i, j) -= q * at(i, k);
    }
    void negate_row(std::size_t i) {
        for (std::size_t j = 0; j < cols; ++j) at(i, j) = -at(i, j);
    }
    void negate_col(std::size_t j) {
        for (std::size_t i = 0; i < rows; ++i) at(i, j) = -at(i, j);
    }

    bool operator==(const IntMatrix& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
};

inline IntMatrix mul(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols != y.rows) throw InvalidInput("matrix product shape mismatch");
    IntMatrix z(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const Int& xik = x.at(i, k);
            if (xik == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) z.at(i, j) += xik * y.at(k, j);
        }
    return z;
}

inline IntMatrix transpose(const IntMatrix& m) {
    IntMatrix t(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
    return t;
}

inline std::vector<Int> mul_vec(const IntMatrix& m, const std::vector<Int>& v) {
    if (m.cols != v.size()) throw InvalidInput("matrix-vector shape mismatch");
    std::vector<Int> r(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) r[i] += m.at(i, j) * v[j];
    return r;
}

/// Exact determinant by Bareiss (fraction-free) elimination.
inline Int det(const IntMatrix& m) {
    if (m.rows != m.cols) throw InvalidInput("det of non-square matrix");
    const std::size_t n = m.rows;
    if (n == 0) return 1;
    IntMatrix w = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (w.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && w.at(p, k) == 0) ++p;
            if (p == n) return 0;
            w.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
                w.at(i, j) = t / prev;  // exact by Bareiss
            }
        prev = w.at(k, k);
    }
    return sign > 0 ? w.at(n - 1, n - 1) : Int(-w.at(n - 1, n - 1));
}

/// Rank over the rationals, by fraction-free elimination with full pivoting.
inline std::size_t rational_rank(const IntMatrix& m) {
    IntMatrix w = m;
    std::size_t rank = 0;
    Int prev = 1;
    while (true) {
        // find any nonzero pivot in the remaining submatrix
        std::size_t pi = w.rows, pj = w.cols;
        for (std::size_t i = rank; i < w.rows && pi == w.rows; ++i)
            for (std::size_t j = rank; j < w.cols; ++j)
                if (w.at(i, j) != 0) { pi = i; pj = j; break; }
        if (pi == w.rows) break;
        w.swap_rows(rank, pi);
        w.swap_cols(rank, pj);
        for (std::size_t i = rank + 1; i < w.rows; ++i)
            for (std::size_t j = rank + 1; j < w.cols; ++j)
                w.at(i, j) = (w.at(i, j) * w.at(rank, rank) - w.at(i, rank) * w.at(rank, j)) / prev;
        prev = w.at(rank, rank);
        ++rank;
        if (rank == w.rows || rank == w.cols) break;
    }
    return rank;
}

/// Adjugate (transposed cofactor matrix), so that A * adj(A) = det(A) * I.
inline IntMatrix adjugate(const IntMatrix& m) {
    if (m.rows != m.cols) throw InvalidInput("adjugate of non-square matrix");
    const std::size_t n = m.rows;
    IntMatrix adj(n, n);
    if (n == 0) return adj;
    if (n == 1) {
        adj.at(0, 0) = 1;
        return adj;
    }
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t r = 0, mr = 0; r < n; ++r) {
                if (r == i) continue;
                for (std::size_t c = 0, mc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor.at(mr, mc) = m.at(r, c);
                    ++mc;
                }
                ++mr;
            }
            Int cof = det(minor);
            if ((i + j) % 2 == 1) cof = -cof;
            adj.at(j, i) = cof;  // transpose
        }
    return adj;
}

/// Row-style Hermite normal form: h = u * m with u unimodular, h in row
/// echelon form with positive pivots and entries above each pivot reduced
/// into [0, pivot).
struct HermiteForm {
    IntMatrix h;
    IntMatrix u;
    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
};

inline HermiteForm hermite_normal_form(const IntMatrix& m) {
    HermiteForm f;
    f.h = m;
    f.u = IntMatrix::identity(m.rows);
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        // Euclid on column c among rows >= r
        while (true) {
            std::size_t best = m.rows;
            for (std::size_t i = r; i < m.rows; ++i)
                if (f.h.at(i, c) != 0 &&
                    (best == m.rows || abs_int(f.h.at(i, c)) < abs_int(f.h.at(best, c))))
                    best = i;
            if (best == m.rows) break;  // column clear
            f.h.swap_rows(r, best);
            f.u.swap_rows(r, best);
            bool done = true;
            for (std::size_t i = r + 1; i < m.rows; ++i) {
                if (f.h.at(i, c) == 0) continue;
                Int q = fdiv(f.h.at(i, c), f.h.at(r, c));
                f.h.add_row(i, r, q);
                f.u.add_row(i, r, q);
                if (f.h.at(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (f.h.at(r, c) == 0) continue;
        if (f.h.at(r, c) < 0) {
            f.h.negate_row(r);
            f.u.negate_row(r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Int q = fdiv(f.h.at(i, c), f.h.at(r, c));
            f.h.add_row(i, r, q);
            f.u.add_row(i, r, q);
        }
        f.pivots.emplace_back(r, c);
        ++r;
    }
    return f;
}

/// Smith normal form: u * m * v = diag(d_1, ..., d_k) with u, v unimodular
/// and d_i | d_{i+1}, d_i >= 0.
struct SmithForm {
    std::vector<Int> diag;  // length min(rows, cols)
    IntMatrix u;            // rows x rows
    IntMatrix v;            // cols x cols
    IntMatrix d;            // rows x cols diagonal matrix

    std::size_t rank() const {
        std::size_t r = 0;
        for (const Int& x : diag)
            if (x != 0) ++r;
        return r;
    }
    std::vector<Int> torsion() const {
        std::vector<Int> t;
        for (const Int& x : diag)
            if (x > 1) t.push_back(x);
        return t;
    }
};

inline SmithForm smith_normal_form(const IntMatrix& m) {
    SmithForm f;
    f.d = m;
    f.u = IntMatrix::identity(m.rows);
    f.v = IntMatrix::identity(m.cols);
    IntMatrix& w = f.d;
    const std::size_t k = std::min(m.rows, m.cols);
    for (std::size_t t = 0; t < k; ++t) {
        // locate a minimal-magnitude nonzero entry in the trailing block
        std::size_t pi = m.rows, pj = m.cols;
        for (std::size_t i = t; i < m.rows; ++i)
            for (std::size_t j = t; j < m.cols; ++j)
                if (w.at(i, j) != 0 &&
                    (pi == m.rows || abs_int(w.at(i, j)) < abs_int(w.at(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi == m.rows) break;  // trailing block is zero
        w.swap_rows(t, pi);
        f.u.swap_rows(t, pi);
        w.swap_cols(t, pj);
        f.v.swap_cols(t, pj);

        while (true) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m.rows; ++i) {
                if (w.at(i, t) == 0) continue;
                Int q = fdiv(w.at(i, t), w.at(t, t));
                w.add_row(i, t, q);
                f.u.add_row(i, t, q);
                if (w.at(i, t) != 0) {  // remainder becomes the smaller pivot
                    w.swap_rows(t, i);
                    f.u.swap_rows(t, i);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < m.cols; ++j) {
                if (w.at(t, j) == 0) continue;
                Int q = fdiv(w.at(t, j), w.at(t, t));
                w.add_col(j, t, q);
                f.v.add_col(j, t, q);
                if (w.at(t, j) != 0) {
                    w.swap_cols(t, j);
                    f.v.swap_cols(t, j);
                    clean = false;
                }
            }
            if (!clean) continue;
            // pivot must divide every entry of the trailing block
            std::size_t bi = m.rows, bj = m.cols;
            for (std::size_t i = t + 1; i < m.rows && bi == m.rows; ++i)
                for (std::size_t j = t + 1; j < m.cols; ++j)
                    if (w.at(i, j) % w.at(t, t) != 0) { bi = i; bj = j; break; }
            if (bi == m.rows) break;
            w.add_row(t, bi, Int(-1));  // row t += row bi, then restart cleanup
            f.u.add_row(t, bi, Int(-1));
            (void)bj;
        }
        if (w.at(t, t) < 0) {
            w.negate_row(t);
            f.u.negate_row(t);
        }
    }
    f.diag.resize(k);
    for (std::size_t t = 0; t < k; ++t) f.diag[t] = w.at(t, t);
    return f;
}

/// Does v lie in the lattice spanned by the rows of `basis`?
inline bool lattice_member(const std::vector<Int>& v, const IntMatrix& basis) {
    if (basis.rows == 0) return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
    if (v.size() != basis.cols) throw InvalidInput("lattice_member dimension mismatch");
    HermiteForm f = hermite_normal_form(basis);
    std::vector<Int> r = v;
    for (auto [row, col] : f.pivots) {
        if (r[col] % f.h.at(row, col) != 0) return false;
        Int q = r[col] / f.h.at(row, col);
        for (std::size_t j = 0; j < basis.cols; ++j) r[j] -= q * f.h.at(row, j);
    }
    return std::all_of(r.begin(), r.end(), [](const Int& x) { return x == 0; });
}

/// Solve x * basis = v over the integers; returns the coefficient vector
/// over the original rows, or nullopt if v is not in the row lattice.
inline std::optional<std::vector<Int>> lattice_solve(const std::vector<Int>& v,
                                                     const IntMatrix& basis) {
    if (basis.rows == 0) {
        bool zero = std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
        if (!zero) return std::nullopt;
        return std::vector<Int>{};
    }
    if (v.size() != basis.cols) throw InvalidInput("lattice_solve dimension mismatch");
    HermiteForm f = hermite_normal_form(basis);
    std::vector<Int> r = v;
    std::vector<Int> y(basis.rows);  // coefficients over rows of h
    for (auto [row, col] : f.pivots) {
        if (r[col] % f.h.at(row, col) != 0) return std::nullopt;
        Int q = r[col] / f.h.at(row, col);
        y[row] = q;
        for (std::size_t j = 0; j < basis.cols; ++j) r[j] -= q * f.h.at(row, j);
    }
    if (!std::all_of(r.begin(), r.end(), [](const Int& x) { return x == 0; }))
        return std::nullopt;
    // y * h = v and h = u * basis, so (y * u) * basis = v
    std::vector<Int> x(basis.rows);
    for (std::size_t j = 0; j < basis.rows; ++j)
        for (std::size_t i = 0; i < basis.rows; ++i) x[j] += y[i] * f.u.at(i, j);
    return x;
}

/// The m x m submatrix of an n x m block-column matrix whose j-th row is row
/// N_{j-1} + k_j (1-based k_j within block j). `prefix` holds N_0..N_m.
inline IntMatrix principal_submatrix(const IntMatrix& a, const std::vector<int>& prefix,
                                     const std::vector<int>& ks) {
    const std::size_t m = prefix.size() - 1;
    if (a.cols != m || ks.size() != m) throw InvalidInput("principal_submatrix shape mismatch");
    IntMatrix s(m, m);
    for (std::size_t j = 0; j < m; ++j) {
        int nj = prefix[j + 1] - prefix[j];
        if (ks[j] < 1 || ks[j] > nj) throw InvalidInput("principal_submatrix index out of range");
        std::size_t r = static_cast<std::size_t>(prefix[j] + ks[j] - 1);
        for (std::size_t c = 0; c < m; ++c) s.at(j, c) = a.at(r, c);
    }
    return s;
}

}  // namespace qtoric
