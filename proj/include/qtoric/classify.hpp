#pragma once

// Normal-form classification of the corner matrix under factor
// permutations, determination and verification of the cut-facet vector b,
// and bounded enumeration of valid characteristic pairs on a vertex cut.

#include "qtoric/charpair.hpp"
#include "qtoric/int_matrix.hpp"
#include "qtoric/polytope.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace qtoric {

enum class MatrixForm { UpperTriangular, Cyclic };

/// Block-column data after a simultaneous permutation of the simplex
/// factors (rows are permuted blockwise, columns follow the factors).
struct PermutedColumns {
    std::vector<int> sigma;  // 1-based: new factor k is old factor sigma[k-1]
    std::vector<int> dims;
    std::vector<int> prefix;
    IntMatrix a;             // n x m in the permuted frame
    std::vector<Int> b;      // empty if absent
};

inline PermutedColumns apply_factor_permutation(const std::vector<int>& dims, const IntMatrix& a,
                                                const std::vector<Int>& b,
                                                const std::vector<int>& sigma) {
    const int m = static_cast<int>(dims.size());
    PermutedColumns out;
    out.sigma = sigma;
    out.dims.resize(m);
    for (int k = 1; k <= m; ++k) out.dims[k - 1] = dims[sigma[k - 1] - 1];
    out.prefix.assign(m + 1, 0);
    for (int k = 1; k <= m; ++k) out.prefix[k] = out.prefix[k - 1] + out.dims[k - 1];
    std::vector<int> old_prefix(m + 1, 0);
    for (int j = 1; j <= m; ++j) old_prefix[j] = old_prefix[j - 1] + dims[j - 1];
    const int n = old_prefix[m];
    // position map: new N'_{k-1}+i  <-  old N_{sigma(k)-1}+i
    std::vector<int> new_of_old(n);
    for (int k = 1; k <= m; ++k)
        for (int i = 1; i <= out.dims[k - 1]; ++i)
            new_of_old[old_prefix[sigma[k - 1] - 1] + i - 1] = out.prefix[k - 1] + i - 1;
    out.a = IntMatrix(n, m);
    for (int k = 1; k <= m; ++k)
        for (int p = 0; p < n; ++p)
            out.a.at(new_of_old[p], k - 1) = a.at(p, sigma[k - 1] - 1);
    if (!b.empty()) {
        out.b.resize(n);
        for (int p = 0; p < n; ++p) out.b[new_of_old[p]] = b[p];
    }
    return out;
}

namespace detail {

inline bool matches_upper_triangular(const PermutedColumns& pc, const Int& diag) {
    const int m = static_cast<int>(pc.dims.size());
    for (int j = 1; j <= m; ++j)
        for (int p = 0; p < static_cast<int>(pc.a.rows); ++p) {
            const Int& x = pc.a.at(p, j - 1);
            if (p >= pc.prefix[j - 1] && p < pc.prefix[j]) {
                if (x != diag) return false;  // own block
            } else if (p >= pc.prefix[j]) {
                if (x != 0) return false;  // below the diagonal block
            }
        }
    return true;
}

/// Block-level cyclic pattern: own block `diag` everywhere; column j >= 2
/// is otherwise supported inside block j-1 only (column 1 inside block m),
/// that block is nonzero, and all its nonzero entries are equal. Returns
/// the common values in the order (col 2, ..., col m, col 1).
inline std::optional<std::vector<Int>> matches_cyclic_block(const PermutedColumns& pc,
                                                            const Int& diag) {
    const int m = static_cast<int>(pc.dims.size());
    if (m < 2) return std::nullopt;
    const int n = static_cast<int>(pc.a.rows);
    std::vector<Int> values;
    for (int j = 1; j <= m; ++j) {
        int blk = (j == 1) ? m : j - 1;  // allowed off-diagonal block
        Int value = 0;
        for (int p = 0; p < n; ++p) {
            const Int& x = pc.a.at(p, j - 1);
            if (p >= pc.prefix[j - 1] && p < pc.prefix[j]) {
                if (x != diag) return std::nullopt;
            } else if (p >= pc.prefix[blk - 1] && p < pc.prefix[blk]) {
                if (x == 0) continue;
                if (value == 0)
                    value = x;
                else if (x != value)
                    return std::nullopt;
            } else if (x != 0) {
                return std::nullopt;
            }
        }
        if (value == 0) return std::nullopt;  // the block must be nonzero
        values.push_back(value);
    }
    // reorder to (col 2, ..., col m, col 1)
    std::vector<Int> out(values.begin() + 1, values.end());
    out.push_back(values.front());
    return out;
}

/// Coordinate-level cyclic pattern: own block `diag` everywhere; column
/// j >= 2 has its only other support at position N'_{j-1}, column 1 at
/// N'_m, and those entries are nonzero. Returns the scalars in the order
/// (col 2 at N'_1, ..., col m at N'_{m-1}, col 1 at N'_m).
inline std::optional<std::vector<Int>> matches_cyclic(const PermutedColumns& pc, const Int& diag) {
    const int m = static_cast<int>(pc.dims.size());
    if (m < 2) return std::nullopt;
    const int n = static_cast<int>(pc.a.rows);
    std::vector<Int> scalars;
    for (int j = 1; j <= m; ++j) {
        int extra = (j == 1) ? pc.prefix[m] - 1 : pc.prefix[j - 1] - 1;  // 0-based row
        for (int p = 0; p < n; ++p) {
            const Int& x = pc.a.at(p, j - 1);
            if (p >= pc.prefix[j - 1] && p < pc.prefix[j]) {
                if (x != diag) return std::nullopt;
            } else if (p == extra) {
                if (x == 0) return std::nullopt;
            } else if (x != 0) {
                return std::nullopt;
            }
        }
    }
    for (int j = 2; j <= m; ++j) scalars.push_back(pc.a.at(pc.prefix[j - 1] - 1, j - 1));
    scalars.push_back(pc.a.at(pc.prefix[m] - 1, 0));
    return scalars;
}

inline std::vector<std::vector<int>> all_permutations(int m) {
    std::vector<int> s(m);
    std::iota(s.begin(), s.end(), 1);
    std::vector<std::vector<int>> out;
    do out.push_back(s);
    while (std::next_permutation(s.begin(), s.end()));
    return out;
}

}  // namespace detail

struct ClassificationResult {
    MatrixForm form;
    Int det;                          // determinant of the corner matrix
    std::vector<int> sigma;           // certifying factor permutation
    std::vector<Int> cyclic_scalars;  // permuted-frame scalars (Cyclic only)
};

/// Normal form of a vector matrix all of whose proper principal minors are
/// 1 (verified first): unipotent upper triangular after some factor
/// permutation, or the cyclic form with the product of the repeated block
/// values equal to (-1)^m * 2 and every value in {+-1, +-2}.
inline ClassificationResult classify_minor_one_matrix(const std::vector<int>& dims,
                                                      const IntMatrix& b) {
    const int m = static_cast<int>(dims.size());
    std::vector<int> prefix(m + 1, 0);
    for (int j = 1; j <= m; ++j) prefix[j] = prefix[j - 1] + dims[j - 1];
    if (static_cast<int>(b.rows) != prefix[m] || static_cast<int>(b.cols) != m)
        throw InvalidInput("vector matrix must be n x m");

    // precondition: every proper principal minor equals 1
    std::vector<int> ks(m, 1);
    while (true) {
        IntMatrix sub = principal_submatrix(b, prefix, ks);
        for (unsigned mask = 1; mask + 1 < (1u << m); ++mask) {
            std::vector<int> idx;
            for (int j = 0; j < m; ++j)
                if (mask >> j & 1) idx.push_back(j);
            IntMatrix s(idx.size(), idx.size());
            for (std::size_t r = 0; r < idx.size(); ++r)
                for (std::size_t c = 0; c < idx.size(); ++c) s.at(r, c) = sub.at(idx[r], idx[c]);
            if (det(s) != 1) throw PreconditionError("a proper principal minor differs from 1");
        }
        int j = m - 1;
        while (j >= 0 && ks[j] == dims[j]) ks[j--] = 1;
        if (j < 0) break;
        ++ks[j];
    }

    for (const std::vector<int>& sigma : detail::all_permutations(m)) {
        PermutedColumns pc = apply_factor_permutation(dims, b, {}, sigma);
        if (detail::matches_upper_triangular(pc, Int(1)))
            return {MatrixForm::UpperTriangular, det(principal_submatrix(
                        b, prefix, std::vector<int>(dims.begin(), dims.end()))),
                    sigma, {}};
    }
    for (const std::vector<int>& sigma : detail::all_permutations(m)) {
        PermutedColumns pc = apply_factor_permutation(dims, b, {}, sigma);
        auto scalars = detail::matches_cyclic_block(pc, Int(1));
        if (!scalars) continue;
        // each cyclic value +-1 or +-2, product equal to (-1)^m * 2
        bool values_ok = true;
        Int prod = 1;
        for (const Int& value : *scalars) {
            if (abs_int(value) != 1 && abs_int(value) != 2) values_ok = false;
            prod *= value;
        }
        Int want = (m % 2 == 0) ? Int(2) : Int(-2);
        if (values_ok && prod == want) {
            std::vector<int> full(dims.begin(), dims.end());
            return {MatrixForm::Cyclic, det(principal_submatrix(b, prefix, full)), sigma,
                    *scalars};
        }
    }
    throw TheoremViolation(
        "vector matrix with unit proper principal minors matches neither the unipotent "
        "upper-triangular nor the cyclic normal form");
}

/// Classification of the corner matrix of a pair satisfying the alternating
/// determinant rule: det = (-1)^m gives the upper-triangular pattern, any
/// other determinant the cyclic pattern, in both cases after a factor
/// permutation and with -1 throughout the diagonal blocks.
inline ClassificationResult classify_cut_matrix(const CharPair& pair) {
    const Polytope& poly = pair.polytope();
    if (!poly.has_cut()) throw InvalidInput("classification needs a cut polytope");
    if (poly.m() < 2)
        throw PreconditionError("corner-matrix classification requires at least two factors");
    if (!det_hypothesis(pair).ok)
        throw PreconditionError("pair does not satisfy the alternating determinant rule");

    // own-block coordinates are all -1 (forced by the one-distant vertices)
    IntMatrix a = pair.matrix_a();
    for (int j = 1; j <= poly.m(); ++j)
        for (int p = poly.prefix()[j - 1]; p < poly.prefix()[j]; ++p)
            if (a.at(p, j - 1) != -1)
                throw TheoremViolation("diagonal block entry differs from -1");

    Int d = det(cut_vertex_minor(pair));
    Int target = (poly.m() % 2 == 0) ? Int(1) : Int(-1);

    if (d == target) {
        for (const std::vector<int>& sigma : detail::all_permutations(poly.m())) {
            PermutedColumns pc = apply_factor_permutation(poly.dims(), a, {}, sigma);
            if (detail::matches_upper_triangular(pc, Int(-1)))
                return {MatrixForm::UpperTriangular, d, sigma, {}};
        }
        throw TheoremViolation(
            "corner matrix with det (-1)^m matches no upper-triangular pattern");
    }
    for (const std::vector<int>& sigma : detail::all_permutations(poly.m())) {
        PermutedColumns pc = apply_factor_permutation(poly.dims(), a, {}, sigma);
        auto scalars = detail::matches_cyclic(pc, Int(-1));
        if (!scalars) continue;
        // determinant identity for the cyclic pattern:
        // det = (-1)^m + (-1)^{m-1} * product of the scalars
        Int prod = 1;
        for (const Int& s : *scalars) prod *= s;
        Int expect = (poly.m() % 2 == 0) ? Int(1) - prod : prod - Int(1);
        if (expect != d)
            throw ConsistencyError("cyclic determinant identity fails against exact det");
        return {MatrixForm::Cyclic, d, sigma, *scalars};
    }
    throw TheoremViolation("corner matrix with det != (-1)^m matches no cyclic pattern");
}

struct BConstraint {
    bool det_zero = false;
    Int det;
    std::optional<std::vector<Int>> forced;  // unique b when det != 0
};

/// The constraint the cut-facet vector must satisfy: for det = 0 the sum of
/// b over positions N_1..N_m equals -1 (other entries free); for det != 0
/// b_i = (-1)^m / det * (i-th row sum of the corner matrix).
inline BConstraint expected_b(const CharPair& pair) {
    const Polytope& poly = pair.polytope();
    if (!poly.has_cut()) throw InvalidInput("expected_b needs a cut polytope");
    if (!det_hypothesis(pair).ok)
        throw PreconditionError("pair does not satisfy the alternating determinant rule");
    IntMatrix at = matrix_at_cut_vertex(pair);
    BConstraint out;
    out.det = det(at);
    if (out.det == 0) {
        out.det_zero = true;
        return out;
    }
    Int num = (poly.m() % 2 == 0) ? Int(1) : Int(-1);
    std::vector<Int> forced(poly.n());
    for (int i = 0; i < poly.n(); ++i) {
        Int rowsum = 0;
        for (int q = 0; q < poly.n(); ++q) rowsum += at.at(i, q);
        Int val = num * rowsum;
        if (val % out.det != 0)
            throw TheoremViolation("row-sum formula does not divide; no valid cut vector exists");
        forced[i] = val / out.det;
    }
    out.forced = std::move(forced);
    return out;
}

struct BVerification {
    bool ok = false;
    bool constraint_ok = false;  // row-sum formula (det != 0) / sum rule (det = 0)
    bool adjoint_ok = false;     // adj * b = (-1)^m * 1, both cases
    bool coord_ok = false;       // det = 0: unit coordinates at the wrap positions
    Int det;
};

/// Check the pair's actual b against the constraint and, independently,
/// against the adjoint identity adj(corner) * b = (-1)^m * (1..1)^t.
inline BVerification verify_b(const CharPair& pair) {
    const Polytope& poly = pair.polytope();
    BConstraint c = expected_b(pair);
    BVerification out;
    out.det = c.det;
    const std::vector<Int>& b = pair.b();

    if (c.det_zero) {
        Int s = 0;
        for (int j = 1; j <= poly.m(); ++j) s += b[poly.prefix()[j] - 1];
        out.constraint_ok = (s == -1);
        // unit wrap entries, read in the classified frame (m >= 2 only; a
        // single factor leaves the wrap coordinate unconstrained)
        out.coord_ok = true;
        if (poly.m() >= 2) {
            ClassificationResult cls = classify_cut_matrix(pair);
            out.coord_ok = cls.form == MatrixForm::Cyclic &&
                           std::all_of(cls.cyclic_scalars.begin(), cls.cyclic_scalars.end(),
                                       [](const Int& x) { return x == 1; });
        }
    } else {
        out.constraint_ok = (b == *c.forced);
        out.coord_ok = true;
    }

    IntMatrix adj = adjugate(matrix_at_cut_vertex(pair));
    std::vector<Int> lhs = mul_vec(adj, b);
    Int want = (poly.m() % 2 == 0) ? Int(1) : Int(-1);
    out.adjoint_ok =
        std::all_of(lhs.begin(), lhs.end(), [&](const Int& x) { return x == want; });

    out.ok = out.constraint_ok && out.adjoint_ok && out.coord_ok;
    if (out.constraint_ok != out.adjoint_ok && c.det != 0)
        throw ConsistencyError("row-sum formula and adjoint identity disagree");
    return out;
}

/// Enumerate all normalized characteristic pairs on the cut polytope with
/// entries of the free columns and of b in [-bound, bound] that satisfy the
/// alternating determinant rule. Deterministic odometer order. The diagonal
/// blocks are pinned to -1 up front (forced by the one-distant vertices).
inline void enumerate_pairs(const Polytope& poly, int bound,
                            const std::function<void(const CharPair&)>& emit) {
    if (!poly.has_cut()) throw InvalidInput("enumeration runs on a cut polytope");
    if (bound < 1) throw InvalidInput("bound must be at least 1");
    const int n = poly.n(), m = poly.m();

    // Free positions of the columns: coordinates outside the own block.
    // Own-block coordinates are pinned to -1, forced by the one-distant
    // vertices -- except the last coordinate when m = 1, whose one-distant
    // vertex is the removed corner, leaving it unconstrained.
    std::vector<std::pair<int, int>> free_pos;  // (column j 1-based, row 0-based)
    for (int j = 1; j <= m; ++j)
        for (int p = 0; p < n; ++p)
            if (p < poly.prefix()[j - 1] || p >= poly.prefix()[j]) free_pos.emplace_back(j, p);
    if (m == 1) free_pos.emplace_back(1, n - 1);

    IntMatrix a(n, m);
    for (int j = 1; j <= m; ++j)
        for (int p = poly.prefix()[j - 1]; p < poly.prefix()[j]; ++p) a.at(p, j - 1) = -1;

    // grid vertices other than the base, with their nonzero supports
    std::vector<std::vector<int>> grid_tuples;
    for (const VertexId& v : poly.vertices())
        if (!v.is_cut() && std::any_of(v.grid.begin(), v.grid.end(), [](int k) { return k != 0; }))
            grid_tuples.push_back(v.grid);

    auto grid_ok = [&]() {
        for (const std::vector<int>& ks : grid_tuples) {
            std::vector<int> support;
            for (int j = 0; j < m; ++j)
                if (ks[j] != 0) support.push_back(j);
            const int s = static_cast<int>(support.size());
            IntMatrix sub(s, s);
            for (int r = 0; r < s; ++r) {
                int row = poly.prefix()[support[r]] + ks[support[r]] - 1;
                for (int c = 0; c < s; ++c) sub.at(r, c) = a.at(row, support[c]);
            }
            Int want = (s % 2 == 0) ? Int(1) : Int(-1);
            if (det(sub) != want) return false;
        }
        return true;
    };

    // parities of the cut vertices, computed once from the edge graph
    VertexId base = VertexId::grid_vertex(std::vector<int>(m, 0));
    std::vector<Int> cut_want(n + 1);
    for (int i = 1; i <= n; ++i)
        cut_want[i] = (poly.distance(base, VertexId::cut_vertex(i)) % 2 == 1) ? Int(-1) : Int(1);

    std::vector<int> avals(free_pos.size(), -bound);
    std::vector<Int> b(n);
    while (true) {
        for (std::size_t t = 0; t < free_pos.size(); ++t)
            a.at(free_pos[t].second, free_pos[t].first - 1) = avals[t];
        if (grid_ok()) {
            IntMatrix corner = IntMatrix::identity(n);
            for (int j = 1; j <= m; ++j)
                for (int p = 0; p < n; ++p) corner.at(p, poly.prefix()[j] - 1) = a.at(p, j - 1);
            std::vector<int> bvals(n, -bound);
            while (true) {
                for (int i = 0; i < n; ++i) b[i] = bvals[i];
                bool ok = true;
                for (int i = 1; i <= n && ok; ++i) {
                    FacetId dropped = poly.dropped_facet(i);
                    IntMatrix mat = corner;
                    for (int p = 0; p < n; ++p) mat.at(p, poly.prefix()[dropped.factor] - 1) = b[p];
                    if (dropped.index != 0) {
                        int acol = poly.prefix()[dropped.factor - 1] + dropped.index - 1;
                        for (int p = 0; p < n; ++p) mat.at(p, acol) = a.at(p, dropped.factor - 1);
                    }
                    if (det(mat) != cut_want[i]) ok = false;
                }
                if (ok) emit(CharPair(poly, a, b));
                int i = n - 1;
                while (i >= 0 && bvals[i] == bound) bvals[i--] = -bound;
                if (i < 0) break;
                ++bvals[i];
            }
        }
        std::size_t t = free_pos.size();
        while (t > 0 && avals[t - 1] == bound) avals[--t] = -bound;
        if (t == 0) break;
        ++avals[t - 1];
    }
}

inline std::vector<CharPair> enumerate_pairs(const Polytope& poly, int bound) {
    std::vector<CharPair> out;
    enumerate_pairs(poly, bound, [&](const CharPair& p) { out.push_back(p); });
    return out;
}

}  // namespace qtoric
