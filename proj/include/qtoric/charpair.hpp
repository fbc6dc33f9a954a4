#pragma once

// Characteristic functions on a product of simplices P and on its vertex
// cut: normalization at the base vertex, the n x m column matrix A and the
// extra vector b on the cut facet, per-vertex matrices with the canonical
// column ordering, validity checks, and the induced function on P.

#include "qtoric/int_matrix.hpp"
#include "qtoric/polytope.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qtoric {

class CharPair {
public:
    /// Normalized pair: Core(j,k) with k >= 1 carries e_{N_{j-1}+k}; column
    /// j of `a` is the vector on Core(j,0); `b` is the vector on Cut.
    CharPair(Polytope poly, IntMatrix a, std::optional<std::vector<Int>> b = std::nullopt)
        : poly_(std::move(poly)), normalized_(true) {
        const int n = poly_.n(), m = poly_.m();
        if (static_cast<int>(a.rows) != n || static_cast<int>(a.cols) != m)
            throw InvalidInput("column matrix must be n x m");
        if (poly_.has_cut() != b.has_value())
            throw InvalidInput("cut vector must be present exactly on a cut polytope");
        if (b && static_cast<int>(b->size()) != n)
            throw InvalidInput("cut vector must have length n");
        vecs_.assign(poly_.facet_count(), std::vector<Int>(n, Int(0)));
        for (int j = 1; j <= m; ++j) {
            for (int k = 1; k <= poly_.dims()[j - 1]; ++k)
                vecs_[poly_.facet_index(FacetId::core(j, k))][poly_.prefix()[j - 1] + k - 1] = 1;
            vecs_[poly_.facet_index(FacetId::core(j, 0))] = a.col(j - 1);
        }
        if (b) vecs_[poly_.facet_index(FacetId::cut_facet())] = *b;
    }

    /// Raw pair from an arbitrary facet assignment; not normalized.
    static CharPair from_assignment(const Polytope& poly,
                                    const std::vector<std::pair<FacetId, std::vector<Int>>>& as) {
        CharPair p(poly);
        if (static_cast<int>(as.size()) != poly.facet_count())
            throw InvalidInput("assignment must cover every facet exactly once");
        std::vector<bool> seen(poly.facet_count(), false);
        for (const auto& [f, v] : as) {
            std::size_t i = poly.facet_index(f);
            if (seen[i]) throw InvalidInput("facet assigned twice");
            if (static_cast<int>(v.size()) != poly.n())
                throw InvalidInput("characteristic vectors must have length n");
            seen[i] = true;
            p.vecs_[i] = v;
        }
        p.normalized_ = p.check_normalized();
        return p;
    }

    const Polytope& polytope() const { return poly_; }
    bool normalized() const { return normalized_; }
    const std::vector<Int>& vec(const FacetId& f) const { return vecs_[poly_.facet_index(f)]; }

    /// Column a_j (the vector on Core(j,0)); 1-based j.
    const std::vector<Int>& a(int j) const { return vecs_[poly_.facet_index(FacetId::core(j, 0))]; }
    const std::vector<Int>& b() const {
        if (!poly_.has_cut()) throw InvalidInput("no cut facet");
        return vecs_[poly_.facet_index(FacetId::cut_facet())];
    }

    /// The n x m matrix with column j = a_j.
    IntMatrix matrix_a() const {
        IntMatrix a(poly_.n(), poly_.m());
        for (int j = 1; j <= poly_.m(); ++j)
            for (int i = 0; i < poly_.n(); ++i) a.at(i, j - 1) = this->a(j)[i];
        return a;
    }

private:
    explicit CharPair(Polytope poly) : poly_(std::move(poly)) {
        vecs_.assign(poly_.facet_count(), std::vector<Int>(poly_.n(), Int(0)));
    }

    bool check_normalized() const {
        for (int j = 1; j <= poly_.m(); ++j)
            for (int k = 1; k <= poly_.dims()[j - 1]; ++k) {
                const std::vector<Int>& v = vecs_[poly_.facet_index(FacetId::core(j, k))];
                int pos = poly_.prefix()[j - 1] + k - 1;
                for (int i = 0; i < poly_.n(); ++i)
                    if (v[i] != (i == pos ? 1 : 0)) return false;
            }
        return true;
    }

    Polytope poly_;
    std::vector<std::vector<Int>> vecs_;  // indexed by facet_index
    bool normalized_ = false;

    friend CharPair normalize_at_base(const CharPair&);
    friend CharPair induced_on_base(const CharPair&);
};

/// Left-multiply every facet vector by the inverse of the base-vertex matrix
/// so the facets through (0..0) carry the standard basis. Requires that
/// matrix to be unimodular. Idempotent; preserves |det| at every vertex.
inline CharPair normalize_at_base(const CharPair& pair) {
    const Polytope& poly = pair.polytope();
    const int n = poly.n();
    IntMatrix base(n, n);
    for (int j = 1; j <= poly.m(); ++j)
        for (int k = 1; k <= poly.dims()[j - 1]; ++k) {
            int pos = poly.prefix()[j - 1] + k - 1;
            const std::vector<Int>& v = pair.vec(FacetId::core(j, k));
            for (int i = 0; i < n; ++i) base.at(i, pos) = v[i];
        }
    Int d = det(base);
    if (d != 1 && d != -1)
        throw PreconditionError("base-vertex matrix is not unimodular; cannot normalize");
    IntMatrix inv = adjugate(base);
    if (d == -1)
        for (Int& x : inv.a) x = -x;
    CharPair out = pair;
    for (auto& v : out.vecs_) v = mul_vec(inv, v);
    out.normalized_ = true;
    if (!out.check_normalized())
        throw ConsistencyError("normalization did not produce the standard basis at the base vertex");
    return out;
}

struct VertexMatrix {
    VertexId vertex;
    IntMatrix mat;                        // n x n, columns in canonical order
    std::vector<FacetId> facet_of_column;
};

namespace detail {

inline void require_normalized(const CharPair& pair, const char* who) {
    if (!pair.normalized())
        throw PreconditionError(std::string(who) + " requires a normalized pair");
}

inline void set_column(IntMatrix& m, int col, const std::vector<Int>& v) {
    for (std::size_t i = 0; i < m.rows; ++i) m.at(i, col) = v[i];
}

}  // namespace detail

/// Matrix formally attached to the removed corner (n_1..n_m): identity
/// columns with a_j placed at position N_j.
inline IntMatrix matrix_at_cut_vertex(const CharPair& pair) {
    detail::require_normalized(pair, "matrix_at_cut_vertex");
    const Polytope& poly = pair.polytope();
    if (!poly.has_cut()) throw InvalidInput("matrix_at_cut_vertex needs a cut polytope");
    IntMatrix m = IntMatrix::identity(poly.n());
    for (int j = 1; j <= poly.m(); ++j)
        detail::set_column(m, poly.prefix()[j] - 1, pair.a(j));
    return m;
}

/// The m x m minor of the corner matrix on rows and columns N_1..N_m; its
/// determinant equals det of the full corner matrix, which is asserted.
inline IntMatrix cut_vertex_minor(const CharPair& pair) {
    const Polytope& poly = pair.polytope();
    IntMatrix full = matrix_at_cut_vertex(pair);
    IntMatrix s(poly.m(), poly.m());
    for (int i = 1; i <= poly.m(); ++i)
        for (int j = 1; j <= poly.m(); ++j)
            s.at(i - 1, j - 1) = pair.a(j)[poly.prefix()[i] - 1];
    if (det(s) != det(full))
        throw ConsistencyError("corner minor determinant differs from the full corner matrix");
    return s;
}

/// Ordered matrix at a vertex. Grid vertex (l_1..l_m): column N_{j-1}+i
/// holds a_j when i = l_j != 0, else the standard basis vector. Cut vertex
/// u^j (j <= m): the corner matrix with b in place of a_j. Cut vertex
/// u^{m+alpha} dropping Core(j,k): additionally a_j in place of
/// e_{N_{j-1}+k}.
inline VertexMatrix vertex_matrix(const CharPair& pair, const VertexId& v) {
    detail::require_normalized(pair, "vertex_matrix");
    const Polytope& poly = pair.polytope();
    poly.validate(v);
    const int n = poly.n(), m = poly.m();
    VertexMatrix vm;
    vm.vertex = v;
    vm.mat = IntMatrix::identity(n);
    vm.facet_of_column.resize(n);
    for (int j = 1; j <= m; ++j)
        for (int i = 1; i <= poly.dims()[j - 1]; ++i)
            vm.facet_of_column[poly.prefix()[j - 1] + i - 1] = FacetId::core(j, i);

    if (!v.is_cut()) {
        for (int j = 1; j <= m; ++j) {
            int lj = v.grid[j - 1];
            if (lj == 0) continue;
            int col = poly.prefix()[j - 1] + lj - 1;
            detail::set_column(vm.mat, col, pair.a(j));
            vm.facet_of_column[col] = FacetId::core(j, 0);
        }
        return vm;
    }

    // start from the corner matrix
    for (int j = 1; j <= m; ++j) {
        int col = poly.prefix()[j] - 1;
        detail::set_column(vm.mat, col, pair.a(j));
        vm.facet_of_column[col] = FacetId::core(j, 0);
    }
    FacetId dropped = poly.dropped_facet(v.cut);
    int jd = dropped.factor;
    int bcol = poly.prefix()[jd] - 1;  // where a_{jd} sat
    detail::set_column(vm.mat, bcol, pair.b());
    vm.facet_of_column[bcol] = FacetId::cut_facet();
    if (dropped.index != 0) {
        int acol = poly.prefix()[jd - 1] + dropped.index - 1;
        detail::set_column(vm.mat, acol, pair.a(jd));
        vm.facet_of_column[acol] = FacetId::core(jd, 0);
    }
    return vm;
}

struct CharacteristicCheck {
    bool ok = false;
    std::vector<VertexId> failing;      // vertices with |det| != 1
    bool minor_check_ran = false;       // principal-minor route (products only)
    bool minor_check_ok = false;
};

namespace detail {

/// All principal minors of the block-column matrix A are +-1 (checked over
/// every row choice k and every subset of factors).
inline bool all_principal_minors_unit(const IntMatrix& a, const std::vector<int>& prefix) {
    const int m = static_cast<int>(prefix.size()) - 1;
    std::vector<int> ks(m, 1);
    while (true) {
        IntMatrix sub = principal_submatrix(a, prefix, ks);
        for (unsigned mask = 1; mask < (1u << m); ++mask) {
            std::vector<int> idx;
            for (int j = 0; j < m; ++j)
                if (mask >> j & 1) idx.push_back(j);
            IntMatrix s(idx.size(), idx.size());
            for (std::size_t r = 0; r < idx.size(); ++r)
                for (std::size_t c = 0; c < idx.size(); ++c)
                    s.at(r, c) = sub.at(idx[r], idx[c]);
            Int d = det(s);
            if (d != 1 && d != -1) return false;
        }
        int j = m - 1;
        while (j >= 0 && ks[j] == prefix[j + 1] - prefix[j]) ks[j--] = 1;
        if (j < 0) break;
        ++ks[j];
    }
    return true;
}

}  // namespace detail

/// det at every vertex is +-1. On a plain product this is cross-checked
/// against the principal-minor criterion; the two routes must agree.
inline CharacteristicCheck is_characteristic(const CharPair& pair) {
    detail::require_normalized(pair, "is_characteristic");
    const Polytope& poly = pair.polytope();
    CharacteristicCheck out;
    for (const VertexId& v : poly.vertices()) {
        Int d = det(vertex_matrix(pair, v).mat);
        if (d != 1 && d != -1) out.failing.push_back(v);
    }
    out.ok = out.failing.empty();
    if (!poly.has_cut()) {
        out.minor_check_ran = true;
        out.minor_check_ok = detail::all_principal_minors_unit(pair.matrix_a(), poly.prefix());
        if (out.minor_check_ok != out.ok)
            throw ConsistencyError(
                "vertex determinants and principal minors disagree on the characteristic test");
    }
    return out;
}

struct AlternatingDetReport {
    bool ok = false;
    std::vector<VertexId> failing;  // vertices violating the parity rule
};

/// The alternating determinant rule: det at a vertex u equals -1 when the
/// distance from the base vertex is odd and +1 when even.
inline AlternatingDetReport det_hypothesis(const CharPair& pair) {
    detail::require_normalized(pair, "det_hypothesis");
    const Polytope& poly = pair.polytope();
    AlternatingDetReport out;
    VertexId base = VertexId::grid_vertex(std::vector<int>(poly.m(), 0));
    for (const VertexId& v : poly.vertices()) {
        Int d = det(vertex_matrix(pair, v).mat);
        int parity = poly.distance(base, v) % 2;
        if (d != (parity == 1 ? Int(-1) : Int(1))) out.failing.push_back(v);
    }
    out.ok = out.failing.empty();
    return out;
}

/// Forget the cut facet; the result lives on the plain product and may fail
/// the characteristic test at the removed corner.
inline CharPair induced_on_base(const CharPair& pair) {
    const Polytope& poly = pair.polytope();
    if (!poly.has_cut()) throw InvalidInput("induced_on_base needs a cut polytope");
    Polytope base = Polytope::product(poly.dims());
    CharPair out(base);
    for (const FacetId& f : base.facets())
        out.vecs_[base.facet_index(f)] = pair.vec(f);
    out.normalized_ = pair.normalized();
    return out;
}

/// The pair of the product of complex projective spaces: a_j = -(sum of the
/// standard basis vectors in block j).
inline CharPair standard_product_pair(const std::vector<int>& dims) {
    Polytope p = Polytope::product(dims);
    IntMatrix a(p.n(), p.m());
    for (int j = 1; j <= p.m(); ++j)
        for (int i = p.prefix()[j - 1]; i < p.prefix()[j]; ++i) a.at(i, j - 1) = -1;
    return CharPair(p, a);
}

/// The standard pair on the vertex cut: the product pair together with the
/// forced cut vector (row sums of the corner matrix).
inline CharPair standard_cut_pair(const std::vector<int>& dims) {
    Polytope p = Polytope::vertex_cut(dims);
    IntMatrix a(p.n(), p.m());
    for (int j = 1; j <= p.m(); ++j)
        for (int i = p.prefix()[j - 1]; i < p.prefix()[j]; ++i) a.at(i, j - 1) = -1;
    std::vector<Int> b(p.n(), Int(0));
    for (int j = 1; j <= p.m(); ++j) b[p.prefix()[j] - 1] = -1;
    return CharPair(p, a, b);
}

}  // namespace qtoric
