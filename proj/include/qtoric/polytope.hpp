#pragma once

// Combinatorics of products of simplices and their vertex cuts: facets,
// vertices, incidence, the edge graph with its distance function, f- and
// h-vectors by exhaustive face enumeration, and minimal non-faces.
//
// Conventions. P is a product of m simplices with dimensions n_1..n_m and
// total dimension n. Facets are Core(j,k) for 1 <= j <= m, 0 <= k <= n_j,
// plus a single Cut facet on a vertex-cut polytope. Vertices are grid tuples
// (k_1..k_m), 0 <= k_j <= n_j; the cut removes the tuple (n_1..n_m) and adds
// the n vertices of the new simplex facet. Each new vertex corresponds to
// dropping one of the n facets through the removed corner.

#include "qtoric/bigint.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace qtoric {

struct FacetId {
    bool cut = false;
    int factor = 0;  // 1-based, Core only
    int index = 0;   // 0..n_j, Core only

    static FacetId core(int j, int k) { return FacetId{false, j, k}; }
    static FacetId cut_facet() { return FacetId{true, 0, 0}; }

    friend bool operator==(const FacetId&, const FacetId&) = default;
    friend auto operator<=>(const FacetId&, const FacetId&) = default;
};

struct VertexId {
    std::vector<int> grid;  // empty iff cut vertex
    int cut = 0;            // 1..n for cut vertices, 0 otherwise

    static VertexId grid_vertex(std::vector<int> ks) { return VertexId{std::move(ks), 0}; }
    static VertexId cut_vertex(int i) { return VertexId{{}, i}; }
    bool is_cut() const { return cut > 0; }

    friend bool operator==(const VertexId&, const VertexId&) = default;
    friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

struct SimplexProduct {
    std::vector<int> dims;   // n_1..n_m, all >= 1
    int n = 0;               // sum of dims
    int m = 0;               // factor count
    std::vector<int> prefix; // N_0..N_m, prefix[j] = n_1 + ... + n_j

    static SimplexProduct build(const std::vector<int>& dims) {
        if (dims.empty()) throw InvalidInput("dims must be nonempty");
        SimplexProduct p;
        p.dims = dims;
        p.m = static_cast<int>(dims.size());
        p.prefix.assign(p.m + 1, 0);
        for (int j = 0; j < p.m; ++j) {
            if (dims[j] < 1) throw InvalidInput("simplex dimensions must be positive");
            p.prefix[j + 1] = p.prefix[j] + dims[j];
        }
        p.n = p.prefix[p.m];
        return p;
    }

    /// 1-based factor containing coordinate position 1 <= pos <= n.
    int block_of(int pos) const {
        for (int j = 1; j <= m; ++j)
            if (pos <= prefix[j]) return j;
        throw InvalidInput("coordinate position out of range");
    }
};

struct CutPolytope {
    SimplexProduct base;  // cut vertex is fixed at (n_1..n_m)
};

/// Uniform view of a product of simplices with or without the vertex cut.
class Polytope {
public:
    static Polytope product(const std::vector<int>& dims) {
        return Polytope(SimplexProduct::build(dims), false);
    }
    static Polytope vertex_cut(const std::vector<int>& dims) {
        return Polytope(SimplexProduct::build(dims), true);
    }
    static Polytope of(const SimplexProduct& p) { return Polytope(p, false); }
    static Polytope of(const CutPolytope& p) { return Polytope(p.base, true); }

    const SimplexProduct& base() const { return base_; }
    bool has_cut() const { return cut_; }
    int n() const { return base_.n; }
    int m() const { return base_.m; }
    const std::vector<int>& dims() const { return base_.dims; }
    const std::vector<int>& prefix() const { return base_.prefix; }

    int facet_count() const { return base_.n + base_.m + (cut_ ? 1 : 0); }
    long long vertex_count() const {
        long long v = 1;
        for (int d : base_.dims) v *= d + 1;
        if (cut_) v += base_.n - 1;
        return v;
    }

    /// Facets in canonical order: Core(1,0..n_1), ..., Core(m,0..n_m), Cut.
    std::vector<FacetId> facets() const {
        std::vector<FacetId> fs;
        for (int j = 1; j <= base_.m; ++j)
            for (int k = 0; k <= base_.dims[j - 1]; ++k) fs.push_back(FacetId::core(j, k));
        if (cut_) fs.push_back(FacetId::cut_facet());
        return fs;
    }

    /// Linear facet index matching the cohomology variable scheme:
    /// Core(j,k) with k >= 1 sits at N_{j-1}+k-1, Core(j,0) at n+j-1, and
    /// Cut at n+m (all 0-based).
    std::size_t facet_index(const FacetId& f) const {
        validate(f);
        if (f.cut) return static_cast<std::size_t>(base_.n + base_.m);
        if (f.index == 0) return static_cast<std::size_t>(base_.n + f.factor - 1);
        return static_cast<std::size_t>(base_.prefix[f.factor - 1] + f.index - 1);
    }

    /// Vertices in canonical order: grid vertices in odometer order (last
    /// coordinate fastest), skipping the cut corner, then cut vertices 1..n.
    std::vector<VertexId> vertices() const {
        std::vector<VertexId> vs;
        std::vector<int> k(base_.m, 0);
        while (true) {
            if (!(cut_ && is_cut_corner(k))) vs.push_back(VertexId::grid_vertex(k));
            int j = base_.m - 1;
            while (j >= 0 && k[j] == base_.dims[j]) k[j--] = 0;
            if (j < 0) break;
            ++k[j];
        }
        if (cut_)
            for (int i = 1; i <= base_.n; ++i) vs.push_back(VertexId::cut_vertex(i));
        return vs;
    }

    void validate(const FacetId& f) const {
        if (f.cut) {
            if (!cut_) throw InvalidInput("cut facet on a plain product");
            return;
        }
        if (f.factor < 1 || f.factor > base_.m || f.index < 0 ||
            f.index > base_.dims[f.factor - 1])
            throw InvalidInput("facet indices out of range");
    }

    void validate(const VertexId& v) const {
        if (v.is_cut()) {
            if (!cut_) throw InvalidInput("cut vertex on a plain product");
            if (v.cut < 1 || v.cut > base_.n) throw InvalidInput("cut vertex index out of range");
            return;
        }
        if (static_cast<int>(v.grid.size()) != base_.m)
            throw InvalidInput("grid tuple length mismatch");
        for (int j = 0; j < base_.m; ++j)
            if (v.grid[j] < 0 || v.grid[j] > base_.dims[j])
                throw InvalidInput("grid coordinate out of range");
        if (cut_ && is_cut_corner(v.grid))
            throw InvalidInput("the cut corner is not a vertex of the cut polytope");
    }

    /// The facet of the removed corner that cut vertex i replaces. Indices
    /// 1..m drop Core(j,0); indices m+1..n drop the Core(j,k) with
    /// 1 <= k <= n_j-1 in lexicographic (j,k) order.
    FacetId dropped_facet(int i) const {
        if (!cut_) throw InvalidInput("no cut vertices on a plain product");
        if (i < 1 || i > base_.n) throw InvalidInput("cut vertex index out of range");
        if (i <= base_.m) return FacetId::core(i, 0);
        int alpha = i - base_.m;
        for (int j = 1; j <= base_.m; ++j) {
            int inner = base_.dims[j - 1] - 1;
            if (alpha <= inner) return FacetId::core(j, alpha);
            alpha -= inner;
        }
        throw InvalidInput("cut vertex index out of range");
    }

    /// Inverse of dropped_facet for facets through the removed corner.
    int cut_vertex_of_dropped(const FacetId& f) const {
        if (f.cut || f.index >= base_.dims[f.factor - 1])
            throw InvalidInput("facet does not touch the removed corner");
        if (f.index == 0) return f.factor;
        int alpha = 0;
        for (int j = 1; j < f.factor; ++j) alpha += base_.dims[j - 1] - 1;
        return base_.m + alpha + f.index;
    }

    bool on_facet(const VertexId& v, const FacetId& f) const {
        validate(v);
        validate(f);
        if (!v.is_cut()) {
            if (f.cut) return false;
            return v.grid[f.factor - 1] != f.index;
        }
        if (f.cut) return true;
        // facets through the removed corner, minus the dropped one
        if (f.index > base_.dims[f.factor - 1] - 1) return false;
        return !(f == dropped_facet(v.cut));
    }

    /// The n facets through a vertex, in canonical facet order.
    std::vector<FacetId> vertex_facets(const VertexId& v) const {
        validate(v);
        std::vector<FacetId> fs;
        for (const FacetId& f : facets())
            if (on_facet(v, f)) fs.push_back(f);
        if (static_cast<int>(fs.size()) != base_.n)
            throw ConsistencyError("vertex does not lie on exactly n facets");
        return fs;
    }

    /// Incidence bitmask over facet_index positions.
    std::uint64_t facet_mask(const VertexId& v) const {
        std::uint64_t mask = 0;
        for (const FacetId& f : vertex_facets(v)) mask |= std::uint64_t(1) << facet_index(f);
        return mask;
    }

    bool adjacent(const VertexId& u, const VertexId& v) const {
        if (u == v) return false;
        std::uint64_t shared = facet_mask(u) & facet_mask(v);
        return popcount(shared) == base_.n - 1;
    }

    /// Edge-graph distance.
    int distance(const VertexId& u, const VertexId& v) const {
        validate(u);
        validate(v);
        if (u == v) return 0;
        std::vector<VertexId> vs = vertices();
        std::vector<std::uint64_t> masks(vs.size());
        std::size_t su = vs.size(), sv = vs.size();
        for (std::size_t i = 0; i < vs.size(); ++i) {
            masks[i] = facet_mask(vs[i]);
            if (vs[i] == u) su = i;
            if (vs[i] == v) sv = i;
        }
        std::vector<int> dist(vs.size(), -1);
        std::deque<std::size_t> queue{su};
        dist[su] = 0;
        while (!queue.empty()) {
            std::size_t cur = queue.front();
            queue.pop_front();
            if (cur == sv) return dist[cur];
            for (std::size_t i = 0; i < vs.size(); ++i)
                if (dist[i] < 0 && popcount(masks[cur] & masks[i]) == base_.n - 1) {
                    dist[i] = dist[cur] + 1;
                    queue.push_back(i);
                }
        }
        throw ConsistencyError("edge graph is disconnected");
    }

    /// f-vector (f_0..f_n, with f_n = 1) by exhaustive enumeration of
    /// nonempty facet intersections. Faces are identified by their vertex
    /// sets; the codimension of a face equals the number of facets
    /// containing it, since the polytope is simple.
    std::vector<long long> f_vector() const {
        const int r = facet_count();
        if (r > 24) throw InvalidInput("face enumeration limited to 24 facets");
        std::vector<VertexId> vs = vertices();
        std::vector<std::uint64_t> masks(vs.size());
        for (std::size_t i = 0; i < vs.size(); ++i) masks[i] = facet_mask(vs[i]);

        // vertex sets are encoded as bitsets over the vertex list
        auto vertex_set = [&](std::uint64_t facet_subset) {
            std::vector<std::uint64_t> words((vs.size() + 63) / 64, 0);
            for (std::size_t i = 0; i < vs.size(); ++i)
                if ((masks[i] & facet_subset) == facet_subset)
                    words[i / 64] |= std::uint64_t(1) << (i % 64);
            return words;
        };

        std::set<std::vector<std::uint64_t>> seen;
        std::vector<long long> f(base_.n + 1, 0);
        for (std::uint64_t sub = 0; sub < (std::uint64_t(1) << r); ++sub) {
            std::vector<std::uint64_t> vset = vertex_set(sub);
            bool empty = std::all_of(vset.begin(), vset.end(),
                                     [](std::uint64_t w) { return w == 0; });
            if (empty) continue;
            if (!seen.insert(vset).second) continue;
            // codimension = number of facets containing every vertex of the face
            std::uint64_t containing = ~std::uint64_t(0);
            for (std::size_t i = 0; i < vs.size(); ++i)
                if (vset[i / 64] >> (i % 64) & 1) containing &= masks[i];
            int codim = popcount(containing & ((std::uint64_t(1) << r) - 1));
            int dim = base_.n - codim;
            if (dim < 0 || dim > base_.n) throw ConsistencyError("face dimension out of range");
            ++f[dim];
        }
        if (f[base_.n] != 1) throw ConsistencyError("whole-polytope face miscounted");
        if (f[0] != vertex_count()) throw ConsistencyError("vertex count mismatch in f-vector");
        return f;
    }

    /// h-vector from the f-vector: sum_d f_d (x-1)^d has coefficients
    /// h_i on x^{n-i}.
    std::vector<Int> h_vector() const {
        std::vector<long long> f = f_vector();
        std::vector<Int> poly(base_.n + 1, Int(0));  // coefficients of x^0..x^n
        for (int d = 0; d <= base_.n; ++d) {
            // add f[d] * (x-1)^d
            std::vector<Int> binom(d + 1);
            binom[0] = 1;
            for (int i = 1; i <= d; ++i)
                binom[i] = binom[i - 1] * (d - i + 1) / i;
            for (int i = 0; i <= d; ++i) {
                Int c = binom[i] * f[d];
                if ((d - i) % 2 == 1) c = -c;
                poly[i] += c;
            }
        }
        std::vector<Int> h(base_.n + 1);
        for (int i = 0; i <= base_.n; ++i) h[i] = poly[base_.n - i];
        return h;
    }

    /// Minimal non-faces: facet sets with empty intersection all of whose
    /// proper subsets have nonempty intersection. Computed by brute force
    /// over facet subsets and cross-checked against the closed-form list.
    std::vector<std::vector<FacetId>> minimal_nonfaces() const {
        const int r = facet_count();
        if (r > 24) throw InvalidInput("non-face enumeration limited to 24 facets");
        std::vector<VertexId> vs = vertices();
        std::vector<std::uint64_t> masks(vs.size());
        for (std::size_t i = 0; i < vs.size(); ++i) masks[i] = facet_mask(vs[i]);
        std::vector<FacetId> fs = facets();

        auto nonempty = [&](std::uint64_t subset) {
            for (std::uint64_t msk : masks)
                if ((msk & subset) == subset) return true;
            return false;
        };

        std::vector<std::vector<FacetId>> found;
        for (std::uint64_t sub = 1; sub < (std::uint64_t(1) << r); ++sub) {
            if (nonempty(sub)) continue;
            bool minimal = true;
            for (int b = 0; b < r && minimal; ++b)
                if (sub >> b & 1)
                    if (!nonempty(sub & ~(std::uint64_t(1) << b))) minimal = false;
            if (!minimal) continue;
            std::vector<FacetId> set;
            for (int b = 0; b < r; ++b)
                if (sub >> b & 1) set.push_back(fs[facet_position(fs, b)]);
            std::sort(set.begin(), set.end());
            found.push_back(std::move(set));
        }
        std::sort(found.begin(), found.end());

        std::vector<std::vector<FacetId>> expect = closed_form_nonfaces();
        if (found != expect)
            throw ConsistencyError("minimal non-faces disagree with the closed-form list");
        return found;
    }

private:
    SimplexProduct base_;
    bool cut_;

    Polytope(SimplexProduct base, bool cut) : base_(std::move(base)), cut_(cut) {}

    bool is_cut_corner(const std::vector<int>& k) const {
        for (int j = 0; j < base_.m; ++j)
            if (k[j] != base_.dims[j]) return false;
        return true;
    }

    static int popcount(std::uint64_t x) {
        int c = 0;
        while (x) {
            x &= x - 1;
            ++c;
        }
        return c;
    }

    // facets() position of the facet whose facet_index is `bit`
    std::size_t facet_position(const std::vector<FacetId>& fs, int bit) const {
        for (std::size_t p = 0; p < fs.size(); ++p)
            if (static_cast<int>(facet_index(fs[p])) == bit) return p;
        throw ConsistencyError("facet index not found");
    }

    std::vector<std::vector<FacetId>> closed_form_nonfaces() const {
        std::vector<std::vector<FacetId>> sets;
        // All facets of one simplex factor. With a cut and a single factor
        // this set properly contains the corner set below, so it is not
        // minimal there.
        if (!(cut_ && base_.m == 1)) {
            for (int j = 1; j <= base_.m; ++j) {
                std::vector<FacetId> s;
                for (int k = 0; k <= base_.dims[j - 1]; ++k) s.push_back(FacetId::core(j, k));
                sets.push_back(std::move(s));
            }
        }
        if (cut_) {
            for (int j = 1; j <= base_.m; ++j)
                sets.push_back({FacetId::core(j, base_.dims[j - 1]), FacetId::cut_facet()});
            std::vector<FacetId> corner;  // the facets through the removed corner
            for (int j = 1; j <= base_.m; ++j)
                for (int k = 0; k < base_.dims[j - 1]; ++k) corner.push_back(FacetId::core(j, k));
            sets.push_back(std::move(corner));
        }
        for (auto& s : sets) std::sort(s.begin(), s.end());
        std::sort(sets.begin(), sets.end());
        return sets;
    }
};

/// Convenience builders matching the JSON polytope description.
inline Polytope build_product(const std::vector<int>& dims) { return Polytope::product(dims); }
inline Polytope vertex_cut(const Polytope& p) {
    if (p.has_cut()) throw InvalidInput("polytope already has a vertex cut");
    return Polytope::vertex_cut(p.dims());
}

}  // namespace qtoric
