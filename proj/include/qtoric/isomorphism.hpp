#pragma once

// Graded ring maps between the reduced presentations: substitution
// machinery with membership certificates, the explicit substitution family
// y_j -> y_j + c_j y connecting det = 0 pairs that differ only in the cut
// vector, and a bounded structured search for isomorphisms transferring
// between the cut polytope and its base.

#include "qtoric/charpair.hpp"
#include "qtoric/classify.hpp"
#include "qtoric/cohomology.hpp"
#include "qtoric/int_matrix.hpp"
#include "qtoric/poly.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qtoric {

/// Degree-preserving substitution: column j of `mat` holds the coordinates
/// of the image of variable j over the same variable list.
struct LinearSubstitution {
    IntMatrix mat;

    static LinearSubstitution identity(int nvars) {
        return LinearSubstitution{IntMatrix::identity(nvars)};
    }
    int nvars() const { return static_cast<int>(mat.rows); }
    bool unimodular() const {
        Int d = det(mat);
        return d == 1 || d == -1;
    }
    LinearSubstitution inverse() const {
        Int d = det(mat);
        if (d != 1 && d != -1) throw InvalidInput("substitution is not unimodular");
        IntMatrix inv = adjugate(mat);
        if (d == -1)
            for (Int& x : inv.a) x = -x;
        return LinearSubstitution{inv};
    }
    /// this after other: x -> this(other(x)).
    LinearSubstitution compose(const LinearSubstitution& other) const {
        return LinearSubstitution{mul(mat, other.mat)};
    }
    friend bool operator==(const LinearSubstitution&, const LinearSubstitution&) = default;
};

inline Poly apply(const LinearSubstitution& sub, const Poly& p) {
    const int nv = sub.nvars();
    if (p.nvars != nv) throw InvalidInput("substitution variable count mismatch");
    std::vector<Poly> images;
    for (int j = 0; j < nv; ++j) {
        Poly img = Poly::zero(nv);
        for (int i = 0; i < nv; ++i) img += sub.mat.at(i, j) * Poly::variable(nv, i);
        images.push_back(img);
    }
    return substitute(p, images);
}

struct MembershipWitness {
    std::size_t gen_index = 0;      // generator of the source presentation
    std::vector<Int> combination;   // coefficients over the target's degree rows
};

struct IsoCertificate {
    LinearSubstitution sub;
    std::vector<MembershipWitness> witnesses;
};

struct RingMapResult {
    std::optional<IsoCertificate> certificate;
    std::string failure;  // empty on success
    bool ok() const { return certificate.has_value(); }
};

/// Check that the substitution maps every generator of src into the graded
/// lattice of dst at the same degree, returning integer witnesses that
/// re-verify by plain arithmetic. The substitution must be unimodular.
inline RingMapResult verify_ring_map(const LinearSubstitution& sub, const GradedPresentation& src,
                                     const GradedPresentation& dst) {
    RingMapResult out;
    if (src.nvars() != dst.nvars() || sub.nvars() != src.nvars()) {
        out.failure = "variable count mismatch";
        return out;
    }
    if (!sub.unimodular()) {
        out.failure = "substitution matrix is not unimodular";
        return out;
    }
    IsoCertificate cert{sub, {}};
    std::map<int, std::pair<std::vector<Exp>, IntMatrix>> by_degree;  // raw rows per degree
    for (std::size_t gi = 0; gi < src.gens.size(); ++gi) {
        const Generator& g = src.gens[gi];
        Poly image = apply(sub, g.p);
        auto it = by_degree.find(g.degree);
        if (it == by_degree.end()) {
            std::vector<Exp> basis = monomials_of_degree(dst.nvars(), g.degree);
            IntMatrix rows = detail::relation_rows(dst, g.degree, basis);
            it = by_degree.emplace(g.degree, std::make_pair(std::move(basis), std::move(rows)))
                     .first;
        }
        const auto& [basis, rows] = it->second;
        std::vector<Int> v = coeff_vector(image, basis);
        std::optional<std::vector<Int>> comb = lattice_solve(v, rows);
        if (!comb) {
            out.failure = "image of generator '" + g.source +
                          "' is not in the target lattice at degree " + std::to_string(g.degree);
            return out;
        }
        // re-verify the witness by direct arithmetic
        std::vector<Int> check(basis.size(), Int(0));
        for (std::size_t r = 0; r < comb->size(); ++r)
            for (std::size_t c = 0; c < basis.size(); ++c)
                check[c] += (*comb)[r] * rows.at(r, c);
        if (check != v) throw ConsistencyError("membership witness failed re-verification");
        cert.witnesses.push_back({gi, std::move(*comb)});
    }
    out.certificate = std::move(cert);
    return out;
}

struct Det0SubstitutionResult {
    std::optional<LinearSubstitution> sub;
    std::vector<Int> shifts;   // the coefficients c_1..c_m when defined
    std::string obstruction;   // empty when defined
    bool ok() const { return sub.has_value(); }
};

/// The substitution y_j -> y_j + c_j y, y -> y carrying the ideal of the
/// second pair into the ideal of the first, for two det = 0 pairs on the
/// same cut polytope with identical columns and cut vectors supported on
/// the block-end positions. The coefficients solve
///     c_{j+1} - c_j = b_{N_j} - b'_{N_j}  (cyclically)  and
///     sum_j n_j c_j = 0,
/// which is possible precisely when sum_j N_j b_{N_j} and sum_j N_j b'_{N_j}
/// agree modulo n; otherwise the obstruction is reported.
inline Det0SubstitutionResult build_det0_substitution(const CharPair& to_pair,
                                                      const CharPair& from_pair) {
    const Polytope& poly = to_pair.polytope();
    if (!poly.has_cut() || from_pair.polytope().dims() != poly.dims() ||
        !from_pair.polytope().has_cut())
        throw InvalidInput("both pairs must live on the same cut polytope");
    if (det(matrix_at_cut_vertex(to_pair)) != 0 || det(matrix_at_cut_vertex(from_pair)) != 0)
        throw InvalidInput("the substitution family is for corner determinant zero");
    if (to_pair.matrix_a() != from_pair.matrix_a())
        throw InvalidInput("the pairs must share the column matrix");
    const int n = poly.n(), m = poly.m();
    std::vector<bool> is_end(n, false);
    for (int j = 1; j <= m; ++j) is_end[poly.prefix()[j] - 1] = true;
    Int sum_b = 0, sum_bp = 0;
    for (int i = 0; i < n; ++i) {
        if (!is_end[i] && (to_pair.b()[i] != 0 || from_pair.b()[i] != 0))
            throw InvalidInput("cut vectors must be supported on the block-end positions");
        if (is_end[i]) {
            sum_b += to_pair.b()[i];
            sum_bp += from_pair.b()[i];
        }
    }
    if (sum_b != -1 || sum_bp != -1)
        throw InvalidInput("cut vector entries at the block ends must sum to -1");

    // The relations chain the factors in the classified frame (block k is
    // followed by block k+1 there), so the difference equations are solved
    // in that frame and mapped back through the certifying permutation. A
    // single factor leaves nothing to permute.
    std::vector<int> sigma(m);
    if (m == 1) {
        sigma[0] = 1;
    } else {
        sigma = classify_cut_matrix(to_pair).sigma;
    }
    std::vector<int> pdims(m), pend(m);  // permuted block sizes and 0-based end positions
    for (int k = 1; k <= m; ++k) {
        pdims[k - 1] = poly.dims()[sigma[k - 1] - 1];
        pend[k - 1] = poly.prefix()[sigma[k - 1]] - 1;
    }
    std::vector<Int> delta(m);  // b - b' at the permuted block ends
    for (int k = 1; k <= m; ++k)
        delta[k - 1] = to_pair.b()[pend[k - 1]] - from_pair.b()[pend[k - 1]];

    // c'_k = c'_1 + delta_1 + ... + delta_{k-1}; the weighted sum pins c'_1
    Int t = 0;
    for (int k = 2; k <= m; ++k) {
        Int partial = 0;
        for (int i = 1; i < k; ++i) partial += delta[i - 1];
        t += Int(pdims[k - 1]) * partial;
    }
    Det0SubstitutionResult out;
    if (t % n != 0) {
        std::ostringstream os;
        Int lb = 0, lbp = 0, npos = 0;
        for (int k = 1; k <= m; ++k) {
            npos += pdims[k - 1];
            lb += npos * to_pair.b()[pend[k - 1]];
            lbp += npos * from_pair.b()[pend[k - 1]];
        }
        os << "no integer shift vector exists: weighted residues "
           << ((lb % n) + n) % n << " and " << ((lbp % n) + n) % n << " differ modulo " << n;
        out.obstruction = os.str();
        return out;
    }
    std::vector<Int> cp(m);  // shifts in the permuted frame
    cp[0] = -t / n;
    for (int k = 2; k <= m; ++k) cp[k - 1] = cp[k - 2] + delta[k - 2];
    Int weighted = 0;
    for (int k = 1; k <= m; ++k) weighted += Int(pdims[k - 1]) * cp[k - 1];
    if (weighted != 0) throw ConsistencyError("shift coefficients violate the weighted sum");
    for (int k = 1; k <= m; ++k)
        if (cp[k % m] - cp[k - 1] != delta[k - 1])
            throw ConsistencyError("shift coefficients violate the difference relations");

    std::vector<Int> c(m);
    for (int k = 1; k <= m; ++k) c[sigma[k - 1] - 1] = cp[k - 1];
    IntMatrix mat = IntMatrix::identity(m + 1);
    for (int j = 1; j <= m; ++j) mat.at(m, j - 1) = c[j - 1];
    out.sub = LinearSubstitution{mat};
    out.shifts = std::move(c);
    return out;
}

struct TransferSide {
    bool found = false;
    std::optional<IsoCertificate> certificate;
    long long candidates_tried = 0;
    bool search_complete = true;  // false when the matrix part was restricted
};

struct TransferReport {
    TransferSide cut;   // between the presentations on the cut polytope
    TransferSide base;  // between the induced presentations on the product
    bool consistent = true;  // soft flag: the two sides agree within bounds
};

namespace detail {

inline std::vector<IntMatrix> unimodular_candidates(int m, int bound, bool& complete) {
    std::vector<IntMatrix> out;
    long long total = 1;
    for (int i = 0; i < m * m; ++i) {
        total *= 2 * bound + 1;
        if (total > 100'000) break;
    }
    if (total <= 100'000) {
        complete = true;
        std::vector<int> v(m * m, -bound);
        while (true) {
            IntMatrix mm(m, m);
            for (int i = 0; i < m * m; ++i) mm.a[i] = v[i];
            Int d = det(mm);
            if (d == 1 || d == -1) out.push_back(mm);
            int i = m * m - 1;
            while (i >= 0 && v[i] == bound) v[i--] = -bound;
            if (i < 0) break;
            ++v[i];
        }
        return out;
    }
    // fall back to signed permutation matrices
    complete = false;
    std::vector<int> perm(m);
    for (int i = 0; i < m; ++i) perm[i] = i;
    do {
        for (unsigned signs = 0; signs < (1u << m); ++signs) {
            IntMatrix mm(m, m);
            for (int j = 0; j < m; ++j) mm.at(perm[j], j) = (signs >> j & 1) ? -1 : 1;
            out.push_back(mm);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

/// Per-degree HNF lattices of a presentation, for fast repeated membership.
struct GradedLattices {
    const GradedPresentation* pres;
    std::map<int, std::pair<std::vector<Exp>, IntMatrix>> by_degree;

    explicit GradedLattices(const GradedPresentation& p) : pres(&p) {
        for (const Generator& g : p.gens) {
            if (by_degree.count(g.degree)) continue;
            std::vector<Exp> basis = monomials_of_degree(p.nvars(), g.degree);
            IntMatrix rows = lattice_rows(p, g.degree, basis);
            by_degree.emplace(g.degree, std::make_pair(std::move(basis), std::move(rows)));
        }
    }
    bool maps_in(const LinearSubstitution& sub, const GradedPresentation& src) const {
        for (const Generator& g : src.gens) {
            const auto& [basis, rows] = by_degree.at(g.degree);
            if (!lattice_member(coeff_vector(apply(sub, g.p), basis), rows)) return false;
        }
        return true;
    }
};

inline TransferSide search_iso(const GradedPresentation& src, const GradedPresentation& dst,
                               int m, bool has_y, int bound) {
    TransferSide side;
    std::vector<IntMatrix> mats = unimodular_candidates(m, bound, side.search_complete);
    std::vector<std::vector<int>> tvecs;
    if (has_y) {
        std::vector<int> t(m, -bound);
        while (true) {
            tvecs.push_back(t);
            int i = m - 1;
            while (i >= 0 && t[i] == bound) t[i--] = -bound;
            if (i < 0) break;
            ++t[i];
        }
    } else {
        tvecs.push_back({});
    }
    GradedLattices dst_lat(dst), src_lat(src);
    const int nv = m + (has_y ? 1 : 0);
    for (const IntMatrix& mm : mats) {
        for (const std::vector<int>& t : tvecs) {
            for (int eps = 0; eps < (has_y ? 2 : 1); ++eps) {
                IntMatrix s(nv, nv);
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j) s.at(i, j) = mm.at(i, j);
                if (has_y) {
                    for (int j = 0; j < m; ++j) s.at(m, j) = t[j];
                    s.at(m, m) = eps == 0 ? 1 : -1;  // y -> +-y
                }
                LinearSubstitution sub{s};
                ++side.candidates_tried;
                if (!dst_lat.maps_in(sub, src)) continue;
                if (!src_lat.maps_in(sub.inverse(), dst)) continue;
                RingMapResult fwd = verify_ring_map(sub, src, dst);  // full certificate
                if (!fwd.ok())
                    throw ConsistencyError("fast membership and certificate route disagree");
                side.found = true;
                side.certificate = fwd.certificate;
                return side;
            }
        }
    }
    return side;
}

}  // namespace detail

/// Bounded structured search for graded isomorphisms between the rings of
/// two pairs on the same cut polytope, run independently on the cut side
/// and on the induced base side. The image of y is restricted to +-y
/// (justified by the annihilator characterization); the y_j-images carry
/// coefficients up to `bound`. The search is explicitly incomplete: a
/// "none found" answer is within-bounds only.
inline TransferReport iso_transfer_check(const CharPair& pa, const CharPair& pb, int bound = 2) {
    const Polytope& poly = pa.polytope();
    if (!poly.has_cut() || pb.polytope().dims() != poly.dims() || !pb.polytope().has_cut())
        throw InvalidInput("both pairs must live on the same cut polytope");
    if (poly.m() < 2 || poly.n() < 3)
        throw InvalidInput("the transfer statement needs m >= 2 and n >= 3");
    Int target = (poly.m() % 2 == 0) ? Int(1) : Int(-1);
    if (det(matrix_at_cut_vertex(pa)) != target || det(matrix_at_cut_vertex(pb)) != target)
        throw InvalidInput("the transfer statement assumes corner determinant (-1)^m");
    if (!det_hypothesis(pa).ok || !det_hypothesis(pb).ok)
        throw PreconditionError("both pairs must satisfy the alternating determinant rule");

    TransferReport rep;
    rep.cut = detail::search_iso(reduced_presentation(pa), reduced_presentation(pb), poly.m(),
                                 /*has_y=*/true, bound);
    CharPair base_a = induced_on_base(pa);
    CharPair base_b = induced_on_base(pb);
    rep.base = detail::search_iso(reduced_presentation(base_a), reduced_presentation(base_b),
                                  poly.m(), /*has_y=*/false, bound);
    rep.consistent = (rep.cut.found == rep.base.found);
    return rep;
}

}  // namespace qtoric
