#pragma once

// The acceptance suite: one machine check per headline claim, each printed
// as a single pass/fail line. Two checks are expected to fail on concrete
// counterexamples found by this engine; they are reported with witnesses
// rather than weakened (see the project README).

#include "qtoric/charpair.hpp"
#include "qtoric/classify.hpp"
#include "qtoric/cohomology.hpp"
#include "qtoric/isomorphism.hpp"
#include "qtoric/polytope.hpp"

#include <chrono>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace qtoric {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace detail {

inline std::string dims_str(const std::vector<int>& dims) {
    std::string s = "(";
    for (std::size_t i = 0; i < dims.size(); ++i)
        s += (i ? "," : "") + std::to_string(dims[i]);
    return s + ")";
}

/// det = 0 cyclic pair on the cube-like wrap pattern is not needed here;
/// this builds the cyclic pair on (1,1,1) with wrap scalars (k1,k2,k3).
inline CharPair cube_cyclic_pair(const std::vector<Int>& scalars, const std::vector<Int>& b) {
    Polytope p = Polytope::vertex_cut({1, 1, 1});
    IntMatrix a(3, 3);
    a.at(0, 0) = -1;
    a.at(2, 0) = scalars[0];  // column 1 wraps to the last coordinate
    a.at(1, 1) = -1;
    a.at(0, 1) = scalars[1];
    a.at(2, 2) = -1;
    a.at(1, 2) = scalars[2];
    return CharPair(p, a, b);
}

inline std::vector<std::vector<Int>> block_end_b_vectors(const Polytope& poly, int bound) {
    const int n = poly.n(), m = poly.m();
    std::vector<int> ends;
    for (int j = 1; j <= m; ++j) ends.push_back(poly.prefix()[j] - 1);
    std::vector<std::vector<Int>> out;
    std::vector<int> v(m, -bound);
    while (true) {
        int sum = 0;
        for (int x : v) sum += x;
        if (sum == -1) {
            std::vector<Int> b(n, Int(0));
            for (int j = 0; j < m; ++j) b[ends[j]] = v[j];
            out.push_back(b);
        }
        int t = m - 1;
        while (t >= 0 && v[t] == bound) v[t--] = -bound;
        if (t < 0) break;
        ++v[t];
    }
    return out;
}

}  // namespace detail

inline std::vector<CriterionResult> run_acceptance(std::ostream& out) {
    using clock = std::chrono::steady_clock;
    std::vector<CriterionResult> results;
    auto report = [&](int id, const std::string& name, bool pass, const std::string& detail,
                      clock::time_point t0) {
        double secs = std::chrono::duration<double>(clock::now() - t0).count();
        results.push_back({id, name, pass, detail});
        std::ostringstream line;
        line << "criterion " << id << " (" << name << "): " << (pass ? "PASS" : "FAIL");
        if (!detail.empty()) line << " | " << detail;
        line << " [" << std::fixed << secs << "s]";
        out << line.str() << "\n";
        out.flush();
    };

    const std::vector<std::vector<int>> all_dims = {{1, 1}, {2, 1}, {1, 1, 1}, {2, 2}, {3, 1}};
    const std::vector<std::vector<int>> enum_dims = {{1, 1}, {2, 1}, {1, 1, 1}};

    // 1. graded ranks equal the h-vector, no torsion, cut and uncut
    {
        auto t0 = clock::now();
        bool ok = true;
        std::ostringstream os;
        for (const auto& dims : all_dims) {
            try {
                betti(standard_product_pair(dims));
                betti(standard_cut_pair(dims));
            } catch (const Error& e) {
                ok = false;
                os << detail::dims_str(dims) << ": " << e.what() << "; ";
            }
        }
        if (ok) os << "10 polytopes checked";
        report(1, "Betti numbers from Smith normal form match the h-vector", ok, os.str(), t0);
    }

    // 2-4. enumeration at bound 2: normal-form classification, cut-vector
    // determination, and the relations among products of the generators
    {
        auto t0 = clock::now();
        long long total = 0, bad_classify = 0, bad_b = 0, bad_rel = 0;
        std::string first_classify, first_b, first_rel;
        for (const auto& dims : enum_dims) {
            enumerate_pairs(Polytope::vertex_cut(dims), 2, [&](const CharPair& p) {
                ++total;
                try {
                    classify_cut_matrix(p);
                } catch (const Error& e) {
                    if (!bad_classify++) first_classify = e.what();
                }
                try {
                    if (!verify_b(p).ok && !bad_b++) first_b = "constraint check failed";
                } catch (const Error& e) {
                    if (!bad_b++) first_b = e.what();
                }
                try {
                    if (!verify_generator_relations(p).ok && !bad_rel++)
                        first_rel = "membership check failed";
                } catch (const Error& e) {
                    if (!bad_rel++) first_rel = e.what();
                }
            });
        }
        std::ostringstream os2;
        os2 << total << " pairs";
        if (bad_classify) os2 << ", " << bad_classify << " unclassified (" << first_classify << ")";
        report(2, "every enumerated pair matches a corner normal form", bad_classify == 0,
               os2.str(), t0);
        std::ostringstream os3;
        os3 << total << " pairs";
        if (bad_b) os3 << ", " << bad_b << " failed (" << first_b << ")";
        report(3, "cut vector matches the row-sum rule and the adjoint identity", bad_b == 0,
               os3.str(), t0);
        std::ostringstream os4;
        os4 << total << " pairs";
        if (bad_rel) os4 << ", " << bad_rel << " failed (" << first_rel << ")";
        report(4, "product relations among the degree-2 generators hold integrally",
               bad_rel == 0, os4.str(), t0);
    }

    // 5. det = 0 substitution isomorphisms across all admissible cut vectors
    {
        auto t0 = clock::now();
        long long combos = 0, certified = 0, obstructed = 0, failed = 0;
        std::string first_obstruction, first_failure;
        for (const auto& dims : std::vector<std::vector<int>>{{2, 1}, {1, 1, 1}}) {
            Polytope poly = Polytope::vertex_cut(dims);
            std::vector<CharPair> det0;
            enumerate_pairs(poly, 2, [&](const CharPair& p) {
                if (det(matrix_at_cut_vertex(p)) == 0 && reduced_admissible(p))
                    det0.push_back(p);
            });
            std::vector<std::vector<Int>> bprimes = detail::block_end_b_vectors(poly, 2);
            for (const CharPair& p : det0) {
                GradedPresentation dst = reduced_presentation(p);
                for (const std::vector<Int>& bp : bprimes) {
                    ++combos;
                    CharPair q(poly, p.matrix_a(), bp);
                    Det0SubstitutionResult r = build_det0_substitution(p, q);
                    if (!r.ok()) {
                        if (!obstructed++) first_obstruction = r.obstruction;
                        continue;
                    }
                    GradedPresentation src = reduced_presentation(q);
                    RingMapResult fwd = verify_ring_map(*r.sub, src, dst);
                    RingMapResult bwd = verify_ring_map(r.sub->inverse(), dst, src);
                    bool identity_ok =
                        r.sub->compose(r.sub->inverse()) ==
                        LinearSubstitution::identity(poly.m() + 1);
                    if (fwd.ok() && bwd.ok() && identity_ok) {
                        ++certified;
                    } else if (!failed++) {
                        first_failure = fwd.ok() ? "inverse direction failed" : fwd.failure;
                    }
                }
            }
        }
        std::ostringstream os;
        os << combos << " (pair, b') combinations: " << certified << " certified";
        if (obstructed)
            os << ", " << obstructed
               << " admit no substitution of the stated form (" << first_obstruction
               << "); within matching residue classes all certificates verified";
        if (failed) os << ", " << failed << " verification failures (" << first_failure << ")";
        report(5, "det = 0 rings are linked by the shift substitutions",
               obstructed == 0 && failed == 0, os.str(), t0);
    }

    // 6. degree-4 additive basis
    {
        auto t0 = clock::now();
        bool ok = true;
        std::ostringstream os;
        for (const auto& dims : std::vector<std::vector<int>>{{2, 1}, {1, 1, 1}, {2, 2}, {3, 1}}) {
            try {
                H4BasisReport rep = h4_basis(standard_cut_pair(dims));
                if (!rep.ok) {
                    ok = false;
                    os << detail::dims_str(dims) << ": basis verification failed; ";
                } else {
                    os << detail::dims_str(dims) << ": rank " << rep.degree2_rank << "; ";
                }
            } catch (const Error& e) {
                ok = false;
                os << detail::dims_str(dims) << ": " << e.what() << "; ";
            }
        }
        // a cyclic-case pair exercises the same claim away from the standard form
        try {
            Polytope p = Polytope::vertex_cut({2, 1});
            IntMatrix a(3, 2);
            a.at(0, 0) = -1; a.at(1, 0) = -1; a.at(2, 0) = 2;
            a.at(1, 1) = 1;  a.at(2, 1) = -1;
            std::vector<Int> b = {Int(0), Int(0), Int(-1)};
            if (!h4_basis(CharPair(p, a, b)).ok) {
                ok = false;
                os << "(2,1) cyclic: basis verification failed; ";
            }
        } catch (const Error& e) {
            ok = false;
            os << std::string("(2,1) cyclic: ") + e.what();
        }
        report(6, "claimed degree-4 monomials form an additive lattice basis", ok, os.str(), t0);
    }

    // 7. annihilator-rank characterization of multiples of y
    {
        auto t0 = clock::now();
        bool ok = true;
        std::ostringstream os;
        auto run = [&](const CharPair& p, const std::string& label) {
            try {
                AnnihilatorRankReport rep = verify_annihilator_rank(p, 2);
                if (!rep.ok) {
                    ok = false;
                    os << label << ": counterexample z = (";
                    for (std::size_t i = 0; i < rep.witness->size(); ++i)
                        os << ((i ? "," : "")) << (*rep.witness)[i];
                    os << ") over (y_1..y_m, y) has annihilator rank m; ";
                } else {
                    os << label << ": " << rep.checked << " classes pass; ";
                }
            } catch (const Error& e) {
                ok = false;
                os << label << ": " << e.what() << "; ";
            }
        };
        run(standard_cut_pair({2, 1}), "(2,1) det 1");
        run(standard_cut_pair({1, 1, 1}), "(1,1,1) det -1");
        run(detail::cube_cyclic_pair({Int(2), Int(1), Int(1)}, {Int(0), Int(0), Int(-1)}),
            "(1,1,1) det 1, no determinant hypothesis");
        report(7, "annihilator rank m forces a multiple of y", ok, os.str(), t0);
    }

    // 8. the prism regression: valid on the cut, invalid induced function
    {
        auto t0 = clock::now();
        bool ok = true;
        std::ostringstream os;
        try {
            Polytope p = Polytope::vertex_cut({2, 1});
            IntMatrix a(3, 2);
            a.at(0, 0) = 1; a.at(1, 0) = 1; a.at(2, 0) = 1;   // (1,1,1)
            a.at(0, 1) = 0; a.at(1, 1) = 1; a.at(2, 1) = 1;   // (0,1,1)
            std::vector<Int> b = {Int(1), Int(1), Int(0)};
            CharPair pair(p, a, b);
            if (!is_characteristic(pair).ok) {
                ok = false;
                os << "pair unexpectedly invalid on the cut polytope; ";
            }
            CharPair ind = induced_on_base(pair);
            CharacteristicCheck chk = is_characteristic(ind);
            VertexId corner = VertexId::grid_vertex({2, 1});
            bool corner_fails =
                std::find(chk.failing.begin(), chk.failing.end(), corner) != chk.failing.end();
            Int d = det(vertex_matrix(ind, corner).mat);
            if (chk.ok || !corner_fails || d != 0) {
                ok = false;
                os << "induced function did not fail at the removed corner with det 0; ";
            } else {
                os << "induced determinant at the corner = 0";
            }
        } catch (const Error& e) {
            ok = false;
            os << e.what();
        }
        report(8, "prism example: valid upstairs, degenerate induced function", ok, os.str(), t0);
    }

    // 9. the vertex cut adds one to every interior h-entry
    {
        auto t0 = clock::now();
        bool ok = true;
        std::ostringstream os;
        for (const auto& dims : all_dims) {
            std::vector<Int> h = Polytope::product(dims).h_vector();
            std::vector<Int> hc = Polytope::vertex_cut(dims).h_vector();
            int n = static_cast<int>(h.size()) - 1;
            bool good = h[0] == hc[0] && h[n] == hc[n];
            for (int i = 1; i < n; ++i)
                if (hc[i] != h[i] + 1) good = false;
            if (!good) {
                ok = false;
                os << detail::dims_str(dims) << " fails; ";
            }
        }
        if (ok) os << "all test dims";
        report(9, "interior h-entries grow by one under the vertex cut", ok, os.str(), t0);
    }

    return results;
}

}  // namespace qtoric
