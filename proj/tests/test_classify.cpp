#include "qtoric/classify.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qtoric;

namespace {

IntMatrix cols(int n, int m, std::initializer_list<std::initializer_list<long long>> cs) {
    IntMatrix a(n, m);
    int j = 0;
    for (const auto& c : cs) {
        int i = 0;
        for (long long x : c) a.at(i++, j) = x;
        ++j;
    }
    return a;
}

std::vector<Int> ints(std::initializer_list<long long> xs) {
    return std::vector<Int>(xs.begin(), xs.end());
}

CharPair cut_prism_pair(std::initializer_list<long long> a1, std::initializer_list<long long> a2,
                        std::initializer_list<long long> b) {
    Polytope p = Polytope::vertex_cut({2, 1});
    return CharPair(p, cols(3, 2, {a1, a2}), ints(b));
}

}  // namespace

TEST_CASE("normal forms of vector matrices with unit proper minors") {
    SECTION("upper triangular, scalar blocks") {
        ClassificationResult r =
            classify_minor_one_matrix({1, 1}, cols(2, 2, {{1, 0}, {1, 1}}));
        CHECK(r.form == MatrixForm::UpperTriangular);
    }
    SECTION("the identity pattern is degenerately upper triangular") {
        ClassificationResult r =
            classify_minor_one_matrix({1, 1}, cols(2, 2, {{1, 0}, {0, 1}}));
        CHECK(r.form == MatrixForm::UpperTriangular);
    }
    SECTION("cyclic form: off-diagonal product (-1)^m * 2") {
        // det = 1 - 2 = -1; values 1 and 2 with product 2
        ClassificationResult r =
            classify_minor_one_matrix({1, 1}, cols(2, 2, {{1, 1}, {2, 1}}));
        CHECK(r.form == MatrixForm::Cyclic);
        CHECK(r.det == -1);
        CHECK(r.cyclic_scalars.size() == 2);
        CHECK(r.cyclic_scalars[0] * r.cyclic_scalars[1] == 2);
    }
    SECTION("wrong off-diagonal product is not a normal form") {
        // pattern matches but the product is -2, violating the sign rule
        CHECK_THROWS_AS(classify_minor_one_matrix({1, 1}, cols(2, 2, {{1, 2}, {-1, 1}})),
                        TheoremViolation);
    }
    SECTION("a proper principal minor different from 1 is rejected") {
        CHECK_THROWS_AS(classify_minor_one_matrix({1, 1}, cols(2, 2, {{-1, 0}, {0, 1}})),
                        PreconditionError);
    }
    SECTION("vector blocks: the repeated-value rule") {
        // dims (2,1): block a_2^1 has coordinates (1,1); product with a_1^2 = 2
        ClassificationResult r = classify_minor_one_matrix(
            {2, 1}, cols(3, 2, {{1, 1, 2}, {1, 1, 1}}));
        CHECK(r.form == MatrixForm::Cyclic);
    }
}

TEST_CASE("classification of the corner matrix") {
    SECTION("upper triangular at determinant (-1)^m") {
        ClassificationResult r =
            classify_cut_matrix(cut_prism_pair({-1, -1, 0}, {0, 0, -1}, {0, -1, -1}));
        CHECK(r.form == MatrixForm::UpperTriangular);
        CHECK(r.det == 1);
        CHECK(r.sigma == std::vector<int>{1, 2});
    }
    SECTION("a lower-triangular pair is straightened by a factor permutation") {
        ClassificationResult r =
            classify_cut_matrix(cut_prism_pair({-1, -1, 2}, {0, 0, -1}, {0, -1, 1}));
        CHECK(r.form == MatrixForm::UpperTriangular);
        CHECK(r.det == 1);
        CHECK(r.sigma == std::vector<int>{2, 1});
    }
    SECTION("cyclic at determinant -1") {
        ClassificationResult r =
            classify_cut_matrix(cut_prism_pair({-1, -1, 2}, {0, 1, -1}, {0, 0, -1}));
        CHECK(r.form == MatrixForm::Cyclic);
        CHECK(r.det == -1);
        CHECK(r.cyclic_scalars == ints({1, 2}));  // (a_{2,N_1}, a_{1,N_m})
    }
    SECTION("cyclic at determinant 0 on the pentagon") {
        Polytope p = Polytope::vertex_cut({1, 1});
        CharPair pair(p, cols(2, 2, {{-1, 1}, {1, -1}}), ints({0, -1}));
        ClassificationResult r = classify_cut_matrix(pair);
        CHECK(r.form == MatrixForm::Cyclic);
        CHECK(r.det == 0);
        CHECK(r.cyclic_scalars == ints({1, 1}));
    }
    SECTION("the rule is a precondition") {
        CHECK_THROWS_AS(classify_cut_matrix(cut_prism_pair({1, -1, 0}, {0, 0, -1}, {0, -1, -1})),
                        PreconditionError);
    }
}

TEST_CASE("determination of the cut vector") {
    SECTION("det 1: the row-sum rule forces b") {
        BConstraint c = expected_b(cut_prism_pair({-1, -1, 0}, {0, 0, -1}, {0, -1, -1}));
        REQUIRE_FALSE(c.det_zero);
        CHECK(*c.forced == ints({0, -1, -1}));
        CHECK(verify_b(cut_prism_pair({-1, -1, 0}, {0, 0, -1}, {0, -1, -1})).ok);
    }
    SECTION("det -1") {
        BConstraint c = expected_b(cut_prism_pair({-1, -1, 2}, {0, 1, -1}, {0, 0, -1}));
        REQUIRE_FALSE(c.det_zero);
        CHECK(c.det == -1);
        CHECK(*c.forced == ints({0, 0, -1}));
        CHECK(verify_b(cut_prism_pair({-1, -1, 2}, {0, 1, -1}, {0, 0, -1})).ok);
    }
    SECTION("det 0: block-end entries sum to -1, the rest is free") {
        CharPair pair = cut_prism_pair({-1, -1, 1}, {0, 1, -1}, {2, 0, -1});
        BConstraint c = expected_b(pair);
        CHECK(c.det_zero);
        BVerification v = verify_b(pair);
        CHECK(v.ok);       // b_1 = 2 is off the block ends and unconstrained
        CHECK(v.coord_ok); // wrap entries are 1 in the classified frame
    }
    SECTION("a wrong b already breaks the alternating determinant rule") {
        CHECK_THROWS_AS(verify_b(cut_prism_pair({-1, -1, 0}, {0, 0, -1}, {0, -1, 1})),
                        PreconditionError);
    }
}

TEST_CASE("bounded enumeration of valid pairs") {
    SECTION("pentagon at bound 2: eighteen pairs, all verified") {
        auto pairs = enumerate_pairs(Polytope::vertex_cut({1, 1}), 2);
        CHECK(pairs.size() == 18);  // four det 0, fourteen with det != 0
        int det0 = 0;
        for (const CharPair& p : pairs) {
            CHECK(verify_b(p).ok);
            if (det(matrix_at_cut_vertex(p)) == 0) ++det0;
        }
        CHECK(det0 == 4);
    }
    SECTION("every enumerated pair re-verifies through the vertex matrices") {
        for (const auto& dims : {std::vector<int>{1, 1}, {2, 1}}) {
            auto pairs = enumerate_pairs(Polytope::vertex_cut(dims), 2);
            CHECK_FALSE(pairs.empty());
            for (const CharPair& p : pairs) {
                CHECK(is_characteristic(p).ok);
                CHECK(det_hypothesis(p).ok);
            }
        }
    }
    SECTION("det 0 pair counts at bound 2") {
        // hand analysis: on the cut prism b_1 is free in [-2,2] and the
        // block-end entries realize four admissible values
        int prism_det0 = 0;
        enumerate_pairs(Polytope::vertex_cut({2, 1}), 2, [&](const CharPair& p) {
            if (det(matrix_at_cut_vertex(p)) == 0) ++prism_det0;
        });
        CHECK(prism_det0 == 20);
        // on the cut cube both wrap orientations carry eighteen b-vectors
        int cube_det0 = 0;
        enumerate_pairs(Polytope::vertex_cut({1, 1, 1}), 2, [&](const CharPair& p) {
            if (det(matrix_at_cut_vertex(p)) == 0) ++cube_det0;
        });
        CHECK(cube_det0 == 36);
    }
    SECTION("input validation") {
        CHECK_THROWS_AS(enumerate_pairs(Polytope::vertex_cut({1, 1}), 0), InvalidInput);
        CHECK_THROWS_AS(enumerate_pairs(Polytope::product({1, 1}), 2), InvalidInput);
    }
    SECTION("deterministic order") {
        auto a = enumerate_pairs(Polytope::vertex_cut({1, 1}), 2);
        auto b = enumerate_pairs(Polytope::vertex_cut({1, 1}), 2);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].matrix_a() == b[i].matrix_a());
            CHECK(a[i].b() == b[i].b());
        }
    }
}

TEST_CASE("single factor: the corner determinant is unconstrained") {
    // on a cut triangle the one-distant grid check pins only the first
    // coordinate of a_1; writing g for the last coordinate, the cut
    // vertices force b_2 = -1 and g * b_1 = 0
    auto pairs = enumerate_pairs(Polytope::vertex_cut({2}), 2);
    CHECK(pairs.size() == 9);  // g = 0 leaves b_1 free, g != 0 forces b_1 = 0
    for (const CharPair& p : pairs) {
        CHECK(p.b()[1] == -1);
        CHECK(p.a(1)[1] * p.b()[0] == 0);
        CHECK(verify_b(p).ok);
        CHECK(is_characteristic(p).ok);
    }
}
