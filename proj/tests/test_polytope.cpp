#include "qtoric/polytope.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace qtoric;

namespace {

std::vector<Int> h_of(std::initializer_list<long long> xs) {
    return std::vector<Int>(xs.begin(), xs.end());
}

const std::vector<std::vector<int>> kTestDims = {{1, 1}, {2, 1}, {1, 1, 1}, {2, 2}, {3, 1}, {3}};

}  // namespace

TEST_CASE("products of simplices: counts") {
    Polytope p = Polytope::product({2, 1});
    CHECK(p.n() == 3);
    CHECK(p.m() == 2);
    CHECK(p.facet_count() == 5);
    CHECK(p.vertex_count() == 6);

    Polytope cube = Polytope::product({1, 1, 1});
    CHECK(cube.facet_count() == 6);
    CHECK(cube.vertex_count() == 8);

    Polytope simplex = Polytope::product({3});
    CHECK(simplex.facet_count() == 4);
    CHECK(simplex.vertex_count() == 4);

    CHECK_THROWS_AS(Polytope::product({}), InvalidInput);
    CHECK_THROWS_AS(Polytope::product({2, 0}), InvalidInput);
}

TEST_CASE("vertex cut: counts") {
    Polytope p = Polytope::vertex_cut({2, 1});
    CHECK(p.facet_count() == 6);
    CHECK(p.vertex_count() == 8);

    Polytope pentagon = Polytope::vertex_cut({1, 1});
    CHECK(pentagon.facet_count() == 5);
    CHECK(pentagon.vertex_count() == 5);

    Polytope cube = Polytope::vertex_cut({1, 1, 1});
    CHECK(cube.facet_count() == 7);
    CHECK(cube.vertex_count() == 10);

    // the removed corner is not a vertex
    CHECK_THROWS_AS(p.validate(VertexId::grid_vertex({2, 1})), InvalidInput);
    // closed-form counts against the enumeration
    for (const auto& dims : kTestDims) {
        Polytope q = Polytope::vertex_cut(dims);
        CHECK(static_cast<long long>(q.vertices().size()) == q.vertex_count());
        CHECK(static_cast<int>(q.facets().size()) == q.facet_count());
    }
}

TEST_CASE("vertex facets") {
    Polytope p = Polytope::product({2, 1});
    auto fs = p.vertex_facets(VertexId::grid_vertex({0, 0}));
    CHECK(fs == std::vector<FacetId>{FacetId::core(1, 1), FacetId::core(1, 2),
                                     FacetId::core(2, 1)});

    Polytope pc = Polytope::vertex_cut({2, 1});
    auto cf = pc.vertex_facets(VertexId::cut_vertex(1));
    CHECK(cf == std::vector<FacetId>{FacetId::core(1, 1), FacetId::core(2, 0),
                                     FacetId::cut_facet()});

    Polytope sq = Polytope::product({1, 1});
    CHECK(sq.vertex_facets(VertexId::grid_vertex({1, 1})) ==
          std::vector<FacetId>{FacetId::core(1, 0), FacetId::core(2, 0)});

    // simplicity: every vertex lies on exactly n facets
    for (const auto& dims : kTestDims)
        for (bool cut : {false, true}) {
            Polytope q = cut ? Polytope::vertex_cut(dims) : Polytope::product(dims);
            for (const VertexId& v : q.vertices())
                CHECK(static_cast<int>(q.vertex_facets(v).size()) == q.n());
        }

    CHECK_THROWS_AS(p.vertex_facets(VertexId::grid_vertex({5, 0})), InvalidInput);
    CHECK_THROWS_AS(p.vertex_facets(VertexId::cut_vertex(1)), InvalidInput);
}

TEST_CASE("distance in the edge graph") {
    Polytope p = Polytope::product({2, 1});
    auto g = [](std::vector<int> k) { return VertexId::grid_vertex(std::move(k)); };
    CHECK(p.distance(g({0, 0}), g({1, 1})) == 2);
    CHECK(p.distance(g({0, 0}), g({0, 0})) == 0);

    Polytope pc = Polytope::vertex_cut({2, 1});
    CHECK(pc.distance(g({0, 0}), VertexId::cut_vertex(1)) == 2);   // m
    CHECK(pc.distance(g({0, 0}), VertexId::cut_vertex(3)) == 3);   // m + 1

    SECTION("on the plain product the distance is the number of differing coordinates") {
        Polytope q = Polytope::product({2, 2});
        for (const VertexId& u : q.vertices())
            for (const VertexId& v : q.vertices()) {
                int hamming = 0;
                for (int j = 0; j < q.m(); ++j)
                    if (u.grid[j] != v.grid[j]) ++hamming;
                CHECK(q.distance(u, v) == hamming);
            }
    }

    SECTION("metric axioms at desk scale") {
        Polytope q = Polytope::vertex_cut({1, 1, 1});
        auto vs = q.vertices();
        for (const VertexId& u : vs)
            for (const VertexId& v : vs) {
                int duv = q.distance(u, v);
                CHECK(duv == q.distance(v, u));
                CHECK((duv == 0) == (u == v));
                for (const VertexId& w : vs)
                    CHECK(duv <= q.distance(u, w) + q.distance(w, v));
            }
    }
}

TEST_CASE("f- and h-vectors by face enumeration") {
    CHECK(Polytope::product({2, 1}).h_vector() == h_of({1, 2, 2, 1}));
    CHECK(Polytope::vertex_cut({2, 1}).h_vector() == h_of({1, 3, 3, 1}));
    CHECK(Polytope::product({1, 1, 1}).h_vector() == h_of({1, 3, 3, 1}));
    CHECK(Polytope::vertex_cut({1, 1}).h_vector() == h_of({1, 3, 1}));
    CHECK(Polytope::product({2, 2}).h_vector() == h_of({1, 2, 3, 2, 1}));
    CHECK(Polytope::product({3, 1}).h_vector() == h_of({1, 2, 2, 2, 1}));

    SECTION("Dehn-Sommerville symmetry, vertex-count identity, and the cut rule") {
        for (const auto& dims : kTestDims) {
            Polytope p = Polytope::product(dims);
            Polytope pc = Polytope::vertex_cut(dims);
            std::vector<Int> h = p.h_vector(), hc = pc.h_vector();
            int n = p.n();
            Int sum = 0, sumc = 0;
            for (int i = 0; i <= n; ++i) {
                CHECK(h[i] == h[n - i]);
                CHECK(hc[i] == hc[n - i]);
                sum += h[i];
                sumc += hc[i];
            }
            CHECK(sum == p.vertex_count());
            CHECK(sumc == pc.vertex_count());
            CHECK(h[0] == 1);
            CHECK(hc[n] == 1);
            for (int i = 1; i < n; ++i) CHECK(hc[i] == h[i] + 1);
        }
    }

    SECTION("f-vector of the prism") {
        CHECK(Polytope::product({2, 1}).f_vector() == std::vector<long long>{6, 9, 5, 1});
    }
}

TEST_CASE("minimal non-faces") {
    SECTION("plain product: one set per simplex factor") {
        auto nf = Polytope::product({2, 1}).minimal_nonfaces();
        REQUIRE(nf.size() == 2);
        CHECK(nf[0] == std::vector<FacetId>{FacetId::core(1, 0), FacetId::core(1, 1),
                                            FacetId::core(1, 2)});
        CHECK(nf[1] == std::vector<FacetId>{FacetId::core(2, 0), FacetId::core(2, 1)});
    }
    SECTION("cut prism adds the cut pairs and the corner set") {
        auto nf = Polytope::vertex_cut({2, 1}).minimal_nonfaces();
        REQUIRE(nf.size() == 5);
        std::set<std::vector<FacetId>> sets(nf.begin(), nf.end());
        CHECK(sets.count({FacetId::core(1, 2), FacetId::cut_facet()}) == 1);
        CHECK(sets.count({FacetId::core(2, 1), FacetId::cut_facet()}) == 1);
        CHECK(sets.count({FacetId::core(1, 0), FacetId::core(1, 1), FacetId::core(2, 0)}) == 1);
    }
    SECTION("pentagon: five two-element non-faces") {
        auto nf = Polytope::vertex_cut({1, 1}).minimal_nonfaces();
        REQUIRE(nf.size() == 5);
        for (const auto& s : nf) CHECK(s.size() == 2);
    }
    SECTION("each set has empty intersection and all proper subsets meet") {
        for (const auto& dims : kTestDims)
            for (bool cut : {false, true}) {
                Polytope q = cut ? Polytope::vertex_cut(dims) : Polytope::product(dims);
                for (const auto& s : q.minimal_nonfaces()) {
                    auto meets = [&](const std::vector<FacetId>& fs) {
                        for (const VertexId& v : q.vertices()) {
                            bool all = true;
                            for (const FacetId& f : fs)
                                if (!q.on_facet(v, f)) all = false;
                            if (all) return true;
                        }
                        return false;
                    };
                    CHECK_FALSE(meets(s));
                    for (std::size_t drop = 0; drop < s.size(); ++drop) {
                        std::vector<FacetId> sub;
                        for (std::size_t i = 0; i < s.size(); ++i)
                            if (i != drop) sub.push_back(s[i]);
                        CHECK(meets(sub));
                    }
                }
            }
    }
}

TEST_CASE("facet indexing matches the variable scheme") {
    Polytope p = Polytope::vertex_cut({2, 1});
    // core facets with positive index occupy 0..n-1 by position
    CHECK(p.facet_index(FacetId::core(1, 1)) == 0);
    CHECK(p.facet_index(FacetId::core(1, 2)) == 1);
    CHECK(p.facet_index(FacetId::core(2, 1)) == 2);
    CHECK(p.facet_index(FacetId::core(1, 0)) == 3);
    CHECK(p.facet_index(FacetId::core(2, 0)) == 4);
    CHECK(p.facet_index(FacetId::cut_facet()) == 5);

    // dropped-facet correspondence for the cut vertices
    CHECK(p.dropped_facet(1) == FacetId::core(1, 0));
    CHECK(p.dropped_facet(2) == FacetId::core(2, 0));
    CHECK(p.dropped_facet(3) == FacetId::core(1, 1));
    for (int i = 1; i <= p.n(); ++i) CHECK(p.cut_vertex_of_dropped(p.dropped_facet(i)) == i);
}
