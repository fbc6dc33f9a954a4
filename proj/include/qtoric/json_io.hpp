#pragma once

// JSON encoding of the shared input format and of the report objects.
// Integers are emitted as JSON numbers when they fit in 64 bits and as
// decimal strings otherwise; both forms are accepted on input.

#include "qtoric/charpair.hpp"
#include "qtoric/classify.hpp"
#include "qtoric/cohomology.hpp"
#include "qtoric/isomorphism.hpp"
#include "qtoric/polytope.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace qtoric {

using json = nlohmann::json;

inline json int_to_json(const Int& x) {
    static const Int lo = std::numeric_limits<long long>::min();
    static const Int hi = std::numeric_limits<long long>::max();
    if (x >= lo && x <= hi) return static_cast<long long>(x);
    return x.str();
}

inline Int int_from_json(const json& j) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw InvalidInput("expected an integer (number or decimal string)");
}

inline json vec_to_json(const std::vector<Int>& v) {
    json a = json::array();
    for (const Int& x : v) a.push_back(int_to_json(x));
    return a;
}

inline std::vector<Int> vec_from_json(const json& j) {
    if (!j.is_array()) throw InvalidInput("expected an array of integers");
    std::vector<Int> v;
    for (const json& x : j) v.push_back(int_from_json(x));
    return v;
}

inline json matrix_to_json_columns(const IntMatrix& m) {
    json a = json::array();
    for (std::size_t j = 0; j < m.cols; ++j) a.push_back(vec_to_json(m.col(j)));
    return a;
}

inline json matrix_to_json_rows(const IntMatrix& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows; ++i) a.push_back(vec_to_json(m.row(i)));
    return a;
}

inline json facet_to_json(const FacetId& f) {
    if (f.cut) return json::array({"cut"});
    return json::array({"core", f.factor, f.index});
}

inline FacetId facet_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw InvalidInput("malformed facet id");
    std::string tag = j[0].get<std::string>();
    if (tag == "cut") return FacetId::cut_facet();
    if (tag == "core" && j.size() == 3)
        return FacetId::core(j[1].get<int>(), j[2].get<int>());
    throw InvalidInput("malformed facet id");
}

inline json vertex_to_json(const VertexId& v) {
    if (v.is_cut()) return json::array({"cutv", v.cut});
    return json::array({"grid", v.grid});
}

inline VertexId vertex_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw InvalidInput("malformed vertex id");
    std::string tag = j[0].get<std::string>();
    if (tag == "cutv" && j.size() == 2) return VertexId::cut_vertex(j[1].get<int>());
    if (tag == "grid" && j.size() == 2)
        return VertexId::grid_vertex(j[1].get<std::vector<int>>());
    throw InvalidInput("malformed vertex id");
}

inline json polytope_to_json(const Polytope& p) {
    return json{{"dims", p.dims()}, {"cut", p.has_cut()}};
}

inline Polytope polytope_from_json(const json& j) {
    if (!j.contains("dims")) throw InvalidInput("polytope description needs \"dims\"");
    std::vector<int> dims = j.at("dims").get<std::vector<int>>();
    bool cut = j.value("cut", false);
    return cut ? Polytope::vertex_cut(dims) : Polytope::product(dims);
}

/// {"dims": [...], "cut": bool, "A": [[column 1], ...], "b": [...] | null}
inline json charpair_to_json(const CharPair& pair) {
    json j = polytope_to_json(pair.polytope());
    j["A"] = matrix_to_json_columns(pair.matrix_a());
    j["b"] = pair.polytope().has_cut() ? vec_to_json(pair.b()) : json(nullptr);
    return j;
}

inline CharPair charpair_from_json(const json& j) {
    Polytope poly = polytope_from_json(j);
    if (!j.contains("A")) throw InvalidInput("pair description needs \"A\" (column-wise)");
    const json& cols = j.at("A");
    if (!cols.is_array() || static_cast<int>(cols.size()) != poly.m())
        throw InvalidInput("\"A\" must hold one column per factor");
    IntMatrix a(poly.n(), poly.m());
    for (int c = 0; c < poly.m(); ++c) {
        std::vector<Int> col = vec_from_json(cols[c]);
        if (static_cast<int>(col.size()) != poly.n())
            throw InvalidInput("columns of \"A\" must have length n");
        for (int r = 0; r < poly.n(); ++r) a.at(r, c) = col[r];
    }
    std::optional<std::vector<Int>> b;
    if (poly.has_cut()) {
        if (!j.contains("b") || j.at("b").is_null())
            throw InvalidInput("a cut polytope needs the vector \"b\"");
        b = vec_from_json(j.at("b"));
        if (static_cast<int>(b->size()) != poly.n())
            throw InvalidInput("\"b\" must have length n");
    }
    return CharPair(poly, a, b);
}

inline json poly_to_json(const Poly& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms) terms.push_back(json::array({int_to_json(c), e}));
    return terms;
}

inline json presentation_to_json(const GradedPresentation& pres) {
    json gens = json::array();
    for (const Generator& g : pres.gens)
        gens.push_back(json{{"poly", poly_to_json(g.p)},
                            {"degree", g.degree},
                            {"source", g.source}});
    return json{{"vars", pres.vars}, {"generators", gens}};
}

inline json classification_to_json(const ClassificationResult& cls, const BConstraint& bc,
                                   bool verified) {
    json j;
    j["case"] = cls.form == MatrixForm::UpperTriangular ? "upper_triangular" : "cyclic";
    j["det"] = int_to_json(cls.det);
    j["sigma"] = cls.sigma;
    if (cls.form == MatrixForm::Cyclic) j["cyclic_scalars"] = vec_to_json(cls.cyclic_scalars);
    if (bc.det_zero)
        j["b_constraint"] = json{{"kind", "det_zero"}, {"block_end_sum", -1}};
    else
        j["b_constraint"] = json{{"kind", "det_nonzero"}, {"forced_b", vec_to_json(*bc.forced)}};
    j["verified"] = verified;
    return j;
}

inline json certificate_to_json(const IsoCertificate& cert, const GradedPresentation& src) {
    json ws = json::array();
    for (const MembershipWitness& w : cert.witnesses)
        ws.push_back(json{{"generator", src.gens[w.gen_index].source},
                          {"combination", vec_to_json(w.combination)}});
    return json{{"substitution", matrix_to_json_rows(cert.sub.mat)}, {"witnesses", ws}};
}

}  // namespace qtoric
