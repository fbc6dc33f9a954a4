#pragma once

// Multivariate polynomials with exact integer coefficients, just enough for
// graded quotient computations: arithmetic, substitution, homogeneous-degree
// bookkeeping and coefficient vectors over a monomial basis.

#include "qtoric/bigint.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qtoric {

using Exp = std::vector<int>;  // exponent vector

struct Poly {
    int nvars = 0;
    std::map<Exp, Int> terms;  // lex-ordered, no zero coefficients

    static Poly zero(int nvars) { return Poly{nvars, {}}; }
    static Poly constant(int nvars, Int c) {
        Poly p{nvars, {}};
        if (c != 0) p.terms[Exp(nvars, 0)] = std::move(c);
        return p;
    }
    static Poly variable(int nvars, int i) {
        Poly p{nvars, {}};
        Exp e(nvars, 0);
        e[i] = 1;
        p.terms[e] = 1;
        return p;
    }
    static Poly monomial(int nvars, Exp e, Int c = Int(1)) {
        Poly p{nvars, {}};
        if (c != 0) p.terms[std::move(e)] = std::move(c);
        return p;
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(const Exp& e, const Int& c) {
        if (c == 0) return;
        auto it = terms.find(e);
        if (it == terms.end()) {
            terms.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        for (const auto& [e, c] : o.terms) add_term(e, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [e, c] : o.terms) add_term(e, Int(-c));
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r{a.nvars, {}};
        for (const auto& [ea, ca] : a.terms)
            for (const auto& [eb, cb] : b.terms) {
                Exp e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    friend Poly operator*(const Int& c, const Poly& a) {
        Poly r{a.nvars, {}};
        if (c == 0) return r;
        for (const auto& [e, k] : a.terms) r.terms[e] = c * k;
        return r;
    }
    friend Poly operator-(const Poly& a) { return Int(-1) * a; }

    friend bool operator==(const Poly&, const Poly&) = default;
    friend bool operator<(const Poly& a, const Poly& b) {
        if (a.nvars != b.nvars) return a.nvars < b.nvars;
        return a.terms < b.terms;
    }

    /// Total degree of every term if homogeneous, nullopt otherwise
    /// (the zero polynomial counts as homogeneous of any degree).
    std::optional<int> homogeneous_degree() const {
        std::optional<int> d;
        for (const auto& [e, c] : terms) {
            int t = std::accumulate(e.begin(), e.end(), 0);
            if (!d)
                d = t;
            else if (*d != t)
                return std::nullopt;
        }
        return d ? d : std::optional<int>(0);
    }

    std::string str(const std::vector<std::string>& names) const {
        if (terms.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms) {
            Int a = c;
            if (first) {
                if (a < 0) {
                    os << "-";
                    a = -a;
                }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            bool printed = false;
            if (a != 1) {
                os << a;
                printed = true;
            }
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (printed) os << "*";
                os << names[i];
                if (e[i] > 1) os << "^" << e[i];
                printed = true;
            }
            if (!printed) os << "1";
        }
        return os.str();
    }
};

/// Substitute images[i] for variable i. All images share one variable set.
inline Poly substitute(const Poly& p, const std::vector<Poly>& images) {
    if (static_cast<int>(images.size()) != p.nvars)
        throw InvalidInput("substitute needs one image per variable");
    int out_vars = images.empty() ? 0 : images.front().nvars;
    Poly r = Poly::zero(out_vars);
    for (const auto& [e, c] : p.terms) {
        Poly t = Poly::constant(out_vars, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) t = t * images[i];
        r += t;
    }
    return r;
}

/// Exponent vectors of total degree d in lexicographic order (matching the
/// term order of Poly).
inline std::vector<Exp> monomials_of_degree(int nvars, int d) {
    std::vector<Exp> out;
    Exp cur(nvars, 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == nvars - 1) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            cur[pos] = k;
            self(self, pos + 1, left - k);
        }
        cur[pos] = 0;
    };
    if (nvars == 0) {
        if (d == 0) out.push_back({});
        return out;
    }
    rec(rec, 0, d);
    return out;
}

inline std::vector<Int> coeff_vector(const Poly& p, const std::vector<Exp>& basis) {
    std::vector<Int> v(basis.size(), Int(0));
    std::map<Exp, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
    for (const auto& [e, c] : p.terms) {
        auto it = index.find(e);
        if (it == index.end()) throw InvalidInput("polynomial has a term outside the basis");
        v[it->second] = c;
    }
    return v;
}

}  // namespace qtoric
