#pragma once

#include "trigrad/braid.hpp"
#include "trigrad/polynomial.hpp"

#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace trigrad {

class KoszulError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Elementary factorization R --left--> R{shift} --right--> R. The generator
/// of R{n1,n2} sits in bidegree (n1,n2). Pinned rows are never used for
/// variable exclusion; the cube keeps its crossing rows there.
struct KoszulRow {
    Polynomial left;
    Polynomial right;
    Bidegree shift;
    bool pinned = false;
};

struct ExternalVar {
    std::string name;
    int sign = 1;
};

/// Record of a variable removed from the ring together with the value it was
/// replaced by.
struct Substitution {
    std::string var;
    Polynomial value;
    Ring before;
    Ring after;
};

/// Tensor product of elementary factorizations over a common ring, with an
/// overall bidegree shift and parity offset.
struct KoszulMatrix {
    Ring ring;
    std::vector<KoszulRow> rows;
    std::vector<ExternalVar> externals;
    Bidegree global_shift;
    int parity_offset = 0;
    Ring origin;
    std::vector<Substitution> log;

    Polynomial potential() const {
        Polynomial w(ring);
        for (const auto& r : rows) w += r.left * r.right;
        return w;
    }

    /// The potential a*sum(eps_i x_i) demanded by the external variables.
    Polynomial expected_potential() const {
        Polynomial s(ring);
        for (const auto& e : externals) s += Polynomial::variable(ring, e.name) * Rational(e.sign);
        if (!ring->has_a()) return Polynomial(ring);
        return Polynomial::variable(ring, static_cast<size_t>(ring->a_index())) * s;
    }

    bool is_external(const std::string& v) const {
        for (const auto& e : externals)
            if (e.name == v) return true;
        return false;
    }

    /// Applies every logged substitution to a polynomial over the original
    /// ring, producing its image over the current ring.
    Polynomial track(const Polynomial& p) const {
        Polynomial cur = p.rebase(origin);
        for (const auto& s : log) {
            cur = cur.rebase(s.before).substitute(s.var, s.value);
            cur = cur.rebase(s.after);
        }
        return cur.rebase(ring);
    }

    /// One row per line: "left | right | shift".
    std::string dump() const {
        std::ostringstream os;
        for (const auto& r : rows)
            os << r.left.str() << " | " << r.right.str() << " | " << r.shift << (r.pinned ? " *" : "") << '\n';
        return os.str();
    }
};

inline KoszulMatrix make_koszul(Ring ring) {
    KoszulMatrix m;
    m.ring = ring;
    m.origin = ring;
    return m;
}

inline Bidegree middle_shift_of(const Polynomial& right) {
    auto d = right.bidegree();
    if (!d) throw KoszulError("row right entry " + right.str() + " is zero or inhomogeneous");
    return *d - Bidegree{1, 1};
}

inline KoszulRow arc_row(const Ring& ring, int head, int tail) {
    Polynomial a = Polynomial::variable(ring, "a");
    Polynomial b = Polynomial::variable(ring, static_cast<size_t>(head)) -
                   Polynomial::variable(ring, static_cast<size_t>(tail));
    return {a, b, {-1, 1}};
}

/// The two wide-edge rows (a, x1+x2-x3-x4) and (0, x1x2-x3x4).
inline std::pair<KoszulRow, KoszulRow> wide_edge_rows(const Ring& ring, int x1, int x2, int x3, int x4) {
    auto v = [&](int i) { return Polynomial::variable(ring, static_cast<size_t>(i)); };
    Polynomial a = Polynomial::variable(ring, "a");
    return {{a, v(x1) + v(x2) - v(x3) - v(x4), {-1, 1}},
            {Polynomial(ring), v(x1) * v(x2) - v(x3) * v(x4), {-1, 3}}};
}

struct WideEdge {
    int x1 = 0, x2 = 0, x3 = 0, x4 = 0;
};

/// Planar marked graph: arcs tail -> head and wide edges with x1,x2 on top
/// and x3,x4 at the bottom. Variable names exclude "a", which is added.
struct ResolutionGraph {
    std::vector<std::string> variables;
    std::vector<ArcRecord> arcs;
    std::vector<WideEdge> wide_edges;

    /// Externals with orientation sign: +1 for a top endpoint, -1 for bottom.
    std::vector<ExternalVar> externals() const {
        auto [top, bottom] = incidences();
        std::vector<ExternalVar> out;
        for (size_t v = 0; v < variables.size(); ++v) {
            if (top[v] + bottom[v] == 1) out.push_back({variables[v], top[v] ? 1 : -1});
        }
        return out;
    }

    void validate() const {
        auto [top, bottom] = incidences();
        for (size_t v = 0; v < variables.size(); ++v) {
            int total = top[v] + bottom[v];
            bool internal_ok = top[v] == 1 && bottom[v] == 1;
            if (total == 0) throw KoszulError("variable " + variables[v] + " is not incident to the graph");
            if (total > 1 && !internal_ok)
                throw KoszulError("malformed incidence at variable " + variables[v]);
        }
    }

    bool closed() const { return externals().empty(); }

private:
    std::pair<std::vector<int>, std::vector<int>> incidences() const {
        std::vector<int> top(variables.size(), 0), bottom(variables.size(), 0);
        auto at = [&](std::vector<int>& v, int i) {
            if (i < 0 || static_cast<size_t>(i) >= variables.size()) throw KoszulError("variable index out of range");
            ++v[i];
        };
        for (const auto& arc : arcs) {
            at(top, arc.head);
            at(bottom, arc.tail);
        }
        for (const auto& w : wide_edges) {
            at(top, w.x1);
            at(top, w.x2);
            at(bottom, w.x3);
            at(bottom, w.x4);
        }
        return {top, bottom};
    }
};

/// Ring "a" followed by the graph variables; variable i of the graph has
/// ring index i+1.
inline Ring graph_ring(const ResolutionGraph& g) {
    std::vector<std::string> names{"a"};
    names.insert(names.end(), g.variables.begin(), g.variables.end());
    return make_ring(std::move(names));
}

inline KoszulMatrix koszul_of_graph(const ResolutionGraph& g) {
    g.validate();
    KoszulMatrix m = make_koszul(graph_ring(g));
    m.externals = g.externals();
    std::vector<KoszulRow> quadratic;
    for (const auto& w : g.wide_edges) {
        auto [lin, quad] = wide_edge_rows(m.ring, w.x1 + 1, w.x2 + 1, w.x3 + 1, w.x4 + 1);
        m.rows.push_back(lin);
        quadratic.push_back(quad);
    }
    for (const auto& arc : g.arcs) m.rows.push_back(arc_row(m.ring, arc.head + 1, arc.tail + 1));
    m.rows.insert(m.rows.end(), quadratic.begin(), quadratic.end());
    return m;
}

/// Elementary transformation [ij]_lambda: (a_i, b_i + lambda b_j ; a_j - lambda a_i, b_j).
inline KoszulMatrix row_op(const KoszulMatrix& m, size_t i, size_t j, const Polynomial& lambda) {
    if (i == j || i >= m.rows.size() || j >= m.rows.size()) throw KoszulError("row_op: bad row indices");
    if (lambda.is_zero()) return m;
    Polynomial lam = lambda.rebase(m.ring);
    auto deg = lam.bidegree();
    Bidegree want = m.rows[i].shift - m.rows[j].shift;
    if (!deg || *deg != want) {
        std::ostringstream os;
        os << "row_op: lambda " << lam.str() << " must be homogeneous of bidegree " << want;
        throw KoszulError(os.str());
    }
    KoszulMatrix r = m;
    r.rows[i].right = m.rows[i].right + lam * m.rows[j].right;
    r.rows[j].left = m.rows[j].left - lam * m.rows[i].left;
    return r;
}

/// Substitutes `var := value` everywhere and removes `var` from the ring.
inline KoszulMatrix eliminate_variable(const KoszulMatrix& m, const std::string& var, const Polynomial& value) {
    size_t idx = m.ring->require(var);
    Polynomial val = value.rebase(m.ring);
    if (val.uses(idx)) throw KoszulError("substituted value contains " + var);
    KoszulMatrix r = m;
    Ring after = ring_without(m.ring, idx);
    for (auto& row : r.rows) {
        row.left = row.left.substitute(idx, val).rebase(after);
        row.right = row.right.substitute(idx, val).rebase(after);
    }
    r.log.push_back({var, val, m.ring, after});
    r.ring = after;
    return r;
}

inline bool is_a_multiple_row(const KoszulMatrix& m, const KoszulRow& row) {
    if (!m.ring->has_a()) return false;
    return row.left == Polynomial::variable(m.ring, static_cast<size_t>(m.ring->a_index()));
}

/// Adds the first (a, z) row's partner into it via [1p]_1 for every other
/// (a, z) row, so `a` survives on the left only in that first row.
inline KoszulMatrix aggregate_a(const KoszulMatrix& m) {
    if (!m.ring->has_a()) throw KoszulError("aggregate_a: ring has no variable a");
    std::optional<size_t> first;
    for (size_t p = 0; p < m.rows.size(); ++p) {
        const auto& row = m.rows[p];
        if (is_a_multiple_row(m, row)) {
            if (!first) first = p;
        } else if (!row.left.is_zero()) {
            throw KoszulError("aggregate_a: row " + std::to_string(p) + " left entry " + row.left.str() +
                              " is neither a nor 0");
        }
    }
    if (!first) return m;
    KoszulMatrix r = m;
    for (size_t p = 0; p < m.rows.size(); ++p)
        if (p != *first && is_a_multiple_row(r, r.rows[p]))
            r = row_op(r, *first, p, Polynomial::constant(r.ring, 1));
    return r;
}

/// Removes the (a, 0) row and the variable a. The surviving generator is the
/// row's second basis vector, hence the shift and parity change.
inline KoszulMatrix strip_a(const KoszulMatrix& m) {
    if (!m.ring->has_a()) throw KoszulError("strip_a: ring has no variable a");
    size_t ai = static_cast<size_t>(m.ring->a_index());
    std::optional<size_t> row;
    for (size_t p = 0; p < m.rows.size(); ++p) {
        const auto& r = m.rows[p];
        if (is_a_multiple_row(m, r)) {
            if (row) throw KoszulError("strip_a: a occurs in more than one row");
            row = p;
        } else if (r.left.uses(ai) || r.right.uses(ai)) {
            throw KoszulError("strip_a: a occurs outside the aggregated row");
        }
    }
    if (!row) throw KoszulError("strip_a: no (a, z) row");
    if (!m.rows[*row].right.is_zero()) throw KoszulError("strip_a: graph not closed (row is (a, nonzero))");
    KoszulMatrix r = m;
    r.global_shift += m.rows[*row].shift;
    r.parity_offset ^= 1;
    r.rows.erase(r.rows.begin() + static_cast<long>(*row));
    return eliminate_variable(r, "a", Polynomial(m.ring));
}

/// Whether `right` has the shape u*y - mu with u a nonzero scalar and mu free
/// of y. Returns u.
inline std::optional<Rational> linear_unit_in(const Polynomial& right, size_t y) {
    if (right.degree_in(y) != 1) return std::nullopt;
    Monomial my(right.ring()->size(), 0);
    my[y] = 1;
    Rational u;
    int count = 0;
    for (const auto& [mono, c] : right.terms()) {
        if (mono[y] == 0) continue;
        if (mono != my) return std::nullopt;
        u = c;
        ++count;
    }
    if (count != 1) return std::nullopt;
    return u;
}

/// Removes row r = (0, u*y - mu) and substitutes y := mu/u everywhere.
inline KoszulMatrix exclude_variable(const KoszulMatrix& m, size_t r, const std::string& y) {
    if (r >= m.rows.size()) throw KoszulError("exclude_variable: row out of range");
    if (m.is_external(y)) throw KoszulError("exclude_variable: " + y + " is external");
    size_t yi = m.ring->require(y);
    const auto& row = m.rows[r];
    if (!row.left.is_zero()) throw KoszulError("exclude_variable: row left entry must be 0");
    auto u = linear_unit_in(row.right, yi);
    if (!u) throw KoszulError("exclude_variable: row right entry is not unit*" + y + " - mu with mu free of " + y);
    Monomial my(m.ring->size(), 0);
    my[yi] = 1;
    Polynomial mu = Polynomial::monomial(m.ring, my, *u) - row.right;
    mu *= Rational(1) / *u;
    KoszulMatrix t = m;
    t.rows.erase(t.rows.begin() + static_cast<long>(r));
    return eliminate_variable(t, y, mu);
}

/// Repeatedly excludes the highest-index eligible variable from the first
/// non-pinned row (0, z) that admits one. `eligible` filters by name.
inline KoszulMatrix greedy_exclude(KoszulMatrix m, const std::function<bool(const std::string&)>& eligible) {
    while (true) {
        bool done = false;
        for (size_t r = 0; r < m.rows.size() && !done; ++r) {
            const auto& row = m.rows[r];
            if (row.pinned || !row.left.is_zero() || row.right.is_zero()) continue;
            for (size_t y = m.ring->size(); y-- > 0;) {
                const std::string& name = m.ring->name(y);
                if (name == "a" || m.is_external(name) || !eligible(name)) continue;
                if (!linear_unit_in(row.right, y)) continue;
                m = exclude_variable(m, r, name);
                done = true;
                break;
            }
        }
        if (!done) return m;
    }
}

inline KoszulMatrix greedy_exclude(const KoszulMatrix& m) {
    return greedy_exclude(m, [](const std::string&) { return true; });
}

/// Rows (b_i, -a_i) with negated shifts; the potential becomes -w.
inline KoszulMatrix dualize(const KoszulMatrix& m) {
    KoszulMatrix r = m;
    for (auto& row : r.rows) {
        Polynomial l = row.right;
        row.right = -row.left;
        row.left = l;
        row.shift = -row.shift;
    }
    r.global_shift = -m.global_shift;
    for (auto& e : r.externals) e.sign = -e.sign;
    return r;
}

/// Concatenates the rows of two matrices over the union of their rings.
inline KoszulMatrix tensor_rows(const KoszulMatrix& x, const KoszulMatrix& y) {
    std::vector<std::string> names = x.ring->names();
    for (const auto& n : y.ring->names())
        if (!x.ring->index_of(n)) names.push_back(n);
    Ring ring = make_ring(names);
    KoszulMatrix r = make_koszul(ring);
    for (const auto* m : {&x, &y})
        for (const auto& row : m->rows)
            r.rows.push_back({row.left.rebase(ring), row.right.rebase(ring), row.shift, row.pinned});
    r.global_shift = x.global_shift + y.global_shift;
    r.parity_offset = x.parity_offset ^ y.parity_offset;
    for (const auto* m : {&x, &y})
        for (const auto& e : m->externals) {
            bool merged = false;
            for (auto& have : r.externals)
                if (have.name == e.name) {
                    have.sign += e.sign;
                    merged = true;
                }
            if (!merged) r.externals.push_back(e);
        }
    std::erase_if(r.externals, [](const ExternalVar& e) { return e.sign == 0; });
    return r;
}

/// The three-row factorization with potential a(x1+x2+x3-x4-x5-x6).
inline KoszulMatrix build_upsilon() {
    Ring ring = make_ring({"a", "x1", "x2", "x3", "x4", "x5", "x6"});
    KoszulMatrix m = make_koszul(ring);
    auto v = [&](const char* n) { return Polynomial::variable(ring, n); };
    Polynomial a = v("a");
    Polynomial x1 = v("x1"), x2 = v("x2"), x3 = v("x3"), x4 = v("x4"), x5 = v("x5"), x6 = v("x6");
    m.rows.push_back({a, x1 + x2 + x3 - x4 - x5 - x6, {-1, 1}});
    m.rows.push_back({Polynomial(ring), x1 * x2 + x1 * x3 + x2 * x3 - x4 * x5 - x4 * x6 - x5 * x6, {-1, 3}});
    m.rows.push_back({Polynomial(ring), x1 * x2 * x3 - x4 * x5 * x6, {-1, 5}});
    m.externals = {{"x1", 1}, {"x2", 1}, {"x3", 1}, {"x4", -1}, {"x5", -1}, {"x6", -1}};
    return m;
}

/// Closes an open matrix by arcs (a, head - tail) for each (tail, head) pair
/// of external names.
inline KoszulMatrix close_with_arcs(const KoszulMatrix& m,
                                    const std::vector<std::pair<std::string, std::string>>& tail_head) {
    KoszulMatrix r = m;
    for (const auto& [tail, head] : tail_head) {
        Polynomial a = Polynomial::variable(m.ring, "a");
        r.rows.push_back(
            {a, Polynomial::variable(m.ring, head) - Polynomial::variable(m.ring, tail), {-1, 1}});
        for (const auto* n : {&tail, &head})
            std::erase_if(r.externals, [&](const ExternalVar& e) { return e.name == *n; });
    }
    return r;
}

/// Full reduction of a closed matrix: aggregate a, strip it, then exclude
/// variables greedily.
inline KoszulMatrix reduce_closed(const KoszulMatrix& m) {
    if (!m.externals.empty()) throw KoszulError("reduce_closed: matrix has external variables");
    return greedy_exclude(strip_a(aggregate_a(m)));
}

}  // namespace trigrad
