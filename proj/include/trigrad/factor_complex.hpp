#pragma once

#include "trigrad/koszul.hpp"

#include <bit>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace trigrad {

/// Generator of a graded free module: Z/2 parity, bidegree, cube degree j.
struct Generator {
    int parity = 0;
    Bidegree deg;
    int j = 0;
};

/// Sparse matrix of polynomials stored by columns.
class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(Ring ring, size_t rows, size_t cols) : ring_(std::move(ring)), rows_(rows), cols_(cols), col_(cols) {}

    static PolyMatrix identity(Ring ring, size_t n) {
        PolyMatrix m(ring, n, n);
        for (size_t i = 0; i < n; ++i) m.set(i, i, Polynomial::constant(ring, 1));
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const Ring& ring() const { return ring_; }
    const std::map<size_t, Polynomial>& column(size_t c) const { return col_.at(c); }

    Polynomial get(size_t r, size_t c) const {
        const auto& col = col_.at(c);
        auto it = col.find(r);
        return it == col.end() ? Polynomial(ring_) : it->second;
    }
    void set(size_t r, size_t c, Polynomial p) {
        check(r, c);
        if (p.is_zero())
            col_[c].erase(r);
        else
            col_[c][r] = std::move(p);
    }
    void add(size_t r, size_t c, const Polynomial& p) {
        check(r, c);
        if (p.is_zero()) return;
        auto& col = col_[c];
        auto it = col.find(r);
        if (it == col.end()) {
            col.emplace(r, p);
            return;
        }
        it->second += p;
        if (it->second.is_zero()) col.erase(it);
    }

    bool is_zero() const {
        for (const auto& c : col_)
            if (!c.empty()) return false;
        return true;
    }

    friend PolyMatrix operator*(const PolyMatrix& x, const PolyMatrix& y) {
        if (x.cols_ != y.rows_) throw std::invalid_argument("matrix size mismatch");
        PolyMatrix r(x.ring_ ? x.ring_ : y.ring_, x.rows_, y.cols_);
        for (size_t c = 0; c < y.cols_; ++c)
            for (const auto& [k, p] : y.col_[c])
                for (const auto& [i, q] : x.col_[k]) r.add(i, c, q * p);
        return r;
    }
    friend PolyMatrix operator+(const PolyMatrix& x, const PolyMatrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("matrix size mismatch");
        PolyMatrix r = x;
        for (size_t c = 0; c < y.cols_; ++c)
            for (const auto& [i, p] : y.col_[c]) r.add(i, c, p);
        return r;
    }
    friend PolyMatrix operator-(const PolyMatrix& x, const PolyMatrix& y) { return x + y * Rational(-1); }
    friend PolyMatrix operator*(const PolyMatrix& x, const Rational& s) {
        PolyMatrix r = x;
        for (auto& col : r.col_) {
            if (s == 0) col.clear();
            for (auto& [i, p] : col) p *= s;
        }
        return r;
    }
    /// Every entry multiplied by the polynomial p.
    PolyMatrix times(const Polynomial& p) const {
        PolyMatrix r(ring_, rows_, cols_);
        for (size_t c = 0; c < cols_; ++c)
            for (const auto& [i, q] : col_[c]) r.set(i, c, q * p);
        return r;
    }
    bool operator==(const PolyMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (size_t c = 0; c < cols_; ++c) {
            if (col_[c].size() != o.col_[c].size()) return false;
            for (const auto& [i, p] : col_[c]) {
                auto it = o.col_[c].find(i);
                if (it == o.col_[c].end() || !(it->second == p)) return false;
            }
        }
        return true;
    }

    PolyMatrix rebase(const Ring& ring) const {
        PolyMatrix r(ring, rows_, cols_);
        for (size_t c = 0; c < cols_; ++c)
            for (const auto& [i, p] : col_[c]) r.set(i, c, p.rebase(ring));
        return r;
    }

    std::string str() const {
        std::ostringstream os;
        for (size_t c = 0; c < cols_; ++c)
            for (const auto& [i, p] : col_[c]) os << '[' << i << ',' << c << "] " << p.str() << '\n';
        return os.str();
    }

private:
    void check(size_t r, size_t c) const {
        if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
    }

    Ring ring_;
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<std::map<size_t, Polynomial>> col_;
};

/// Graded free module with an inner differential d of bidegree (1,1) that
/// swaps parity, and a cube differential del raising j by one.
struct FactorComplex {
    Ring ring;
    std::vector<Generator> gens;
    PolyMatrix d;
    PolyMatrix del;
    Polynomial potential;

    size_t rank() const { return gens.size(); }
};

/// Module map between two complexes given by a polynomial matrix.
struct ChainMap {
    PolyMatrix matrix;
};

inline FactorComplex empty_complex(Ring ring, size_t n) {
    FactorComplex c;
    c.ring = ring;
    c.gens.resize(n);
    c.d = PolyMatrix(ring, n, n);
    c.del = PolyMatrix(ring, n, n);
    c.potential = Polynomial(ring);
    return c;
}

/// Generators are subsets S of rows (bit i set means the row's second basis
/// vector). d(S) = sum_i (-1)^{#{j in S, j < i}} (a_i (S+i) if i not in S,
/// b_i (S-i) if i in S).
inline FactorComplex realize(const KoszulMatrix& m) {
    const size_t n = m.rows.size();
    if (n > 24) throw std::length_error("realize: too many rows");
    const size_t N = size_t{1} << n;
    FactorComplex c = empty_complex(m.ring, N);
    c.potential = m.potential();
    for (size_t S = 0; S < N; ++S) {
        Generator g;
        g.parity = (std::popcount(S) + m.parity_offset) & 1;
        g.deg = m.global_shift;
        for (size_t i = 0; i < n; ++i)
            if (S >> i & 1) g.deg += m.rows[i].shift;
        c.gens[S] = g;
        for (size_t i = 0; i < n; ++i) {
            int before = std::popcount(S & ((size_t{1} << i) - 1));
            Rational sign = before % 2 ? -1 : 1;
            if (S >> i & 1) {
                if (!m.rows[i].right.is_zero()) c.d.add(S & ~(size_t{1} << i), S, m.rows[i].right * sign);
            } else {
                if (!m.rows[i].left.is_zero()) c.d.add(S | (size_t{1} << i), S, m.rows[i].left * sign);
            }
        }
    }
    return c;
}

/// The isomorphism K(m) -> K(row_op(m, i, j, lambda)).
inline ChainMap row_op_map(const KoszulMatrix& m, size_t i, size_t j, const Polynomial& lambda) {
    const size_t n = m.rows.size();
    const size_t N = size_t{1} << n;
    Polynomial lam = lambda.rebase(m.ring);
    PolyMatrix f = PolyMatrix::identity(m.ring, N);
    size_t lo = std::min(i, j), hi = std::max(i, j);
    size_t between = ((size_t{1} << hi) - 1) & ~((size_t{1} << (lo + 1)) - 1);
    for (size_t S = 0; S < N; ++S) {
        if (!(S >> i & 1) || (S >> j & 1)) continue;
        size_t T = (S & ~(size_t{1} << i)) | (size_t{1} << j);
        Rational sign = std::popcount(S & between) % 2 ? 1 : -1;
        f.add(T, S, lam * sign);
    }
    return {f};
}

enum class FlipKind { Psi, PsiPrime };

/// Id (x) psi(y) or Id (x) psi'(y) on row r of a Koszul complex with n rows.
/// psi(y): |0> -> |0>, |1> -> y|1>. psi'(y): |0> -> y|0>, |1> -> |1>.
inline ChainMap flip_map(FlipKind kind, size_t n, size_t r, const Polynomial& y) {
    const size_t N = size_t{1} << n;
    PolyMatrix f(y.ring(), N, N);
    Polynomial one = Polynomial::constant(y.ring(), 1);
    for (size_t S = 0; S < N; ++S) {
        bool bit = S >> r & 1;
        bool scaled = kind == FlipKind::Psi ? bit : !bit;
        f.set(S, S, scaled ? y : one);
    }
    return {f};
}

/// flip_map with a check that the two matrices differ only in row r by the
/// factor y in the direction the kind requires.
inline ChainMap flip_map(FlipKind kind, const KoszulMatrix& source, const KoszulMatrix& target, size_t r,
                         const Polynomial& y) {
    if (source.rows.size() != target.rows.size() || r >= source.rows.size())
        throw KoszulError("flip_map: row structure mismatch");
    for (size_t i = 0; i < source.rows.size(); ++i) {
        const auto& s = source.rows[i];
        const auto& t = target.rows[i];
        if (i != r && !(s.left == t.left && s.right == t.right))
            throw KoszulError("flip_map: rows other than r differ");
    }
    const auto& s = source.rows[r];
    const auto& t = target.rows[r];
    bool ok = kind == FlipKind::Psi ? (s.right == y * t.right && t.left == y * s.left)
                                    : (t.right == y * s.right && s.left == y * t.left);
    if (!ok) throw KoszulError("flip_map: factorization mismatch in row " + std::to_string(r));
    return flip_map(kind, source.rows.size(), r, y.rebase(source.ring));
}

/// Bidegree of a map relative to generator degrees; nullopt when some entry
/// is inhomogeneous or entries disagree. Zero maps report (0,0).
inline std::optional<Bidegree> map_bidegree(const ChainMap& f, const FactorComplex& src, const FactorComplex& tgt) {
    std::optional<Bidegree> deg;
    for (size_t c = 0; c < f.matrix.cols(); ++c)
        for (const auto& [r, p] : f.matrix.column(c)) {
            auto pd = p.bidegree();
            if (!pd) return std::nullopt;
            Bidegree here = *pd + tgt.gens[r].deg - src.gens[c].deg;
            if (deg && *deg != here) return std::nullopt;
            deg = here;
        }
    return deg ? deg : std::optional<Bidegree>(Bidegree{});
}

inline bool commutes_with_d(const ChainMap& f, const FactorComplex& src, const FactorComplex& tgt) {
    return f.matrix * src.d == tgt.d * f.matrix;
}

inline bool d_squared_is_potential(const FactorComplex& c) {
    return c.d * c.d == PolyMatrix::identity(c.ring, c.rank()).times(c.potential);
}

/// d of bidegree (1,1), swapping parity, preserving j; del preserving the
/// bigrading and raising j by one.
inline bool is_graded(const FactorComplex& c) {
    for (size_t s = 0; s < c.rank(); ++s) {
        for (const auto& [t, p] : c.d.column(s)) {
            auto pd = p.bidegree();
            if (!pd || c.gens[t].deg != c.gens[s].deg + Bidegree{1, 1} - *pd) return false;
            if (c.gens[t].parity == c.gens[s].parity || c.gens[t].j != c.gens[s].j) return false;
        }
        for (const auto& [t, p] : c.del.column(s)) {
            auto pd = p.bidegree();
            if (!pd || c.gens[t].deg != c.gens[s].deg - *pd || c.gens[t].j != c.gens[s].j + 1) return false;
        }
    }
    return true;
}

inline bool cube_relations_hold(const FactorComplex& c) {
    PolyMatrix anti = c.del * c.d + c.d * c.del;
    return anti.is_zero() && (c.del * c.del).is_zero();
}

/// Copy of c with every generator shifted in bidegree and cube degree.
inline FactorComplex shifted(const FactorComplex& c, Bidegree by, int dj = 0) {
    FactorComplex r = c;
    for (auto& g : r.gens) {
        g.deg += by;
        g.j += dj;
    }
    return r;
}

/// Cone of f: A -> B with A placed in cube degree jA and B in jA + 1. The
/// inner differential on cube degree j is signed (-1)^j.
inline FactorComplex cone(const FactorComplex& A, const FactorComplex& B, const ChainMap& f, int jA) {
    const size_t na = A.rank(), nb = B.rank();
    FactorComplex c = empty_complex(A.ring, na + nb);
    c.potential = A.potential;
    for (size_t i = 0; i < na; ++i) c.gens[i] = {A.gens[i].parity, A.gens[i].deg, jA};
    for (size_t i = 0; i < nb; ++i) c.gens[na + i] = {B.gens[i].parity, B.gens[i].deg, jA + 1};
    Rational sa = jA % 2 ? -1 : 1;
    for (size_t s = 0; s < na; ++s)
        for (const auto& [t, p] : A.d.column(s)) c.d.add(t, s, p * sa);
    for (size_t s = 0; s < nb; ++s)
        for (const auto& [t, p] : B.d.column(s)) c.d.add(na + t, na + s, p * -sa);
    for (size_t s = 0; s < na; ++s)
        for (const auto& [t, p] : f.matrix.column(s)) c.del.add(na + t, s, p);
    return c;
}

/// Crossing complex: positive crossings give C0{0,2} (j=-1) -> C1 (j=0) via
/// chi0; negative crossings give C1{0,-2} (j=0) -> C0{0,-2} (j=1) via chi1.
inline FactorComplex crossing_cone(int sign, const FactorComplex& c0, const FactorComplex& c1, const ChainMap& chi) {
    if (sign > 0) return cone(shifted(c0, {0, 2}), c1, chi, -1);
    return cone(shifted(c1, {0, -2}), shifted(c0, {0, -2}), chi, 0);
}

/// Tensor product over a common ring. The second factor's d and del carry
/// the sign (-1)^{parity + j} of the first factor's generator.
inline FactorComplex tensor(const FactorComplex& x, const FactorComplex& y) {
    std::vector<std::string> names = x.ring->names();
    for (const auto& n : y.ring->names())
        if (!x.ring->index_of(n)) names.push_back(n);
    Ring ring = make_ring(names);
    const size_t nx = x.rank(), ny = y.rank();
    FactorComplex c = empty_complex(ring, nx * ny);
    c.potential = x.potential.rebase(ring) + y.potential.rebase(ring);
    auto idx = [&](size_t a, size_t b) { return a * ny + b; };
    for (size_t a = 0; a < nx; ++a)
        for (size_t b = 0; b < ny; ++b) {
            const auto& ga = x.gens[a];
            const auto& gb = y.gens[b];
            c.gens[idx(a, b)] = {(ga.parity + gb.parity) & 1, ga.deg + gb.deg, ga.j + gb.j};
        }
    for (size_t a = 0; a < nx; ++a)
        for (size_t b = 0; b < ny; ++b) {
            size_t s = idx(a, b);
            for (const auto& [t, p] : x.d.column(a)) c.d.add(idx(t, b), s, p.rebase(ring));
            for (const auto& [t, p] : x.del.column(a)) c.del.add(idx(t, b), s, p.rebase(ring));
            Rational sign = (x.gens[a].parity + x.gens[a].j) % 2 ? -1 : 1;
            for (const auto& [t, p] : y.d.column(b)) c.d.add(idx(a, t), s, p.rebase(ring) * sign);
            for (const auto& [t, p] : y.del.column(b)) c.del.add(idx(a, t), s, p.rebase(ring) * sign);
        }
    return c;
}

/// Result of Gaussian cancellation: the smaller complex with inclusion and
/// projection maps to and from the original.
struct Simplified {
    FactorComplex complex;
    ChainMap iota;  // small -> original
    ChainMap pi;    // original -> small
};

namespace detail {

inline std::optional<std::pair<size_t, size_t>> find_unit(const PolyMatrix& d) {
    for (size_t s = 0; s < d.cols(); ++s)
        for (const auto& [t, p] : d.column(s))
            if (t != s && p.is_constant() && !p.is_zero()) return std::make_pair(s, t);
    return std::nullopt;
}

}  // namespace detail

/// Cancels invertible scalar entries of d one pair at a time. The cube
/// differential is carried along as pi * del * iota, which is correct on
/// homology (it is a differential only up to homotopy when del is nonzero).
inline Simplified simplify(const FactorComplex& c) {
    FactorComplex cur = c;
    PolyMatrix iota = PolyMatrix::identity(c.ring, c.rank());
    PolyMatrix pi = PolyMatrix::identity(c.ring, c.rank());
    while (auto unit = detail::find_unit(cur.d)) {
        auto [s, t] = *unit;
        const size_t n = cur.rank();
        Rational uinv = 1 / cur.d.get(t, s).constant_term();
        std::vector<size_t> keep;
        for (size_t i = 0; i < n; ++i)
            if (i != s && i != t) keep.push_back(i);
        std::vector<long> pos(n, -1);
        for (size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<long>(i);
        // row t of d as a map column -> entry
        std::map<size_t, Polynomial> row_t;
        for (size_t y = 0; y < n; ++y) {
            Polynomial e = cur.d.get(t, y);
            if (!e.is_zero()) row_t[y] = e;
        }
        const auto col_s = cur.d.column(s);

        FactorComplex next = empty_complex(cur.ring, keep.size());
        next.potential = cur.potential;
        for (size_t i = 0; i < keep.size(); ++i) next.gens[i] = cur.gens[keep[i]];
        for (size_t yi = 0; yi < keep.size(); ++yi) {
            size_t y = keep[yi];
            for (const auto& [x, p] : cur.d.column(y))
                if (pos[x] >= 0) next.d.add(pos[x], yi, p);
            auto rt = row_t.find(y);
            if (rt != row_t.end())
                for (const auto& [x, p] : col_s)
                    if (pos[x] >= 0) next.d.add(pos[x], yi, p * rt->second * -uinv);
        }
        // iota_step: small -> cur, y -> y - u^-1 d_{t,y} s
        PolyMatrix is(cur.ring, n, keep.size());
        for (size_t yi = 0; yi < keep.size(); ++yi) {
            size_t y = keep[yi];
            is.set(y, yi, Polynomial::constant(cur.ring, 1));
            auto rt = row_t.find(y);
            if (rt != row_t.end()) is.set(s, yi, rt->second * -uinv);
        }
        // pi_step: cur -> small, x -> x, t -> -sum_x d_{x,s} u^-1 x, s -> 0
        PolyMatrix ps(cur.ring, keep.size(), n);
        for (size_t xi = 0; xi < keep.size(); ++xi) ps.set(xi, keep[xi], Polynomial::constant(cur.ring, 1));
        for (const auto& [x, p] : col_s)
            if (pos[x] >= 0) ps.set(pos[x], t, p * -uinv);
        next.del = ps * cur.del * is;
        iota = iota * is;
        pi = ps * pi;
        cur = std::move(next);
    }
    return {cur, {iota}, {pi}};
}

/// A map between original complexes carried to their simplifications.
inline ChainMap transport(const ChainMap& f, const Simplified& src, const Simplified& tgt) {
    return {tgt.pi.matrix * f.matrix * src.iota.matrix};
}

}  // namespace trigrad
