#pragma once

#include "trigrad/factor_complex.hpp"
#include "trigrad/laurent.hpp"
#include "trigrad/linalg.hpp"

#include <map>
#include <climits>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace trigrad {

using Tridegree = std::tuple<int, int, int>;  // (j, k, l)

/// Dimensions of H^j_{k,l}; only nonzero entries are stored. Entries are
/// exact for l <= qmax.
struct TriGradedDims {
    int qmax = 0;
    std::map<Tridegree, long> dims;

    long get(int j, int k, int l) const {
        auto it = dims.find({j, k, l});
        return it == dims.end() ? 0 : it->second;
    }
    void add(int j, int k, int l, long v) {
        if (v == 0 || l > qmax) return;
        long& slot = dims[{j, k, l}];
        slot += v;
        if (slot == 0) dims.erase({j, k, l});
    }
    long total() const {
        long s = 0;
        for (const auto& [t, v] : dims) s += v;
        return s;
    }
    bool operator==(const TriGradedDims& o) const { return qmax == o.qmax && dims == o.dims; }
};

/// Exponent vectors of the given total degree in `n` variables, in
/// lexicographic order.
inline const std::vector<Monomial>& compositions(int n, int total) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<Monomial>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, total);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<Monomial> out;
    if (total >= 0) {
        Monomial cur(n, 0);
        std::function<void(int, int)> rec = [&](int i, int left) {
            if (i == n - 1) {
                cur[i] = left;
                out.push_back(cur);
                return;
            }
            for (int e = left; e >= 0; --e) {
                cur[i] = e;
                rec(i + 1, left - e);
            }
        };
        if (n == 0) {
            if (total == 0) out.push_back({});
        } else {
            rec(0, total);
        }
    }
    return cache.emplace(key, std::move(out)).first->second;
}

/// Monomials of the ring of the given bidegree.
inline std::vector<Monomial> monomials_of(const RingContext& ring, Bidegree deg) {
    std::vector<Monomial> out;
    if (deg.k < 0 || deg.l < 0 || deg.k % 2 || deg.l % 2) return out;
    int ai = ring.a_index();
    if (ai < 0 && deg.k != 0) return out;
    int nx = static_cast<int>(ring.size()) - (ai >= 0 ? 1 : 0);
    for (const auto& xs : compositions(nx, deg.l / 2)) {
        Monomial m(ring.size(), 0);
        size_t xi = 0;
        for (size_t v = 0; v < ring.size(); ++v) {
            if (static_cast<int>(v) == ai)
                m[v] = deg.k / 2;
            else
                m[v] = xs[xi++];
        }
        out.push_back(std::move(m));
    }
    return out;
}

/// Basis of the Q-vector space of a graded free module in one tridegree:
/// pairs (generator, monomial).
struct SliceBasis {
    int k = 0;
    int l = 0;
    std::optional<int> j;
    std::vector<std::pair<size_t, Monomial>> elems;
    std::map<std::pair<size_t, Monomial>, int> index;

    size_t size() const { return elems.size(); }
    int find(size_t g, const Monomial& m) const {
        auto it = index.find({g, m});
        return it == index.end() ? -1 : it->second;
    }
};

inline SliceBasis slice(const FactorComplex& c, int k, int l, std::optional<int> j = std::nullopt) {
    SliceBasis s;
    s.k = k;
    s.l = l;
    s.j = j;
    for (size_t g = 0; g < c.rank(); ++g) {
        if (j && c.gens[g].j != *j) continue;
        for (auto& m : monomials_of(*c.ring, Bidegree{k, l} - c.gens[g].deg)) {
            s.index.emplace(std::make_pair(g, m), static_cast<int>(s.elems.size()));
            s.elems.emplace_back(g, std::move(m));
        }
    }
    return s;
}

/// Image of a slice vector under a polynomial matrix, in the target slice.
inline SparseVec apply_matrix(const PolyMatrix& m, const SliceBasis& from, const SliceBasis& to, const SparseVec& v) {
    std::map<int, Rational> acc;
    for (const auto& [idx, c] : v) {
        const auto& [g, mono] = from.elems[idx];
        for (const auto& [h, p] : m.column(g))
            for (const auto& [pm, pc] : p.terms()) {
                int t = to.find(h, monomial_product(mono, pm));
                if (t < 0) throw std::logic_error("apply_matrix: image leaves the target slice (grading broken)");
                acc[t] += c * pc;
            }
    }
    SparseVec out;
    for (auto& [i, c] : acc)
        if (c != 0) out.emplace_back(i, std::move(c));
    return out;
}

inline SparseColumns slice_matrix(const PolyMatrix& m, const SliceBasis& from, const SliceBasis& to) {
    SparseColumns cols;
    cols.rows = static_cast<int>(to.size());
    cols.cols.reserve(from.size());
    for (size_t i = 0; i < from.size(); ++i) cols.cols.push_back(apply_matrix(m, from, to, unit_vector(static_cast<int>(i))));
    return cols;
}

/// Homology of one (k,l) slice of a complex whose differential raises (k,l)
/// by (1,1).
struct SliceHomology {
    SliceBasis basis;
    std::shared_ptr<HomologyReducer> reducer;
    int dim = 0;
};

inline SliceHomology slice_homology(const FactorComplex& c, int k, int l, bool with_basis) {
    SliceHomology h;
    h.basis = slice(c, k, l);
    if (h.basis.size() == 0) return h;
    SliceBasis next = slice(c, k + 1, l + 1);
    SliceBasis prev = slice(c, k - 1, l - 1);
    SparseColumns out = slice_matrix(c.d, h.basis, next);
    SparseColumns in = slice_matrix(c.d, prev, h.basis);
    if (!with_basis) {
        h.dim = static_cast<int>(h.basis.size() - rank_of(out) - rank_of(in));
        return h;
    }
    auto cycles = kernel_of(out);
    h.reducer = std::make_shared<HomologyReducer>(in.cols, cycles);
    h.dim = h.reducer->dim();
    return h;
}

/// Homology of a complex over a ring without `a`, every slice with l <= qmax.
class ComplexHomology {
public:
    ComplexHomology(const FactorComplex& c, int qmax, bool with_bases) : complex_(&c), qmax_(qmax) {
        if (c.ring->has_a()) throw std::invalid_argument("ComplexHomology needs a ring without a");
        if (c.rank() == 0) return;
        std::map<int, int> lmin;  // k -> smallest generator l
        for (const auto& g : c.gens) {
            auto it = lmin.find(g.deg.k);
            if (it == lmin.end() || g.deg.l < it->second) lmin[g.deg.k] = g.deg.l;
        }
        std::map<std::pair<int, int>, size_t> out_rank;
        for (const auto& [k, lo] : lmin)
            for (int l = lo; l <= qmax; ++l) {
                if (with_bases) {
                    auto h = slice_homology(c, k, l, true);
                    if (h.basis.size()) slices_.emplace(std::make_pair(k, l), std::move(h));
                    continue;
                }
                SliceHomology h;
                h.basis = slice(c, k, l);
                if (h.basis.size() == 0) continue;
                SliceBasis next = slice(c, k + 1, l + 1);
                size_t r_out = rank_of(slice_matrix(c.d, h.basis, next));
                out_rank[{k, l}] = r_out;
                auto pr = out_rank.find({k - 1, l - 1});
                size_t r_in = 0;
                if (pr != out_rank.end()) {
                    r_in = pr->second;
                } else {
                    SliceBasis prev = slice(c, k - 1, l - 1);
                    if (prev.size()) r_in = rank_of(slice_matrix(c.d, prev, h.basis));
                }
                h.dim = static_cast<int>(h.basis.size() - r_out - r_in);
                slices_.emplace(std::make_pair(k, l), std::move(h));
            }
    }

    int qmax() const { return qmax_; }
    const FactorComplex& complex() const { return *complex_; }
    const std::map<std::pair<int, int>, SliceHomology>& slices() const { return slices_; }

    int dim(int k, int l) const {
        auto it = slices_.find({k, l});
        return it == slices_.end() ? 0 : it->second.dim;
    }
    const SliceHomology* at(int k, int l) const {
        auto it = slices_.find({k, l});
        return it == slices_.end() ? nullptr : &it->second;
    }

    TriGradedDims dims(int j = 0) const {
        TriGradedDims out;
        out.qmax = qmax_;
        for (const auto& [kl, h] : slices_) out.add(j, kl.first, kl.second, h.dim);
        return out;
    }

private:
    const FactorComplex* complex_;
    int qmax_;
    std::map<std::pair<int, int>, SliceHomology> slices_;
};

/// Matrix (columns indexed by source classes) of the map a degree-0 chain map
/// induces on homology at slice (k,l).
inline SparseColumns induced_map(const ChainMap& f, const ComplexHomology& src, const ComplexHomology& tgt, int k,
                                 int l) {
    SparseColumns m;
    const SliceHomology* hs = src.at(k, l);
    const SliceHomology* ht = tgt.at(k, l);
    m.rows = ht ? ht->dim : 0;
    if (!hs || hs->dim == 0) return m;
    if (!hs->reducer) throw std::logic_error("induced_map: source homology computed without bases");
    for (const auto& rep : hs->reducer->representatives()) {
        if (!ht || ht->dim == 0) {
            m.cols.emplace_back();
            continue;
        }
        if (!ht->reducer) throw std::logic_error("induced_map: target homology computed without bases");
        SparseVec img = apply_matrix(f.matrix, hs->basis, ht->basis, rep);
        auto coords = ht->reducer->coordinates(img);
        if (!coords) throw std::logic_error("induced_map: image of a cycle is not a cycle (broken chain map)");
        m.cols.push_back(std::move(*coords));
    }
    return m;
}

inline TriGradedDims koszul_homology(const KoszulMatrix& closed, int qmax) {
    KoszulMatrix m = closed.ring->has_a() ? reduce_closed(closed) : closed;
    FactorComplex c = realize(m);
    return ComplexHomology(c, qmax, false).dims();
}

/// Homology of a closed graph, all in cube degree 0.
inline TriGradedDims graph_homology(const ResolutionGraph& g, int qmax) {
    if (!g.closed()) throw KoszulError("graph_homology: graph has external variables");
    return koszul_homology(koszul_of_graph(g), qmax);
}

/// sum (-1)^j t^k q^l dim H^j_{k,l}.
inline QSeries euler_characteristic(const TriGradedDims& h) {
    QSeries s(h.qmax);
    for (const auto& [t, v] : h.dims) {
        auto [j, k, l] = t;
        s.add(l, k, Rational(j % 2 ? -v : v));
    }
    return s;
}

/// Dimension of H(N (x) dual(M)) in one bidegree, i.e. of the space of
/// homotopy classes of maps M -> N of that degree. Internal variables of both
/// sides are excluded first; M must lose all of them.
inline long hom_space_dim(const KoszulMatrix& M, const KoszulMatrix& N, Bidegree deg) {
    auto ext_signature = [](const KoszulMatrix& m) {
        std::map<std::string, int> s;
        for (const auto& e : m.externals) s[e.name] += e.sign;
        return s;
    };
    if (ext_signature(M) != ext_signature(N)) throw KoszulError("hom_space_dim: potential mismatch");
    KoszulMatrix m = greedy_exclude(aggregate_a(M));
    KoszulMatrix n = greedy_exclude(aggregate_a(N));
    for (const auto& name : m.ring->names())
        if (name != "a" && !m.is_external(name))
            throw KoszulError("hom_space_dim: internal variable " + name + " of the source could not be excluded");
    KoszulMatrix t = tensor_rows(n, dualize(m));
    if (!t.potential().is_zero()) throw KoszulError("hom_space_dim: potential mismatch");
    FactorComplex c = realize(t);
    SliceBasis s = slice(c, deg.k, deg.l);
    if (s.size() == 0) return 0;
    SliceBasis next = slice(c, deg.k + 1, deg.l + 1);
    SliceBasis prev = slice(c, deg.k - 1, deg.l - 1);
    return static_cast<long>(s.size() - rank_of(slice_matrix(c.d, s, next)) - rank_of(slice_matrix(c.d, prev, s)));
}

/// Outcome of comparing two dimension tables up to an overall shift.
struct ShiftComparison {
    enum class Status { Match, NoShift, Inconclusive };
    Status status = Status::Inconclusive;
    Tridegree shift{0, 0, 0};  // added to h1's gradings to land on h2
    int window_lo = 0;         // reliable l-range of h1
    int window_hi = 0;
    std::string reason;
};

/// Finds the shift aligning h1 to h2, comparing only where both tables are
/// complete. The candidate aligns the lowest l and then the smallest (k, j)
/// in that row.
inline ShiftComparison compare_up_to_shift(const TriGradedDims& h1, const TriGradedDims& h2) {
    ShiftComparison r;
    if (h1.dims.empty() || h2.dims.empty()) {
        r.reason = "one of the tables is empty below its cutoff";
        return r;
    }
    auto lowest = [](const TriGradedDims& h) {
        int lmin = std::get<2>(h.dims.begin()->first);
        for (const auto& [t, v] : h.dims) lmin = std::min(lmin, std::get<2>(t));
        std::pair<int, int> best{INT_MAX, INT_MAX};  // (k, j)
        for (const auto& [t, v] : h.dims)
            if (std::get<2>(t) == lmin) best = std::min(best, std::make_pair(std::get<1>(t), std::get<0>(t)));
        return std::make_tuple(best.second, best.first, lmin);
    };
    auto [j1, k1, l1] = lowest(h1);
    auto [j2, k2, l2] = lowest(h2);
    int dj = j2 - j1, dk = k2 - k1, dl = l2 - l1;
    r.shift = {dj, dk, dl};
    int w1 = std::min(h1.qmax, h2.qmax - dl);
    r.window_lo = l1;
    r.window_hi = w1;
    if (w1 - l1 < 2) {
        r.reason = "reliable window too small (raise qmax)";
        return r;
    }
    for (const auto& [t, v] : h1.dims) {
        auto [j, k, l] = t;
        if (l > w1) continue;
        if (h2.get(j + dj, k + dk, l + dl) != v) {
            r.status = ShiftComparison::Status::NoShift;
            std::ostringstream os;
            os << "dimension differs at (" << j << ',' << k << ',' << l << ")";
            r.reason = os.str();
            return r;
        }
    }
    for (const auto& [t, v] : h2.dims) {
        auto [j, k, l] = t;
        if (l - dl > w1) continue;
        if (h1.get(j - dj, k - dk, l - dl) != v) {
            r.status = ShiftComparison::Status::NoShift;
            std::ostringstream os;
            os << "dimension differs at (" << j << ',' << k << ',' << l << ") of the second table";
            r.reason = os.str();
            return r;
        }
    }
    r.status = ShiftComparison::Status::Match;
    return r;
}

}  // namespace trigrad
