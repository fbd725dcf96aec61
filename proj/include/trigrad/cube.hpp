#pragma once

#include "trigrad/braid.hpp"
#include "trigrad/factor_complex.hpp"
#include "trigrad/homology.hpp"
#include "trigrad/koszul.hpp"
#include "trigrad/parallel.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace trigrad {

/// Resolution graph of a marked diagram: bit c of `mask` picks the wide edge
/// (1) or the oriented smoothing (0) at crossing c.
inline ResolutionGraph resolve(const MarkedDiagram& d, unsigned mask) {
    ResolutionGraph g;
    g.variables = d.names();
    g.arcs = d.arcs;
    for (size_t c = 0; c < d.crossings.size(); ++c) {
        const auto& cr = d.crossings[c];
        if (mask >> c & 1) {
            g.wide_edges.push_back({cr.x1, cr.x2, cr.x3, cr.x4});
        } else {
            g.arcs.push_back({cr.x4, cr.x1});
            g.arcs.push_back({cr.x3, cr.x2});
        }
    }
    return g;
}

/// Vertex matrix before any reduction: per crossing a linear row and a pinned
/// row, put in the shape where the two resolutions differ only in the pinned
/// entry ((0, x2-x3) versus (0, (x2-x3)(x4-x2))), followed by the arc rows.
inline KoszulMatrix vertex_matrix(const MarkedDiagram& d, unsigned mask) {
    std::vector<std::string> names{"a"};
    for (const auto& n : d.names()) names.push_back(n);
    KoszulMatrix m = make_koszul(make_ring(names));
    auto x = [&](int v) { return Polynomial::variable(m.ring, static_cast<size_t>(v + 1)); };
    for (size_t c = 0; c < d.crossings.size(); ++c) {
        const auto& cr = d.crossings[c];
        size_t i = m.rows.size();
        if (mask >> c & 1) {
            auto [lin, quad] = wide_edge_rows(m.ring, cr.x1 + 1, cr.x2 + 1, cr.x3 + 1, cr.x4 + 1);
            m.rows.push_back(lin);
            m.rows.push_back(quad);
            m = row_op(m, i + 1, i, -x(cr.x2));
        } else {
            m.rows.push_back(arc_row(m.ring, cr.x1 + 1, cr.x4 + 1));
            m.rows.push_back(arc_row(m.ring, cr.x2 + 1, cr.x3 + 1));
            m = row_op(m, i, i + 1, Polynomial::constant(m.ring, 1));
        }
        m.rows[i + 1].pinned = true;
    }
    for (const auto& arc : d.arcs) m.rows.push_back(arc_row(m.ring, arc.head + 1, arc.tail + 1));
    return m;
}

/// x4 - x2 for crossing c, the factor relating the two pinned entries.
inline Polynomial crossing_factor(const MarkedDiagram& d, const Ring& ring, size_t c) {
    const auto& cr = d.crossings.at(c);
    return Polynomial::variable(ring, d.name(cr.x4)) - Polynomial::variable(ring, d.name(cr.x2));
}

struct CubeVertex {
    unsigned mask = 0;
    int j = 0;
    Bidegree shift;
    KoszulMatrix koszul;
    Simplified complex;
};

struct CubeEdge {
    unsigned from = 0;
    unsigned to = 0;
    int crossing = 0;
    int sign = 1;
    ChainMap map;  // between the simplified vertex complexes, sign included
};

struct CubeComplex {
    MarkedDiagram diagram;
    bool reduced = false;
    std::string basepoint;
    std::vector<CubeVertex> vertices;  // indexed by resolution mask
    std::vector<CubeEdge> edges;
};

/// Cube coordinate of crossing c at a resolution: 1 when the crossing sits
/// at the far end of its cone (wide edge for positive, smoothing for negative).
inline int cube_coordinate(const MarkedDiagram& d, unsigned mask, size_t c) {
    int state = mask >> c & 1;
    return d.crossings[c].sign > 0 ? state : 1 - state;
}

inline KoszulMatrix reduce_vertex(const KoszulMatrix& raw, bool reduced, const std::string& basepoint) {
    KoszulMatrix m = raw;
    if (reduced) m = eliminate_variable(m, basepoint, Polynomial(m.ring));
    return greedy_exclude(strip_a(aggregate_a(m)));
}

struct CubeOptions {
    bool reduced = false;
    std::string basepoint = "x1";
    int marks = 1;
    int workers = 1;
};

class CubeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline CubeComplex build_cube(const BraidWord& b, const CubeOptions& opt = {}) {
    CubeComplex cube;
    cube.diagram = build_marked_diagram(b, opt.marks);
    cube.reduced = opt.reduced;
    cube.basepoint = opt.basepoint;
    const MarkedDiagram& d = cube.diagram;
    const size_t c = d.crossings.size();
    if (c > 20) throw CubeError("too many crossings for a cube of resolutions");
    if (opt.reduced) {
        auto names = d.names();
        if (std::find(names.begin(), names.end(), opt.basepoint) == names.end())
            throw CubeError("unknown basepoint variable " + opt.basepoint);
    }
    const size_t nv = size_t{1} << c;
    cube.vertices.resize(nv);
    parallel_for(nv, opt.workers, [&](size_t mask) {
        CubeVertex v;
        v.mask = static_cast<unsigned>(mask);
        v.koszul = reduce_vertex(vertex_matrix(d, v.mask), opt.reduced, opt.basepoint);
        for (size_t i = 0; i < c; ++i) {
            int e = cube_coordinate(d, v.mask, i);
            if (d.crossings[i].sign > 0) {
                v.j += e - 1;
                if (e == 0) v.shift += {0, 2};
            } else {
                v.j += e;
                v.shift += {0, -2};
            }
        }
        FactorComplex fc = shifted(realize(v.koszul), v.shift, v.j);
        v.complex = simplify(fc);
        cube.vertices[mask] = std::move(v);
    });
    for (size_t mask = 1; mask < nv; ++mask)
        if (cube.vertices[mask].koszul.ring->names() != cube.vertices[0].koszul.ring->names())
            throw CubeError("vertex rings differ; the exclusion plan is not uniform");

    for (size_t mask = 0; mask < nv; ++mask)
        for (size_t i = 0; i < c; ++i) {
            if (cube_coordinate(d, static_cast<unsigned>(mask), i) != 0) continue;
            CubeEdge e;
            e.from = static_cast<unsigned>(mask);
            e.to = static_cast<unsigned>(mask ^ (1u << i));
            e.crossing = static_cast<int>(i);
            int before = 0;
            for (size_t p = 0; p < i; ++p) before += cube_coordinate(d, e.from, p);
            e.sign = before % 2 ? -1 : 1;
            cube.edges.push_back(std::move(e));
        }
    parallel_for(cube.edges.size(), opt.workers, [&](size_t k) {
        CubeEdge& e = cube.edges[k];
        const CubeVertex& src = cube.vertices[e.from];
        const CubeVertex& tgt = cube.vertices[e.to];
        size_t row = 0, seen = 0;
        for (; row < src.koszul.rows.size(); ++row)
            if (src.koszul.rows[row].pinned && seen++ == static_cast<size_t>(e.crossing)) break;
        Polynomial q = src.koszul.track(crossing_factor(d, src.koszul.origin, e.crossing));
        FlipKind kind = d.crossings[e.crossing].sign > 0 ? FlipKind::PsiPrime : FlipKind::Psi;
        ChainMap f = flip_map(kind, src.koszul, tgt.koszul, row, q);
        f.matrix = f.matrix * Rational(e.sign);
        e.map = transport(f, src.complex, tgt.complex);
    });
    return cube;
}

/// The whole cube as one complex: generators of every vertex, d signed by
/// (-1)^j, del assembled from the signed edge maps.
inline FactorComplex total_complex(const CubeComplex& cube) {
    std::vector<size_t> offset(cube.vertices.size() + 1, 0);
    for (size_t v = 0; v < cube.vertices.size(); ++v)
        offset[v + 1] = offset[v] + cube.vertices[v].complex.complex.rank();
    Ring ring = cube.vertices.at(0).complex.complex.ring;
    FactorComplex t = empty_complex(ring, offset.back());
    for (size_t v = 0; v < cube.vertices.size(); ++v) {
        const auto& c = cube.vertices[v].complex.complex;
        Rational s = c.rank() && c.gens[0].j % 2 ? -1 : 1;
        for (size_t g = 0; g < c.rank(); ++g) {
            t.gens[offset[v] + g] = c.gens[g];
            for (const auto& [h, p] : c.d.column(g)) t.d.add(offset[v] + h, offset[v] + g, p * s);
        }
    }
    for (const auto& e : cube.edges)
        for (size_t g = 0; g < e.map.matrix.cols(); ++g)
            for (const auto& [h, p] : e.map.matrix.column(g)) t.del.add(offset[e.to] + h, offset[e.from] + g, p);
    return t;
}

/// Rank of a block matrix assembled from induced maps.
inline size_t block_rank(const std::vector<std::vector<const SparseColumns*>>& blocks,
                         const std::vector<int>& row_dims, const std::vector<int>& col_dims) {
    Reducer r;
    for (size_t bc = 0; bc < col_dims.size(); ++bc)
        for (int c = 0; c < col_dims[bc]; ++c) {
            SparseVec col;
            int row_off = 0;
            for (size_t br = 0; br < row_dims.size(); ++br) {
                const SparseColumns* m = blocks[br][bc];
                if (m && static_cast<size_t>(c) < m->cols.size())
                    for (const auto& [i, v] : m->cols[c]) col.emplace_back(row_off + i, v);
                row_off += row_dims[br];
            }
            r.insert(std::move(col));
        }
    return r.rank();
}

/// Cohomology of (CH(D), del) where CH^j is the sum of vertex homologies.
inline TriGradedDims link_homology(const CubeComplex& cube, int qmax, int workers = 1) {
    const size_t nv = cube.vertices.size();
    std::vector<std::unique_ptr<ComplexHomology>> H(nv);
    parallel_for(nv, workers, [&](size_t v) {
        H[v] = std::make_unique<ComplexHomology>(cube.vertices[v].complex.complex, qmax, nv > 1);
    });
    std::set<std::pair<int, int>> kls;
    for (const auto& h : H)
        for (const auto& [kl, s] : h->slices())
            if (s.dim) kls.insert(kl);
    std::vector<std::pair<int, int>> order(kls.begin(), kls.end());
    std::vector<std::map<int, long>> results(order.size());
    parallel_for(order.size(), workers, [&](size_t idx) {
        auto [k, l] = order[idx];
        std::map<int, std::vector<size_t>> by_j;
        for (size_t v = 0; v < nv; ++v)
            if (H[v]->dim(k, l)) by_j[cube.vertices[v].j].push_back(v);
        std::map<int, long> dimC;
        for (const auto& [j, vs] : by_j)
            for (size_t v : vs) dimC[j] += H[v]->dim(k, l);
        std::map<int, size_t> rank_out;
        for (const auto& [j, vs] : by_j) {
            auto next = by_j.find(j + 1);
            if (next == by_j.end()) continue;
            std::vector<SparseColumns> maps;
            std::vector<std::tuple<size_t, size_t, size_t>> where;  // (row block, col block, map idx)
            std::map<size_t, size_t> col_block, row_block;
            for (size_t i = 0; i < vs.size(); ++i) col_block[vs[i]] = i;
            for (size_t i = 0; i < next->second.size(); ++i) row_block[next->second[i]] = i;
            maps.reserve(cube.edges.size());
            for (const auto& e : cube.edges) {
                if (!col_block.count(e.from) || !row_block.count(e.to)) continue;
                maps.push_back(induced_map(e.map, *H[e.from], *H[e.to], k, l));
                where.emplace_back(row_block[e.to], col_block[e.from], maps.size() - 1);
            }
            std::vector<std::vector<const SparseColumns*>> blocks(next->second.size(),
                                                                  std::vector<const SparseColumns*>(vs.size(), nullptr));
            for (const auto& [br, bc, mi] : where) blocks[br][bc] = &maps[mi];
            std::vector<int> rd, cd;
            for (size_t v : next->second) rd.push_back(H[v]->dim(k, l));
            for (size_t v : vs) cd.push_back(H[v]->dim(k, l));
            rank_out[j] = block_rank(blocks, rd, cd);
        }
        for (const auto& [j, dim] : dimC) {
            long h = dim;
            if (rank_out.count(j)) h -= static_cast<long>(rank_out[j]);
            if (rank_out.count(j - 1)) h -= static_cast<long>(rank_out[j - 1]);
            if (h) results[idx][j] = h;
        }
    });
    TriGradedDims out;
    out.qmax = qmax;
    for (size_t idx = 0; idx < order.size(); ++idx)
        for (const auto& [j, h] : results[idx]) out.add(j, order[idx].first, order[idx].second, h);
    return out;
}

inline TriGradedDims link_homology(const BraidWord& b, int qmax, const CubeOptions& opt = {}) {
    return link_homology(build_cube(b, opt), qmax, opt.workers);
}

/// Outcome of checking H = Hbar (x) Q[x] inside the reliable window.
struct ReduceCheck {
    bool decided = false;
    bool holds = false;
    std::string detail;
};

inline ReduceCheck reduce_mode_check(const TriGradedDims& unreduced, const TriGradedDims& reduced) {
    ReduceCheck r;
    int limit = std::min(unreduced.qmax, reduced.qmax) - 2;
    std::set<std::pair<int, int>> jk;
    int lmin = INT_MAX;
    for (const auto* h : {&unreduced, &reduced})
        for (const auto& [t, v] : h->dims) {
            jk.insert({std::get<0>(t), std::get<1>(t)});
            lmin = std::min(lmin, std::get<2>(t));
        }
    if (jk.empty() || limit < lmin) {
        r.detail = "cutoff too small to decide";
        return r;
    }
    r.decided = true;
    for (const auto& [j, k] : jk)
        for (int l = lmin; l <= limit; ++l) {
            long want = 0;
            for (int i = 0; l - 2 * i >= lmin; ++i) want += reduced.get(j, k, l - 2 * i);
            if (unreduced.get(j, k, l) != want) {
                std::ostringstream os;
                os << "mismatch at (" << j << ',' << k << ',' << l << "): " << unreduced.get(j, k, l) << " vs "
                   << want;
                r.detail = os.str();
                return r;
            }
        }
    r.holds = true;
    return r;
}

inline ReduceCheck reduce_mode_check(const BraidWord& b, int qmax, const CubeOptions& opt = {}) {
    CubeOptions unred = opt, red = opt;
    unred.reduced = false;
    red.reduced = true;
    return reduce_mode_check(link_homology(b, qmax, unred), link_homology(b, qmax, red));
}

/// Text dump of every vertex generator table and edge matrix.
inline std::string dump_cube(const CubeComplex& cube) {
    std::ostringstream os;
    os << "braid " << render_braid(cube.diagram.braid) << " marks " << cube.diagram.marks
       << (cube.reduced ? " reduced " + cube.basepoint : std::string(" unreduced")) << '\n';
    for (const auto& v : cube.vertices) {
        const auto& c = v.complex.complex;
        os << "vertex " << v.mask << " j " << v.j << " shift " << v.shift << " ring";
        for (const auto& n : c.ring->names()) os << ' ' << n;
        os << '\n' << v.koszul.dump();
        for (size_t g = 0; g < c.rank(); ++g)
            os << "  gen " << g << " p" << c.gens[g].parity << ' ' << c.gens[g].deg << " j" << c.gens[g].j << '\n';
        os << c.d.str();
    }
    for (const auto& e : cube.edges) {
        os << "edge " << e.from << " -> " << e.to << " crossing " << e.crossing << " sign " << e.sign << '\n';
        os << e.map.matrix.str();
    }
    return os.str();
}

}  // namespace trigrad
