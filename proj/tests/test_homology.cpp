#include "trigrad/cube.hpp"
#include "trigrad/graphs.hpp"
#include "trigrad/homology.hpp"

#include <gtest/gtest.h>

using namespace trigrad;

namespace {

/// dims of Q[x_1..x_n]{k,l0} up to qmax, in cube degree j.
TriGradedDims free_module(int n, int k, int l0, int qmax, int j = 0) {
    TriGradedDims h;
    h.qmax = qmax;
    for (int l = l0; l <= qmax; l += 2) {
        int d = (l - l0) / 2;
        long count = 1;  // C(d + n - 1, n - 1)
        for (int i = 1; i < n; ++i) count = count * (d + i) / i;
        h.add(j, k, l, count);
    }
    return h;
}

TriGradedDims plus(TriGradedDims a, const TriGradedDims& b) {
    for (const auto& [t, v] : b.dims) a.add(std::get<0>(t), std::get<1>(t), std::get<2>(t), v);
    return a;
}

}  // namespace

TEST(Slices, FreeRankOneModule) {
    Ring r = make_ring({"x1"});
    FactorComplex c = empty_complex(r, 1);
    c.gens[0].deg = {-1, 1};
    for (int i = 0; i < 5; ++i) {
        SliceBasis s = slice(c, -1, 1 + 2 * i);
        ASSERT_EQ(s.size(), 1u);
    }
    EXPECT_EQ(slice(c, -1, -1).size(), 0u);
    EXPECT_EQ(slice(c, -1, 2).size(), 0u);
    EXPECT_EQ(slice(c, 0, 1).size(), 0u);
}

TEST(Slices, MonomialCounts) {
    Ring r = make_ring({"x1", "x2", "x3"});
    EXPECT_EQ(monomials_of(*r, {0, 0}).size(), 1u);
    EXPECT_EQ(monomials_of(*r, {0, 2}).size(), 3u);
    EXPECT_EQ(monomials_of(*r, {0, 4}).size(), 6u);
    EXPECT_EQ(monomials_of(*r, {0, 3}).size(), 0u);
    EXPECT_EQ(monomials_of(*r, {1, 2}).size(), 0u);
}

TEST(GraphHomology, Circle) {
    EXPECT_EQ(graph_homology(circle_graph(), 21), free_module(1, -1, 1, 21));
}

TEST(GraphHomology, Theta) {
    TriGradedDims want = plus(free_module(2, -1, 1, 12), free_module(2, -2, 4, 12));
    EXPECT_EQ(graph_homology(theta_graph(), 12), want);
}

TEST(GraphHomology, TwoCirclesFromTheOneCrossingSmoothing) {
    MarkedDiagram d = build_marked_diagram(parse_braid("1"));
    EXPECT_EQ(graph_homology(resolve(d, 0), 10), plus(free_module(2, -1, 1, 10), free_module(2, -2, 2, 10)));
    EXPECT_EQ(graph_homology(resolve(d, 1), 10), graph_homology(theta_graph(), 10));
}

TEST(GraphHomology, AActsTriviallyBeforeStripping) {
    KoszulMatrix m = koszul_of_graph(theta_graph());
    KoszulMatrix g = aggregate_a(m);
    KoszulMatrix stripped = greedy_exclude(strip_a(g));
    KoszulMatrix kept = greedy_exclude(g);
    FactorComplex c = realize(kept);
    for (int l = 0; l <= 6; ++l) {
        for (int k = -3; k <= 0; ++k) {
            SliceBasis s = slice(c, k, l);
            SliceBasis next = slice(c, k + 1, l + 1), prev = slice(c, k - 1, l - 1);
            long dim = static_cast<long>(s.size()) - static_cast<long>(rank_of(slice_matrix(c.d, s, next))) -
                       static_cast<long>(rank_of(slice_matrix(c.d, prev, s)));
            long want = koszul_homology(stripped, 6).get(0, k, l);
            EXPECT_EQ(dim, want) << k << ',' << l;
        }
    }
}

TEST(Euler, UnknotAndEmpty) {
    QSeries e = euler_characteristic(free_module(1, -1, 1, 9));
    EXPECT_EQ(e.str(), "q*t^-1 + q^3*t^-1 + q^5*t^-1 + q^7*t^-1 + q^9*t^-1 + O(q^10)");
    TriGradedDims none;
    none.qmax = 5;
    EXPECT_TRUE(euler_characteristic(none).is_zero());
}

TEST(Euler, SkeinAtOneCrossing) {
    // <D sigma> = <D e> - q^2 <D> for D the two-strand trivial braid
    const int qmax = 12;
    QSeries cross = euler_characteristic(link_homology(parse_braid("1"), qmax));
    MarkedDiagram d = build_marked_diagram(parse_braid("1"));
    QSeries wide = euler_characteristic(graph_homology(resolve(d, 1), qmax));
    QSeries two = euler_characteristic(graph_homology(resolve(d, 0), qmax));
    EXPECT_EQ(cross, wide - two * LaurentQT::q(2));
}

TEST(HomSpace, SmallGraphDimensions) {
    KoszulMatrix g110 = *named_open_matrix("gamma110");
    KoszulMatrix g100 = *named_open_matrix("gamma100");
    KoszulMatrix s = *named_open_matrix("S");
    EXPECT_EQ(hom_space_dim(g110, g100, {0, 0}), 1);
    EXPECT_EQ(hom_space_dim(g100, g110, {0, 0}), 0);
    EXPECT_EQ(hom_space_dim(s, s, {0, 0}), 1);
    EXPECT_THROW(hom_space_dim(s, g110, {0, 0}), KoszulError);
}

TEST(HomSpace, IdentityIsTheOnlyDegreeZeroEndomorphismOfAnArc) {
    ResolutionGraph arc;
    arc.variables = {"x1", "x2"};
    arc.arcs = {{1, 0}};
    KoszulMatrix m = koszul_of_graph(arc);
    EXPECT_EQ(hom_space_dim(m, m, {0, 0}), 1);
    EXPECT_EQ(hom_space_dim(m, m, {0, 2}), 1);  // multiplication by x1
}

TEST(ReidemeisterThree, ClosureDimensionIdentity) {
    const int qmax = 10;
    TriGradedDims h1 = koszul_homology(*named_closed_matrix("gamma1-closure"), qmax);
    TriGradedDims h4 = koszul_homology(*named_closed_matrix("gamma4-closure"), qmax);
    TriGradedDims hu = koszul_homology(*named_closed_matrix("upsilon-closure"), qmax);
    TriGradedDims rhs = hu;
    for (const auto& [t, v] : h4.dims) rhs.add(std::get<0>(t), std::get<1>(t), std::get<2>(t) + 2, v);
    EXPECT_EQ(h1, rhs);
    EXPECT_GT(h1.total(), 0);
}

TEST(CompareUpToShift, FindsAndRejectsShifts) {
    TriGradedDims h = plus(free_module(2, -1, 1, 12), free_module(1, -3, 6, 12, 1));
    TriGradedDims moved;
    moved.qmax = 12;
    for (const auto& [t, v] : h.dims) moved.add(std::get<0>(t) + 1, std::get<1>(t) + 1, std::get<2>(t), v);
    ShiftComparison c = compare_up_to_shift(h, moved);
    EXPECT_EQ(c.status, ShiftComparison::Status::Match);
    EXPECT_EQ(c.shift, (Tridegree{1, 1, 0}));

    ShiftComparison bad = compare_up_to_shift(free_module(1, -1, 1, 12), free_module(2, -1, 1, 12));
    EXPECT_EQ(bad.status, ShiftComparison::Status::NoShift);

    TriGradedDims empty;
    empty.qmax = 12;
    EXPECT_EQ(compare_up_to_shift(h, empty).status, ShiftComparison::Status::Inconclusive);
    EXPECT_EQ(compare_up_to_shift(free_module(1, -1, 1, 2), free_module(1, -1, 1, 2)).status,
              ShiftComparison::Status::Inconclusive);
}

TEST(CompareUpToShift, UnknotVersusHopf) {
    ShiftComparison c = compare_up_to_shift(link_homology(parse_braid("", 1), 10), link_homology(parse_braid("1 1"), 10));
    EXPECT_EQ(c.status, ShiftComparison::Status::NoShift);
}

TEST(InducedMap, ChiCompositeIsMultiplication) {
    // closed one-crossing diagram: chi1 chi0 acts on H(two circles) as x1 - x4
    const int qmax = 8;
    BraidWord b = parse_braid("1");
    MarkedDiagram d = build_marked_diagram(b);
    KoszulMatrix m0 = reduce_vertex(vertex_matrix(d, 0), false, "x1");
    KoszulMatrix m1 = reduce_vertex(vertex_matrix(d, 1), false, "x1");
    ASSERT_EQ(m0.ring->names(), m1.ring->names());
    size_t row = 0;
    while (!m0.rows[row].pinned) ++row;
    Polynomial y = m0.track(crossing_factor(d, m0.origin, 0));
    ChainMap chi0 = flip_map(FlipKind::PsiPrime, m0, m1, row, y);
    ChainMap chi1 = flip_map(FlipKind::Psi, m1, m0, row, y);
    FactorComplex f0 = realize(m0), f1 = realize(m1);
    ComplexHomology h0(f0, qmax, true), h1(f1, qmax + 2, true);
    ChainMap both{chi1.matrix * chi0.matrix};
    ChainMap mult{PolyMatrix::identity(m0.ring, f0.rank()).times(y)};
    // both maps raise l by 2, so compare images class by class
    for (const auto& [kl, s] : h0.slices()) {
        auto [k, l] = kl;
        if (l + 2 > qmax || !s.reducer) continue;
        const SliceHomology* t = h0.at(k, l + 2);
        ASSERT_NE(t, nullptr);
        for (const auto& rep : s.reducer->representatives()) {
            SparseVec u = apply_matrix(both.matrix, s.basis, t->basis, rep);
            SparseVec v = apply_matrix(mult.matrix, s.basis, t->basis, rep);
            EXPECT_EQ(t->reducer->coordinates(u), t->reducer->coordinates(v));
        }
    }
}

TEST(InducedMap, ZeroMap) {
    Ring r = make_ring({"x1"});
    FactorComplex c = empty_complex(r, 1);
    ComplexHomology h(c, 6, true);
    ChainMap zero{PolyMatrix(r, 1, 1)};
    for (const auto& [kl, s] : h.slices()) {
        SparseColumns m = induced_map(zero, h, h, kl.first, kl.second);
        for (const auto& col : m.cols) EXPECT_TRUE(col.empty());
    }
}
