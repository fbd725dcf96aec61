#include "trigrad/cube.hpp"
#include "trigrad/factor_complex.hpp"
#include "trigrad/graphs.hpp"
#include "trigrad/homology.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace trigrad;

namespace {

Polynomial P(const Ring& r, const std::string& s) { return parse_polynomial(r, s); }

/// The local crossing: smoothing and wide edge, each with its second row
/// pinned, over Q[a, x1..x4].
std::pair<KoszulMatrix, KoszulMatrix> local_crossing() {
    BraidWord b = parse_braid("1");
    MarkedDiagram d = build_marked_diagram(b);
    d.arcs.clear();
    return {vertex_matrix(d, 0), vertex_matrix(d, 1)};
}

const std::vector<std::string> kTestBraids = {"n=1", "1", "-1", "1 -1", "1 1 1", "1 -2", "-1 -1 -1"};

}  // namespace

TEST(Realize, SingleArcPresentation) {
    Ring r = make_ring({"a", "x1", "x2"});
    KoszulMatrix m = make_koszul(r);
    m.rows.push_back(arc_row(r, 1, 2));
    FactorComplex c = realize(m);
    ASSERT_EQ(c.rank(), 2u);
    EXPECT_EQ(c.d.get(1, 0), P(r, "a"));
    EXPECT_EQ(c.d.get(0, 1), P(r, "x1 - x2"));
    EXPECT_EQ(c.gens[0].deg, (Bidegree{0, 0}));
    EXPECT_EQ(c.gens[1].deg, (Bidegree{-1, 1}));
    EXPECT_NE(c.gens[0].parity, c.gens[1].parity);
    EXPECT_TRUE(d_squared_is_potential(c));
    EXPECT_TRUE(is_graded(c));
}

TEST(Realize, SmoothingMatchesTwoByTwoPresentation) {
    auto [c0, c1] = local_crossing();
    KoszulMatrix raw = make_koszul(c0.ring);
    raw.rows = {arc_row(raw.ring, 3, 1), arc_row(raw.ring, 4, 2)};
    FactorComplex f = realize(raw);
    ASSERT_EQ(f.rank(), 4u);
    // even part {0, 3} -> odd part {1, 2}
    EXPECT_EQ(f.d.get(1, 0), P(raw.ring, "a"));
    EXPECT_EQ(f.d.get(2, 0), P(raw.ring, "a"));
    EXPECT_EQ(f.d.get(1, 3), P(raw.ring, "-(x4 - x2)"));
    EXPECT_EQ(f.d.get(2, 3), P(raw.ring, "x3 - x1"));
    EXPECT_TRUE(d_squared_is_potential(f));
}

TEST(Realize, DSquaredIsPotentialOnOpenGraphs) {
    for (const char* name : {"gamma000", "gamma110", "gamma111", "gamma4", "upsilon", "S"}) {
        KoszulMatrix m = *named_open_matrix(name);
        FactorComplex c = realize(m);
        EXPECT_FALSE(c.potential.is_zero()) << name;
        EXPECT_TRUE(d_squared_is_potential(c)) << name;
        EXPECT_TRUE(is_graded(c)) << name;
    }
}

TEST(Realize, DSquaredVanishesOnEveryResolution) {
    for (const auto& w : kTestBraids) {
        MarkedDiagram d = build_marked_diagram(parse_braid(w));
        for (unsigned mask = 0; mask < (1u << d.crossings.size()); ++mask) {
            FactorComplex g = realize(koszul_of_graph(resolve(d, mask)));
            EXPECT_TRUE(d_squared_is_potential(g)) << w << " mask " << mask;
            EXPECT_TRUE(g.potential.is_zero());
            FactorComplex v = realize(vertex_matrix(d, mask));
            EXPECT_TRUE(d_squared_is_potential(v)) << w << " mask " << mask;
            EXPECT_TRUE(is_graded(v));
        }
    }
}

TEST(RowOpMap, IsAChainIsomorphism) {
    std::vector<std::tuple<std::string, size_t, size_t, std::string>> cases = {
        {"gamma111", 0, 1, "1"}, {"gamma111", 6, 0, "-x2"}, {"gamma110", 2, 0, "1"},
        {"upsilon", 1, 0, "x1"},  {"upsilon", 0, 2, "0"},    {"S", 1, 0, "1"}};
    for (const auto& [name, i, j, lam] : cases) {
        KoszulMatrix m = *named_open_matrix(name);
        Polynomial l = P(m.ring, lam);
        KoszulMatrix t = row_op(m, i, j, l);
        FactorComplex src = realize(m), tgt = realize(t);
        ChainMap f = row_op_map(m, i, j, l);
        EXPECT_TRUE(commutes_with_d(f, src, tgt)) << name << " [" << i << j << "]_" << lam;
        EXPECT_EQ(map_bidegree(f, src, tgt), (Bidegree{0, 0}));
        ChainMap back = row_op_map(t, i, j, -l);
        EXPECT_EQ(back.matrix * f.matrix, PolyMatrix::identity(m.ring, src.rank()));
    }
}

TEST(ChiMaps, LocalCrossing) {
    auto [c0, c1] = local_crossing();
    Polynomial y = P(c0.ring, "x1 - x4");  // x4 - x2 in crossing labels
    BraidWord b = parse_braid("1");
    MarkedDiagram d = build_marked_diagram(b);
    EXPECT_EQ(crossing_factor(d, c0.ring, 0), y);
    FactorComplex f0 = realize(c0), f1 = realize(c1);
    ChainMap chi0 = flip_map(FlipKind::PsiPrime, c0, c1, 1, y);
    ChainMap chi1 = flip_map(FlipKind::Psi, c1, c0, 1, y);
    EXPECT_TRUE(commutes_with_d(chi0, f0, f1));
    EXPECT_TRUE(commutes_with_d(chi1, f1, f0));
    EXPECT_EQ(map_bidegree(chi0, f0, f1), (Bidegree{0, 2}));
    EXPECT_EQ(map_bidegree(chi1, f1, f0), (Bidegree{0, 0}));
    PolyMatrix yid = PolyMatrix::identity(c0.ring, 4).times(y);
    EXPECT_EQ(chi1.matrix * chi0.matrix, yid);
    EXPECT_EQ(chi0.matrix * chi1.matrix, yid);
    EXPECT_THROW(flip_map(FlipKind::Psi, c0, c1, 1, y), KoszulError);
}

TEST(ChiMaps, EveryCubeEdgeOfTestBraids) {
    for (const auto& w : kTestBraids) {
        MarkedDiagram d = build_marked_diagram(parse_braid(w));
        const size_t c = d.crossings.size();
        for (unsigned mask = 0; mask < (1u << c); ++mask)
            for (size_t i = 0; i < c; ++i) {
                if (mask >> i & 1) continue;
                KoszulMatrix m0 = vertex_matrix(d, mask), m1 = vertex_matrix(d, mask | (1u << i));
                Polynomial y = crossing_factor(d, m0.ring, i);
                FactorComplex f0 = realize(m0), f1 = realize(m1);
                ChainMap chi0 = flip_map(FlipKind::PsiPrime, m0, m1, 2 * i + 1, y);
                ChainMap chi1 = flip_map(FlipKind::Psi, m1, m0, 2 * i + 1, y);
                EXPECT_TRUE(commutes_with_d(chi0, f0, f1)) << w;
                EXPECT_TRUE(commutes_with_d(chi1, f1, f0)) << w;
                EXPECT_EQ(map_bidegree(chi0, f0, f1), (Bidegree{0, 2})) << w;
                EXPECT_EQ(map_bidegree(chi1, f1, f0), (Bidegree{0, 0})) << w;
                PolyMatrix yid = PolyMatrix::identity(m0.ring, f0.rank()).times(y);
                EXPECT_EQ(chi1.matrix * chi0.matrix, yid) << w;
                EXPECT_EQ(chi0.matrix * chi1.matrix, yid) << w;
            }
    }
}

TEST(Cone, CrossingConesAreGradedAndSquareToPotential) {
    auto [c0, c1] = local_crossing();
    Polynomial y = P(c0.ring, "x1 - x4");
    FactorComplex f0 = realize(c0), f1 = realize(c1);
    FactorComplex pos = crossing_cone(1, f0, f1, flip_map(FlipKind::PsiPrime, c0, c1, 1, y));
    FactorComplex neg = crossing_cone(-1, f0, f1, flip_map(FlipKind::Psi, c1, c0, 1, y));
    for (const auto* c : {&pos, &neg}) {
        EXPECT_TRUE(d_squared_is_potential(*c));
        EXPECT_TRUE(cube_relations_hold(*c));
        EXPECT_TRUE(is_graded(*c));
    }
    EXPECT_EQ(pos.gens[0].j, -1);
    EXPECT_EQ(pos.gens[0].deg, (Bidegree{0, 2}));
    EXPECT_EQ(neg.gens[0].j, 0);
    EXPECT_EQ(neg.gens[0].deg, (Bidegree{0, -2}));
}

TEST(Tensor, UnitAndSquare) {
    Ring r = make_ring({"x1", "x2"});
    FactorComplex unit = empty_complex(r, 1);
    KoszulMatrix m = make_koszul(r);
    m.rows = {{Polynomial(r), P(r, "x1 - x2"), {-1, 1}}};
    FactorComplex c = realize(m);
    FactorComplex t = tensor(unit, c);
    EXPECT_EQ(t.d, c.d);
    auto [k0, k1] = local_crossing();
    Polynomial y = P(k0.ring, "x1 - x4");
    FactorComplex cone0 = crossing_cone(1, realize(k0), realize(k1), flip_map(FlipKind::PsiPrime, k0, k1, 1, y));
    FactorComplex sq = tensor(cone0, cone0);
    EXPECT_TRUE(d_squared_is_potential(sq));
    EXPECT_TRUE(cube_relations_hold(sq));
}

namespace {

/// A random complex with zero potential over Q[x1,x2]: a tensor product of
/// rows (1,0), (0,b), (x1-x2,0), scrambled by a graded change of basis.
FactorComplex random_complex(std::mt19937& rng) {
    Ring r = make_ring({"x1", "x2"});
    std::uniform_int_distribution<int> kind(0, 3), coef(-2, 2);
    KoszulMatrix m = make_koszul(r);
    int rows = 2 + static_cast<int>(rng() % 3);
    for (int i = 0; i < rows; ++i) {
        switch (kind(rng)) {
            case 0: m.rows.push_back({P(r, "1"), Polynomial(r), {1, 1}}); break;
            case 1: m.rows.push_back({Polynomial(r), P(r, "x1*x2 - x2^2"), {-1, 3}}); break;
            case 2: m.rows.push_back({P(r, "x1 - x2"), Polynomial(r), {1, -1}}); break;
            default: m.rows.push_back({Polynomial(r), P(r, "x1"), {-1, 1}}); break;
        }
    }
    FactorComplex c = realize(m);
    const size_t n = c.rank();
    PolyMatrix g = PolyMatrix::identity(r, n), ginv = PolyMatrix::identity(r, n);
    for (size_t s = 0; s < n; ++s)
        for (size_t t = s + 1; t < n; ++t)
            if (c.gens[s].deg == c.gens[t].deg && c.gens[s].parity == c.gens[t].parity && rng() % 2) {
                Rational lam = coef(rng);
                PolyMatrix e = PolyMatrix::identity(r, n), einv = PolyMatrix::identity(r, n);
                e.set(t, s, Polynomial::constant(r, lam));
                einv.set(t, s, Polynomial::constant(r, -lam));
                g = e * g;
                ginv = ginv * einv;
            }
    c.d = g * c.d * ginv;
    return c;
}

}  // namespace

TEST(Simplify, RandomComplexesKeepHomology) {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 30; ++trial) {
        FactorComplex c = random_complex(rng);
        ASSERT_TRUE(d_squared_is_potential(c));
        Simplified s = simplify(c);
        EXPECT_TRUE(d_squared_is_potential(s.complex));
        EXPECT_TRUE(is_graded(s.complex));
        EXPECT_LE(s.complex.rank(), c.rank());
        EXPECT_TRUE(commutes_with_d(s.iota, s.complex, c));
        EXPECT_TRUE(commutes_with_d(s.pi, c, s.complex));
        EXPECT_EQ(s.pi.matrix * s.iota.matrix, PolyMatrix::identity(c.ring, s.complex.rank()));
        EXPECT_EQ(detail::find_unit(s.complex.d), std::nullopt);
        EXPECT_EQ(ComplexHomology(c, 8, false).dims(), ComplexHomology(s.complex, 8, false).dims()) << trial;
    }
}

TEST(Simplify, ZeroDifferentialIsFixed) {
    Ring r = make_ring({"x1"});
    FactorComplex c = empty_complex(r, 3);
    Simplified s = simplify(c);
    EXPECT_EQ(s.complex.rank(), 3u);
    EXPECT_EQ(s.iota.matrix, PolyMatrix::identity(r, 3));
}

TEST(Simplify, CancelsAContractiblePair) {
    Ring r = make_ring({"x1", "x2"});
    KoszulMatrix m = make_koszul(r);
    m.rows = {{P(r, "1"), Polynomial(r), {1, 1}}, {Polynomial(r), P(r, "x1 - x2"), {-1, 1}}};
    Simplified s = simplify(realize(m));
    EXPECT_EQ(s.complex.rank(), 0u);
}
