#include "trigrad/braid.hpp"

#include <gtest/gtest.h>

using namespace trigrad;

TEST(BraidParse, Examples) {
    BraidWord t = parse_braid("1 1 1");
    EXPECT_EQ(t.strands, 2);
    EXPECT_EQ(t.letters, (std::vector<int>{1, 1, 1}));
    BraidWord f = parse_braid("1 -2 1 -2");
    EXPECT_EQ(f.strands, 3);
    EXPECT_EQ(f.letters, (std::vector<int>{1, -2, 1, -2}));
    BraidWord u = parse_braid("", 1);
    EXPECT_EQ(u.strands, 1);
    EXPECT_TRUE(u.letters.empty());
    EXPECT_EQ(parse_braid("n=4 1 3").strands, 4);
    EXPECT_EQ(parse_braid("n=4 1 3", 5).strands, 5);
}

TEST(BraidParse, RoundTripsThroughRender) {
    BraidWord b = parse_braid("n=5 2 -1 4 -4 3");
    EXPECT_EQ(render_braid(b), "n=5 2 -1 4 -4 3");
    EXPECT_EQ(parse_braid(render_braid(b)), b);
    EXPECT_EQ(letters_string(b), "2 -1 4 -4 3");
}

TEST(BraidParse, Errors) {
    EXPECT_THROW(parse_braid("1 0 1"), BraidParseError);
    EXPECT_THROW(parse_braid("1 x"), BraidParseError);
    EXPECT_THROW(parse_braid("1 2", 2), BraidParseError);
    EXPECT_THROW(parse_braid("n=q 1"), BraidParseError);
    EXPECT_THROW(parse_braid("1.5"), BraidParseError);
}

TEST(Braid, Counts) {
    BraidWord b = parse_braid("1 -2 1 -2");
    EXPECT_EQ(b.positive_crossings(), 2);
    EXPECT_EQ(b.negative_crossings(), 2);
    EXPECT_EQ(b.writhe(), 0);
}

TEST(Braid, ClosureComponents) {
    EXPECT_EQ(closure_components(parse_braid("1 1 1")), 1);
    EXPECT_EQ(closure_components(parse_braid("1 1")), 2);
    EXPECT_EQ(closure_components(parse_braid("1 -2 1 -2")), 1);
    EXPECT_EQ(closure_components(parse_braid("", 3)), 3);
    EXPECT_EQ(closure_components(parse_braid("", 1)), 1);
}

TEST(Markov, StabilizeAndDestabilize) {
    BraidWord t = parse_braid("1 1 1");
    BraidWord s = apply_markov(t, {MarkovKind::StabilizePositive});
    EXPECT_EQ(s, parse_braid("1 1 1 2"));
    BraidWord n = apply_markov(t, {MarkovKind::StabilizeNegative});
    EXPECT_EQ(n, parse_braid("1 1 1 -2"));
    EXPECT_EQ(apply_markov(n, {MarkovKind::Destabilize}), t);
    EXPECT_THROW(apply_markov(parse_braid("1 2 2"), {MarkovKind::Destabilize}), MarkovError);
}

TEST(Markov, ConjugateAndRelations) {
    BraidWord t = parse_braid("1 1 1");
    EXPECT_EQ(apply_markov(t, {MarkovKind::Conjugate, 1}), t);
    EXPECT_EQ(apply_markov(parse_braid("1 -2 2"), {MarkovKind::Conjugate, 1}), parse_braid("-2 2 1"));
    EXPECT_EQ(apply_markov(parse_braid("1 2 1"), {MarkovKind::BraidRelation, 0}), parse_braid("2 1 2"));
    EXPECT_EQ(apply_markov(parse_braid("-1 -2 -1"), {MarkovKind::BraidRelation, 0}), parse_braid("-2 -1 -2"));
    EXPECT_THROW(apply_markov(parse_braid("1 -2 1"), {MarkovKind::BraidRelation, 0}), MarkovError);
    EXPECT_EQ(apply_markov(parse_braid("1 3"), {MarkovKind::FarCommute, 0}), parse_braid("n=4 3 1"));
    EXPECT_THROW(apply_markov(parse_braid("1 2"), {MarkovKind::FarCommute, 0}), MarkovError);
}

TEST(Markov, InsertAndCancelPairs) {
    BraidWord b = parse_braid("1 1");
    BraidWord w = apply_markov(b, {MarkovKind::CancelPair, 1, -1});
    EXPECT_EQ(w, parse_braid("1 -1 1 1"));
    EXPECT_EQ(apply_markov(w, {MarkovKind::CancelPair, 1, 0}), parse_braid("1 1"));
    EXPECT_THROW(apply_markov(b, {MarkovKind::CancelPair, 0, 0}), MarkovError);
}

TEST(Markov, MovesPreserveComponentCount) {
    BraidWord f = parse_braid("1 -2 1 -2");
    for (MarkovMove mv : {MarkovMove{MarkovKind::Conjugate, 2}, MarkovMove{MarkovKind::StabilizePositive},
                          MarkovMove{MarkovKind::StabilizeNegative}, MarkovMove{MarkovKind::CancelPair, 3, 2}})
        EXPECT_EQ(closure_components(apply_markov(f, mv)), closure_components(f));
}

TEST(MarkedDiagram, Unknot) {
    MarkedDiagram d = build_marked_diagram(parse_braid("", 1));
    EXPECT_EQ(d.variable_count, 1);
    ASSERT_EQ(d.arcs.size(), 1u);
    EXPECT_EQ(d.arcs[0].tail, 0);
    EXPECT_EQ(d.arcs[0].head, 0);
}

TEST(MarkedDiagram, OneCrossingLayout) {
    MarkedDiagram d = build_marked_diagram(parse_braid("1"));
    EXPECT_EQ(d.variable_count, 4);
    ASSERT_EQ(d.crossings.size(), 1u);
    const auto& c = d.crossings[0];
    EXPECT_EQ(c.sign, 1);
    EXPECT_EQ(d.name(c.x4), "x1");
    EXPECT_EQ(d.name(c.x3), "x2");
    EXPECT_EQ(d.name(c.x1), "x3");
    EXPECT_EQ(d.name(c.x2), "x4");
    EXPECT_EQ(d.arcs.size(), 2u);
}

TEST(MarkedDiagram, EveryVariableHasOneInAndOneOut) {
    for (int marks : {1, 2, 3}) {
        MarkedDiagram d = build_marked_diagram(parse_braid("1 -2 1 -2"), marks);
        std::vector<int> in(d.variable_count), out(d.variable_count);
        for (const auto& a : d.arcs) {
            ++out[a.tail];
            ++in[a.head];
        }
        for (const auto& c : d.crossings) {
            ++in[c.x1];
            ++in[c.x2];
            ++out[c.x3];
            ++out[c.x4];
        }
        for (int v = 0; v < d.variable_count; ++v) {
            EXPECT_EQ(in[v], 1) << "marks " << marks << " var " << v;
            EXPECT_EQ(out[v], 1) << "marks " << marks << " var " << v;
        }
    }
}
