#include "trigrad/homfly.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace trigrad;

namespace {

HeckeElement word(int n, std::vector<int> letters) { return hecke_of_braid(BraidWord{n, std::move(letters)}); }

BraidWord random_braid(std::mt19937& rng, int max_strands, int max_len) {
    int n = std::uniform_int_distribution<int>(2, max_strands)(rng);
    int len = std::uniform_int_distribution<int>(0, max_len)(rng);
    std::uniform_int_distribution<int> gen(1, n - 1), sign(0, 1);
    BraidWord b{n, {}};
    for (int i = 0; i < len; ++i) b.letters.push_back(sign(rng) ? gen(rng) : -gen(rng));
    return b;
}

const RationalQT& q(int e) {
    static std::map<int, RationalQT> cache;
    auto it = cache.find(e);
    if (it == cache.end()) it = cache.emplace(e, RationalQT(LaurentQT::q(e))).first;
    return it->second;
}

}  // namespace

TEST(Hecke, QuadraticRelation) {
    HeckeElement lhs = word(2, {1, 1});
    HeckeElement rhs = (LaurentQT(1) - LaurentQT::q(2)) * word(2, {1}) + LaurentQT::q(2) * HeckeElement::identity(2);
    EXPECT_EQ(lhs, rhs);
    EXPECT_EQ(word(2, {1, -1}), HeckeElement::identity(2));
    EXPECT_EQ(word(3, {-2, 2}), HeckeElement::identity(3));
}

TEST(Hecke, BraidAndFarCommutation) {
    EXPECT_EQ(word(3, {1, 2, 1}), word(3, {2, 1, 2}));
    EXPECT_EQ(word(3, {-1, 2, 1}), word(3, {2, 1, -2}));
    EXPECT_EQ(word(4, {1, 3}), word(4, {3, 1}));
    EXPECT_EQ(word(4, {-1, 3, 2}), word(4, {3, -1, 2}));
    EXPECT_NE(word(3, {1, 2}), word(3, {2, 1}));
}

TEST(Hecke, SkeinAtTheAlgebraLevel) {
    HeckeElement lhs = LaurentQT::q(-1) * word(2, {1}) + (-LaurentQT::q(1)) * word(2, {-1});
    EXPECT_EQ(lhs, (LaurentQT::q(-1) - LaurentQT::q(1)) * HeckeElement::identity(2));
}

TEST(Trace, Normalization) {
    TraceParams p = solve_trace_params();
    EXPECT_EQ(ocneanu_trace(HeckeElement::identity(1)), RationalQT(1));
    EXPECT_EQ(ocneanu_trace(HeckeElement::identity(3)), RationalQT(1));
    EXPECT_EQ(ocneanu_trace(word(2, {1})), p.z);
    EXPECT_EQ(p.delta * p.z, RationalQT(1));
    EXPECT_EQ(ocneanu_trace(word(3, {1, 2})), p.z * p.z);
}

TEST(Trace, ConjugationInvariance) {
    std::mt19937 rng(7);
    for (int i = 0; i < 30; ++i) {
        BraidWord b = random_braid(rng, 4, 6);
        if (b.letters.empty()) continue;
        BraidWord c = apply_markov(b, {MarkovKind::Conjugate, 1});
        EXPECT_EQ(ocneanu_trace(hecke_of_braid(b)), ocneanu_trace(hecke_of_braid(c))) << render_braid(b);
    }
}

TEST(HomflyF, SmallValues) {
    RationalQT u = unknot_value();
    EXPECT_EQ(homfly_F(parse_braid("", 1)), u);
    EXPECT_EQ(homfly_F(parse_braid("1")), u);
    EXPECT_EQ(homfly_F(parse_braid("-1")), RationalQT(LaurentQT::monomial(-1, -1, -1)) * u);
    RationalQT delta = solve_trace_params().delta;
    EXPECT_EQ(homfly_F(parse_braid("", 3)), u * delta * delta);
    EXPECT_EQ(qt_expand(u, 5).str(), "q*t^-1 + q^3*t^-1 + q^5*t^-1 + O(q^6)");
}

TEST(HomflyF, SkeinOnRandomBraids) {
    std::mt19937 rng(11);
    const RationalQT k = q(-1) - q(1);
    for (int i = 0; i < 50; ++i) {
        BraidWord b = random_braid(rng, 4, 8);
        int s = std::uniform_int_distribution<int>(1, b.strands - 1)(rng);
        BraidWord plus = b, minus = b;
        plus.letters.push_back(s);
        minus.letters.push_back(-s);
        EXPECT_EQ(q(-1) * homfly_F(plus) - q(1) * homfly_F(minus), k * homfly_F(b)) << render_braid(b) << " s=" << s;
    }
}

TEST(HomflyFTilde, MarkovInvariance) {
    std::mt19937 rng(23);
    for (int i = 0; i < 25; ++i) {
        BraidWord b = random_braid(rng, 4, 6);
        HalfPowerQT f = homfly_F_tilde(b);
        if (!b.letters.empty()) {
            int split = static_cast<int>(b.letters.size() + 1) / 2;
            EXPECT_EQ(f, homfly_F_tilde(apply_markov(b, {MarkovKind::Conjugate, split}))) << render_braid(b);
        }
        EXPECT_EQ(f, homfly_F_tilde(apply_markov(b, {MarkovKind::StabilizePositive}))) << render_braid(b);
        EXPECT_EQ(f, homfly_F_tilde(apply_markov(b, {MarkovKind::StabilizeNegative}))) << render_braid(b);
    }
}

TEST(HomflyFTilde, KnownValues) {
    HalfPowerQT u = homfly_F_tilde(parse_braid("", 1));
    EXPECT_FALSE(u.odd);
    EXPECT_EQ(u.value, HalfPowerQT::alpha() / RationalQT(LaurentQT(1) - LaurentQT::q(-2)));
    EXPECT_EQ(homfly_F_tilde(parse_braid("1 1 1")), homfly_F_tilde(parse_braid("n=3 1 1 1 -2")));
    EXPECT_EQ(homfly_F_tilde(parse_braid("1 2 1 2")), homfly_F_tilde(parse_braid("1 1 1")));
    EXPECT_FALSE(homfly_F_tilde(parse_braid("1 1 1")) == homfly_F_tilde(parse_braid("-1 -1 -1")));
    EXPECT_FALSE(homfly_F_tilde(parse_braid("1 1")) == homfly_F_tilde(parse_braid("", 2)));
}
