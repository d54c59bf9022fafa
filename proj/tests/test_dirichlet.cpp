#include <map>

#include <gtest/gtest.h>

#include "lzero/dirichlet.hpp"

using namespace lzero;

TEST(UnitGroup, Bases) {
    auto b7 = unit_group_basis(7);
    EXPECT_EQ(b7.generators, (std::vector<Generator>{{3, 6}}));
    auto b8 = unit_group_basis(8);
    EXPECT_EQ(b8.generators, (std::vector<Generator>{{7, 2}, {5, 2}}));
    auto b15 = unit_group_basis(15);
    EXPECT_EQ(b15.generators, (std::vector<Generator>{{11, 2}, {7, 4}}));
    EXPECT_EQ(unit_group_basis(4).generators, (std::vector<Generator>{{3, 2}}));
    EXPECT_TRUE(unit_group_basis(2).generators.empty());
}

TEST(UnitGroup, DiscreteLogsReconstruct) {
    for (std::int64_t f = 1; f <= 120; ++f) {
        auto g = unit_group(f);
        ASSERT_EQ(g->size(), euler_phi(f)) << f;
        for (std::int64_t a = 0; a < f; ++a) {
            ASSERT_EQ(g->is_unit(a), gcd64(a, f) == 1 || f == 1) << f << " " << a;
            if (!g->is_unit(a)) continue;
            std::int64_t r = 1 % f;
            for (std::size_t i = 0; i < g->rank(); ++i)
                r = mul_mod(r, pow_mod(g->generators()[i].residue, g->log(a, i), f), f);
            ASSERT_EQ(r, a % f) << f;
        }
    }
}

TEST(Characters, CountsAndMultiplicativity) {
    for (std::int64_t f : {3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 21, 24, 40}) {
        auto all = enumerate_characters(f);
        ASSERT_EQ(static_cast<std::int64_t>(all.size()), euler_phi(f));
        for (const auto& chi : all)
            for (std::int64_t a = 1; a < f; ++a)
                for (std::int64_t b = 1; b < f; ++b) {
                    auto ab = char_eval(chi, a * b);
                    ASSERT_EQ(ab, char_eval(chi, a) * char_eval(chi, b)) << chi.key().to_string();
                }
    }
}

TEST(Characters, PrimitiveCountsFollowMobiusInversion) {
    // number of primitive characters mod f is sum_{d | f} mu(f/d) phi(d)
    auto mu = [](std::int64_t n) {
        int m = 1;
        for (auto [q, e] : factorize(n)) {
            if (e > 1) return 0;
            m = -m;
        }
        return m;
    };
    for (std::int64_t f = 1; f <= 80; ++f) {
        std::int64_t expected = 0;
        for (auto d : divisors(f)) expected += mu(f / d) * euler_phi(d);
        ASSERT_EQ(static_cast<std::int64_t>(enumerate_characters(f, true).size()), expected) << f;
    }
}

TEST(Characters, OddEvenSplit) {
    for (std::int64_t f = 3; f <= 60; ++f) {
        auto odd = enumerate_characters(f, false, Parity::odd);
        auto even = enumerate_characters(f, false, Parity::even);
        ASSERT_EQ(odd.size(), even.size()) << f;
        for (const auto& c : odd) ASSERT_EQ(char_eval(c, f - 1), CycloElt::rational(1, BigRat(-1)));
    }
}

TEST(Characters, ConductorAndPrimitivization) {
    DirichletChar chi3(3, {1});
    auto induced = induce(chi3, 12);
    EXPECT_EQ(conductor(induced), 3);
    EXPECT_FALSE(is_primitive(induced));
    auto [f, prim] = conductor_and_primitivize(induced);
    EXPECT_EQ(f, 3);
    EXPECT_EQ(prim, chi3);
    // 8: characters with 5 -> -1 are primitive, 7 -> -1 alone is induced from mod 4
    EXPECT_EQ(conductor(DirichletChar(8, {1, 0})), 4);
    EXPECT_EQ(conductor(DirichletChar(8, {0, 1})), 8);
    EXPECT_EQ(conductor(DirichletChar(8, {1, 1})), 8);
    EXPECT_EQ(conductor(DirichletChar(9, {3})), 3);
    EXPECT_EQ(conductor(DirichletChar::trivial(10)), 1);
}

TEST(Characters, ProductAndValueExponent) {
    DirichletChar a(5, {1}), b(7, {2});
    auto c = char_product(a, b);
    EXPECT_EQ(c.modulus(), 35);
    for (std::int64_t x = 1; x < 35; ++x)
        if (gcd64(x, 35) == 1) ASSERT_EQ(char_eval(c, x), char_eval(a, x) * char_eval(b, x));
    EXPECT_EQ(a.order(), 4);
    EXPECT_EQ(a.value_exponent(2), std::optional<std::int64_t>(1));
    EXPECT_FALSE(a.value_exponent(10).has_value());
    EXPECT_THROW(DirichletChar(5, {1, 0}), InvalidArgument);
}

TEST(Characters, EnumerationOrderIsLexicographic) {
    auto cs = enumerate_characters(15);
    for (std::size_t i = 1; i < cs.size(); ++i) ASSERT_LT(cs[i - 1].key(), cs[i].key());
    EXPECT_EQ(cs.front().key().to_string(), "15:[0,0]");
}

TEST(Characters, TameWildDecomposition) {
    for (std::int64_t p : {3, 5, 7})
        for (int n = 1; n <= 3 && ipow(p, n) <= 200; ++n)
            for (const auto& chi : enumerate_characters(ipow(p, n))) {
                auto tw = tame_wild_decomposition(chi, p);
                auto prod = char_product(induce(tw.tame, ipow(p, n)), tw.wild);
                ASSERT_EQ(prod, chi);
                ASSERT_EQ((p - 1) % tw.tame.order(), 0);
                ASSERT_EQ(ipow(p, n - 1) % tw.wild.order(), 0);
            }
    EXPECT_THROW(tame_wild_decomposition(DirichletChar(15, {1, 0}), 3), NotPrimePower);
}
