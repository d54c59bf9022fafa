#include <random>

#include <gtest/gtest.h>

#include "lzero/cyclo.hpp"
#include "oracles.hpp"

using namespace lzero;

TEST(Arith, FractionStrings) {
    EXPECT_EQ(to_fraction_string(make_rat(-6, 4)), "-3/2");
    EXPECT_EQ(to_fraction_string(BigRat(0)), "0/1");
    EXPECT_EQ(to_fraction_string(BigRat(5)), "5/1");
    EXPECT_EQ(parse_fraction("-1/6"), make_rat(-1, 6));
    EXPECT_EQ(parse_fraction("7"), BigRat(7));
    EXPECT_THROW(make_rat(1, 0), DivisionByZero);
}

TEST(Arith, ElementaryNumberTheory) {
    EXPECT_EQ(euler_phi(1), 1);
    EXPECT_EQ(euler_phi(36), 12);
    EXPECT_EQ(euler_phi(97), 96);
    EXPECT_EQ(divisors(12), (std::vector<std::int64_t>{1, 2, 3, 4, 6, 12}));
    EXPECT_EQ(primes_up_to(20), (std::vector<std::int64_t>{2, 3, 5, 7, 11, 13, 17, 19}));
    EXPECT_EQ(prime_power(27), (std::pair<std::int64_t, int>{3, 3}));
    EXPECT_EQ(prime_power(12).first, 0);
    EXPECT_EQ(multiplicative_order(2, 7), 3);
    EXPECT_EQ(multiplicative_order(5, 12), 2);
    EXPECT_EQ(inv_mod(3, 7), 5);
    EXPECT_EQ(pow_mod(7, 4, 25), 1);
    EXPECT_EQ(crt_pair(2, 3, 3, 5), 8);
    EXPECT_EQ(valuation_p(BigInt(250), 5), 3);
    EXPECT_EQ(rat_mod(make_rat(1, 12), 5), 3);
    EXPECT_EQ(rat_mod(make_rat(1, 12), 7), 3);
    EXPECT_EQ(rat_mod(make_rat(-7, 3), 5), 1);
    EXPECT_TRUE(is_odd_prime(3));
    EXPECT_FALSE(is_odd_prime(2));
    EXPECT_FALSE(is_odd_prime(1));
    EXPECT_FALSE(is_odd_prime(91));
}

TEST(IntPoly, CyclotomicAgreesWithMobiusProduct) {
    for (std::int64_t k = 1; k <= 120; ++k) {
        const auto& phi = cyclotomic_poly(k);
        auto ref = oracle::cyclotomic_mobius(k);
        ASSERT_EQ(phi.degree(), euler_phi(k)) << k;
        ASSERT_EQ(static_cast<std::size_t>(phi.degree() + 1), ref.size()) << k;
        for (std::size_t i = 0; i < ref.size(); ++i) ASSERT_EQ(phi.coeff(i), BigInt(static_cast<long>(ref[i]))) << k;
    }
    EXPECT_EQ(cyclotomic_poly(4).to_string(), "x^2 + 1");
}

TEST(IntPoly, DivisionWithRemainder) {
    IntPoly a(std::vector<BigInt>{-1, 0, 0, 0, 0, 1}); // x^5 - 1
    auto [q, r] = divmod_monic(a, cyclotomic_poly(5));
    EXPECT_EQ(q, IntPoly(std::vector<BigInt>{-1, 1}));
    EXPECT_TRUE(r.is_zero());
}

namespace {

CycloElt random_elt(std::int64_t k, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 6);
    std::vector<BigRat> c(static_cast<std::size_t>(euler_phi(k)));
    for (auto& x : c) x = make_rat(num(rng), den(rng));
    return CycloElt(k, c);
}

} // namespace

TEST(Cyclo, ZetaRelations) {
    for (std::int64_t k : {1, 2, 3, 4, 5, 6, 8, 9, 12, 15, 20}) {
        auto z = CycloElt::zeta_power(k, 1);
        EXPECT_EQ(z.pow(k), CycloElt::one(k)) << k;
        CycloElt sum(k);
        for (std::int64_t m = 0; m < k; ++m) sum += CycloElt::zeta_power(k, m);
        EXPECT_EQ(sum, k == 1 ? CycloElt::one(1) : CycloElt(k)) << k;
    }
    EXPECT_EQ(CycloElt::zeta_power(4, 2), CycloElt::rational(4, BigRat(-1)));
}

TEST(Cyclo, FieldAxiomsOnRandomElements) {
    std::mt19937_64 rng(7);
    for (std::int64_t k : {3, 4, 5, 7, 8, 9, 12, 16, 20}) {
        for (int t = 0; t < 30; ++t) {
            auto a = random_elt(k, rng), b = random_elt(k, rng), c = random_elt(k, rng);
            ASSERT_EQ(a * (b + c), a * b + a * c);
            ASSERT_EQ((a * b) * c, a * (b * c));
            ASSERT_EQ(a * b, b * a);
            if (!a.is_zero()) ASSERT_EQ(a * a.inv(), CycloElt::one(k));
            ASSERT_EQ((a * b).norm(), a.norm() * b.norm());
            for (std::int64_t j = 1; j < k; ++j)
                if (gcd64(j, k) == 1) ASSERT_EQ((a * b).galois_conj(j), a.galois_conj(j) * b.galois_conj(j));
        }
    }
}

TEST(Cyclo, MixedOrdersMergeAtLcm) {
    auto i = CycloElt::zeta_power(4, 1), w = CycloElt::zeta_power(3, 1);
    auto s = i * w;
    EXPECT_EQ(s.order(), 12);
    EXPECT_EQ(s, CycloElt::zeta_power(12, 7)); // 3 + 4 mod 12
    EXPECT_EQ(i.embed_into(12), CycloElt::zeta_power(12, 3));
    EXPECT_THROW(i.embed_into(6), IncompatibleOrders);
    EXPECT_EQ(i, i.embed_into(8));
}

TEST(Cyclo, IntegralityAndNorm) {
    auto x = CycloElt(4, {make_rat(3, 5), make_rat(1, 5)});
    EXPECT_FALSE(x.is_algebraic_integer());
    EXPECT_EQ(x.norm(), make_rat(2, 5));
    EXPECT_EQ(x.to_string(), "3/5 + 1/5*z4");
    EXPECT_EQ((-x).to_string(), "-3/5 - 1/5*z4");
    EXPECT_THROW(CycloElt(5).inv(), DivisionByZero);
    auto one_minus_zeta = CycloElt::one(7) - CycloElt::zeta_power(7, 1);
    EXPECT_EQ(one_minus_zeta.norm(), BigRat(7));
}
