#include <gtest/gtest.h>

#include "lzero/lab.hpp"

using namespace lzero;

TEST(Verdict, OmegaInverseModFive) {
    auto rec = integrality_verdict(DirichletChar(5, {3}), 5);
    EXPECT_EQ(rec.valuation.to_string(), "-1/1");
    EXPECT_TRUE(rec.omega_inverse);
    EXPECT_TRUE(rec.non_integral());
    EXPECT_TRUE(rec.classification_consistent);
    auto other = integrality_verdict(DirichletChar(5, {1}), 5);
    EXPECT_EQ(other.valuation.to_string(), "0/1");
    EXPECT_FALSE(other.omega_inverse);
    EXPECT_EQ(other.tower.factor, (std::vector<std::int64_t>{3, 1}));
}

TEST(Verdict, InputChecks) {
    EXPECT_THROW(integrality_verdict(DirichletChar(5, {2}), 5), InvalidArgument);          // even
    EXPECT_THROW(integrality_verdict(induce(DirichletChar(3, {1}), 6), 3), ImprimitiveInput);
    EXPECT_THROW(integrality_verdict(DirichletChar(5, {1}), 9), InvalidArgument);
}

TEST(Classification, SmallScan) {
    auto res = prop1_scan(10, 7);
    EXPECT_EQ(res.summary.non_integral, 5u);
    EXPECT_EQ(res.summary.records, res.summary.characters * 3);
    std::vector<std::string> poles;
    for (const auto& r : res.records)
        if (r.non_integral()) poles.push_back(r.character.to_string() + "@" + std::to_string(r.p) + "=" + r.valuation.to_string());
    EXPECT_EQ(poles, (std::vector<std::string>{"3:[1]@3=-1/1", "5:[3]@5=-1/1", "7:[5]@7=-1/1", "9:[1]@3=-1/2",
                                               "9:[5]@3=-1/2"}));
}

TEST(Classification, JobsDoNotChangeResults) {
    auto a = prop1_scan(30, 11, {kDefaultPrecision, nullptr, 1});
    auto b = prop1_scan(30, 11, {kDefaultPrecision, nullptr, 4});
    auto c = prop1_scan(30, 11, {2 * kDefaultPrecision, nullptr, 1});
    ASSERT_EQ(a.records.size(), b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        EXPECT_EQ(a.records[i].character, b.records[i].character);
        EXPECT_EQ(a.records[i].valuation, b.records[i].valuation);
        EXPECT_EQ(a.records[i].valuation, c.records[i].valuation);
        EXPECT_EQ(a.records[i].omega_inverse, c.records[i].omega_inverse);
    }
}

TEST(DeligneRibet, RootsOfUnity) {
    EXPECT_EQ(roots_of_unity_in_field(DirichletChar(3, {1})), 6);  // Q(sqrt -3)
    EXPECT_EQ(roots_of_unity_in_field(DirichletChar(4, {1})), 4);  // Q(i)
    EXPECT_EQ(roots_of_unity_in_field(DirichletChar(7, {3})), 2);  // Q(sqrt -7)
    EXPECT_EQ(roots_of_unity_in_field(DirichletChar(5, {1})), 10); // Q(zeta_5)
    EXPECT_EQ(roots_of_unity_in_field(DirichletChar(8, {0, 1})), 2); // Q(sqrt -2)
    for (const auto& row : deligne_ribet_scan(40)) EXPECT_TRUE(row.integral);
}

TEST(Kummer, SmallPrimes) {
    auto r5 = kummer_check(5);
    ASSERT_EQ(r5.size(), 1u);
    EXPECT_EQ(r5[0].n, 1);
    EXPECT_EQ(r5[0].lhs, 3);
    EXPECT_EQ(r5[0].rhs, 3);
    auto r7 = kummer_check(7);
    EXPECT_EQ(r7[0].lhs, 3);
    EXPECT_TRUE(kummer_check(3).empty());
    for (std::int64_t p : {11, 13, 37, 59}) EXPECT_FALSE(kummer_check(p).empty());
    // at an irregular pair the common value is 0
    for (const auto& r : kummer_check(37))
        if (r.n == 31) EXPECT_EQ(r.rhs, 0);
}

TEST(PoleOrders, PrimePowerConductors) {
    auto r3 = remark2_check(3, 3);
    ASSERT_EQ(r3.size(), 9u); // 1 + 2 + 6
    for (const auto& r : r3) {
        if (r.r == 2) EXPECT_EQ(r.computed.to_string(), "-1/2");
        if (r.r == 3) EXPECT_EQ(r.computed.to_string(), "-1/6");
    }
    auto r5 = remark2_check(5, 1);
    ASSERT_EQ(r5.size(), 1u);
    EXPECT_EQ(r5[0].computed.to_string(), "-1/1");
    EXPECT_THROW(remark2_check(3, 9), InvalidArgument);
}

TEST(OddValuesModP, UniquePoleAndClassNumber) {
    auto s3 = equation_star_check(3);
    EXPECT_EQ(s3.h_minus, 1);
    EXPECT_EQ(s3.factors.size(), 1u);
    auto s5 = equation_star_check(5);
    EXPECT_EQ(s5.h_minus, 1);
    std::vector<std::string> vals;
    for (const auto& f : s5.factors) vals.push_back(f.valuation.to_string());
    std::sort(vals.begin(), vals.end());
    EXPECT_EQ(vals, (std::vector<std::string>{"-1/1", "0/1"}));
    EXPECT_EQ(equation_star_check(23).h_minus, 3);
}

TEST(Congruence, ClassesAndEulerFactors) {
    auto res = congruence_scan(40, 5);
    EXPECT_EQ(res.summary.adjusted_unequal, 0u);
    EXPECT_EQ(res.summary.non_integral_members, 0u);
    // quadratic mod 3 against its twist by a quintic character mod 11
    const CongruenceRow* row = nullptr;
    for (const auto& r : res.rows)
        if (r.first.to_string() == "3:[1]" && r.second.modulus == 33) row = &r;
    ASSERT_NE(row, nullptr);
    EXPECT_EQ(row->residue_first, "[2]");  // 1/3 mod 5
    EXPECT_EQ(row->residue_second, "[4]"); // (1 - chi(11)) / 3 = 2/3 mod 5
    EXPECT_FALSE(row->equal);
    EXPECT_TRUE(row->adjusted_equal);
}

TEST(Congruence, OmegaInverseClassesExcluded) {
    auto res = congruence_scan(21, 3);
    for (const auto& r : res.rows) {
        EXPECT_NE(r.first.to_string(), "3:[1]");
        EXPECT_NE(r.second.to_string(), "21:[1,2]");
    }
    EXPECT_GE(res.summary.excluded_classes, 1u);
}

TEST(TwistWitness, Witnesses) {
    for (auto [p, q] : {std::pair{3, 7}, {5, 11}}) {
        auto w = corollary1_witness(p, q);
        EXPECT_EQ(w.omega_inverse.valuation.to_string(), "-1/1");
        EXPECT_FALSE(w.twisted.non_integral());
        EXPECT_EQ(w.twisted.character.modulus, p * q);
    }
    EXPECT_THROW(corollary1_witness(5, 7), NoOrderPCharacter);
}
