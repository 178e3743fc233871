#include "oracles.hpp"

#include "ymstrata/series.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ymstrata;

namespace {

TruncatedSeries ints(int D, std::vector<std::int64_t> cs) { return TruncatedSeries::from_integers(D, cs); }

std::vector<SeriesFactor> random_factors(std::mt19937_64& rng, int max_count) {
    std::uniform_int_distribution<int> count(0, max_count), exp(1, 6), pw(0, 5), sg(0, 1);
    std::vector<SeriesFactor> out(static_cast<std::size_t>(count(rng)));
    for (auto& f : out) f = SeriesFactor{sg(rng) ? 1 : -1, exp(rng), pw(rng)};
    return out;
}

} // namespace

TEST(ExpandRational, Examples) {
    EXPECT_EQ(expand_rational({{1, 1, 4}}, {{-1, 2, 1}}, 4), ints(4, {1, 4, 7, 8, 8}));
    EXPECT_EQ(expand_rational({}, {{-1, 2, 1}}, 5), ints(5, {1, 0, 1, 0, 1, 0}));
    EXPECT_EQ(expand_rational({{1, 1, 1}}, {{1, 1, 1}}, 3), TruncatedSeries::one(3));
}

TEST(ExpandRational, ZeroConstantTermRejected) {
    EXPECT_THROW(expand_rational({}, {{-1, 0, 1}}, 3), InvalidInput);
    EXPECT_THROW(expand_rational({{2, 1, 1}}, {}, 3), InvalidInput);
    EXPECT_THROW(expand_rational({{1, -1, 1}}, {}, 3), InvalidInput);
    // (1 - t^0)^0 is the empty product
    EXPECT_EQ(expand_rational({}, {{-1, 0, 0}}, 2), TruncatedSeries::one(2));
    // (1 + t^0) = 2
    EXPECT_EQ(expand_rational({{1, 0, 1}}, {{1, 0, 2}}, 1)[0], Rational(1, 2));
}

TEST(ExpandRational, MatchesLongDivision) {
    std::mt19937_64 rng(20261019);
    for (int trial = 0; trial < 200; ++trial) {
        const auto num = random_factors(rng, 4);
        const auto den = random_factors(rng, 4);
        const int D = 40;
        EXPECT_EQ(expand_rational(num, den, D).coeffs(), oracle::naive_expand(num, den, D)) << "trial " << trial;
    }
}

TEST(TruncatedSeries, Arithmetic) {
    const auto a = ints(4, {1, 1});
    const auto b = ints(4, {1, -1});
    EXPECT_EQ(a * b, ints(4, {1, 0, -1}));
    EXPECT_EQ(a + b, ints(4, {2}));
    EXPECT_EQ(a - b, ints(4, {0, 2}));
    EXPECT_EQ(TruncatedSeries::one(4).divided_by(b), ints(4, {1, 1, 1, 1, 1}));
    EXPECT_EQ(a.shifted(3), ints(4, {0, 0, 0, 1, 1}));
    EXPECT_EQ(a.shifted(5), TruncatedSeries(4));
    EXPECT_EQ(ints(4, {1, 2, 3, 4, 5}).truncated(2), ints(2, {1, 2, 3}));
    EXPECT_THROW(a.truncated(5), InvalidInput);
    EXPECT_THROW(a + ints(3, {1}), InvalidInput);
    EXPECT_THROW(a.divided_by(ints(4, {0, 1})), InvalidInput);
    EXPECT_THROW(TruncatedSeries(-1), InvalidInput);
    EXPECT_EQ(TruncatedSeries::monomial(2, 3), ints(3, {0, 0, 1}));
    EXPECT_EQ(TruncatedSeries::monomial(7, 3), TruncatedSeries(3));
}

TEST(TruncatedSeries, DivisionInvertsMultiplication) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> c(-9, 9);
    for (int trial = 0; trial < 50; ++trial) {
        TruncatedSeries a(12), b(12);
        for (int j = 0; j <= 12; ++j) {
            a[j] = c(rng);
            b[j] = c(rng);
        }
        if (b[0] == 0) b[0] = 3;
        EXPECT_EQ((a * b).divided_by(b), a);
    }
}

TEST(TruncatedSeries, IntegralityCheck) {
    EXPECT_TRUE(ints(3, {1, 0, 2, 5}).has_nonnegative_integer_coeffs());
    EXPECT_FALSE(ints(3, {1, -1}).has_nonnegative_integer_coeffs());
    TruncatedSeries half(1);
    half[0] = Rational(1, 2);
    EXPECT_FALSE(half.has_nonnegative_integer_coeffs());
}

TEST(TruncatedSeries, TextFormat) {
    EXPECT_EQ(ints(3, {1, 4, 0, 8}).to_text(), "1 + 4*t + 0*t^2 + 8*t^3 + O(t^{4})");
    EXPECT_EQ(ints(0, {1}).to_text(), "1 + O(t^{1})");
}

TEST(TruncatedSeries, JsonRoundTrip) {
    TruncatedSeries s = ints(3, {1, -4, 0, 123456789012345});
    s[2] = Rational(-3, 7);
    const auto j = s.to_json();
    EXPECT_EQ(j.at("degree"), 3);
    EXPECT_EQ(j.at("coefficients")[2], "-3/7");
    EXPECT_EQ(TruncatedSeries::from_json(nlohmann::json::parse(j.dump())), s);
    EXPECT_THROW(TruncatedSeries::from_json(nlohmann::json{{"degree", 2}, {"coefficients", {"1"}}}), InvalidInput);
}

TEST(FactorSyntax, ParseAndPrint) {
    const auto r = parse_factored("(1+t)^4 (1+t^3)^4 / (1-t^2)^2 (1-t^4)");
    ASSERT_EQ(r.numerator.size(), 2u);
    ASSERT_EQ(r.denominator.size(), 2u);
    EXPECT_EQ(r.numerator[1], (SeriesFactor{1, 3, 4}));
    EXPECT_EQ(r.denominator[0], (SeriesFactor{-1, 2, 2}));
    EXPECT_EQ(to_text(r), "(1+t)^4 (1+t^3)^4 / (1-t^2)^2 (1-t^4)");
    EXPECT_EQ(to_text(parse_factored(to_text(r))), to_text(r));

    const auto geo = parse_factored("1 / (1-t^{2})");
    EXPECT_TRUE(geo.numerator.empty());
    EXPECT_EQ(geo.expand(4), ints(4, {1, 0, 1, 0, 1}));
    EXPECT_EQ(parse_factored("(1+t)*(1-t)").expand(3), ints(3, {1, 0, -1}));
    EXPECT_EQ(to_text(parse_factored("1")), "1");
}

TEST(FactorSyntax, Errors) {
    EXPECT_THROW(parse_factored(""), InvalidInput);
    EXPECT_THROW(parse_factored("(1*t)"), InvalidInput);
    EXPECT_THROW(parse_factored("(2+t)"), InvalidInput);
    EXPECT_THROW(parse_factored("(1+t)^"), InvalidInput);
    EXPECT_THROW(parse_factored("(1+t) junk"), InvalidInput);
    EXPECT_THROW(parse_factored("(1+t) /"), InvalidInput);
}
