#include "ymstrata/enumerate.hpp"
#include "ymstrata/morse.hpp"

#include <gtest/gtest.h>

using namespace ymstrata;

namespace {

SymmetricTypeClass sym(std::vector<Block> blocks, int cross) { return classify_symmetric(HNType(std::move(blocks)), cross); }

} // namespace

TEST(CodimOrientable, Examples) {
    for (int g : {0, 1, 2, 7}) EXPECT_EQ(codim_orientable(HNType::semistable(3, 2), g), 0);
    EXPECT_EQ(codim_orientable(HNType({Block{1, 2}, Block{1, -2}}), 2), 5);
    EXPECT_EQ(codim_orientable(HNType({Block{1, 1}, Block{2, 1}}), 2), 3);
}

TEST(CodimOrientable, NegativeTotalSignals) {
    // at genus zero (1,0) totals 0 and (1/2,1/2,0) totals -1
    EXPECT_EQ(codim_orientable(HNType({Block{1, 1}, Block{1, 0}}), 0), 0);
    EXPECT_THROW(codim_orientable(HNType({Block{2, 1}, Block{1, 0}}), 0), ConsistencyError);
    EXPECT_THROW(codim_orientable(HNType::semistable(1, 0), -1), InvalidInput);
}

TEST(CodimNonorientable, PaperGrid) {
    for (int ell = 1; ell <= 3; ++ell)
        for (int i : {1, 2})
            for (int r = 1; r <= 5; ++r) {
                const Surface s(ell, i);
                EXPECT_EQ(codim_nonorientable(sym({Block{1, 2 * r}, Block{1, -2 * r}}, i), s), 4 * r + 2 * ell + i - 2);
                EXPECT_EQ(codim_nonorientable(sym({Block{1, 2 * r - 1}, Block{1, 1 - 2 * r}}, i), s),
                          4 * r + 2 * ell + i - 4);
                EXPECT_EQ(codim_nonorientable(sym({Block{1, r}, Block{1, 0}, Block{1, -r}}, i), s),
                          4 * r + 3 * (2 * ell + i - 2));
            }
}

TEST(CodimNonorientable, Errors) {
    const auto c = sym({Block{1, 1}, Block{1, -1}}, 1);
    EXPECT_THROW(codim_nonorientable(c, Surface::orientable(2)), InvalidInput);
    EXPECT_THROW(codim_nonorientable(c, Surface(1, 2)), InvalidInput);
}

TEST(CodimNonorientable, DoubleCoverIdentity) {
    for (int n = 1; n <= 5; ++n)
        for (int ell = 0; ell <= 3; ++ell)
            for (int i : {1, 2}) {
                const Surface s(ell, i);
                if (s.double_cover_genus() < 1) continue;
                for (const auto& c : enumerate_symmetric(n, s, 14))
                    EXPECT_EQ(codim_nonorientable(c, s), codim_orientable(c.mu, s.double_cover_genus())) << c.mu.str();
            }
}

TEST(Codim, ZeroIffSemistable) {
    for (int g : {1, 2, 3})
        for (int n = 1; n <= 4; ++n)
            for (int k = -4; k <= 4; ++k)
                for (const auto& mu : enumerate_types(n, k, Surface::orientable(g), 12))
                    EXPECT_EQ(codim_orientable(mu, g) == 0, mu.is_semistable()) << mu.str() << " g=" << g;
}

TEST(Codim, NonorientableGapAtLeastTwo) {
    // chi < 0 excludes (ell, i) = (0,1), (0,2)
    for (int n = 1; n <= 4; ++n)
        for (int ell = 1; ell <= 3; ++ell)
            for (int i : {1, 2}) {
                const Surface s(ell, i);
                for (const auto& c : enumerate_symmetric(n, s, 14)) {
                    const auto d = codim_nonorientable(c, s);
                    if (d != 0) {
                        EXPECT_GE(d, 2) << c.mu.str();
                    }
                }
            }
}

TEST(Codim, MonotoneInSpread) {
    for (int g : {1, 2, 3})
        for (int n = 2; n <= 4; ++n)
            for (int k = -3; k <= 3; ++k)
                for (const auto& mu : enumerate_types(n, k, Surface::orientable(g), 10)) {
                    if (mu.blocks().size() < 2) continue;
                    auto bs = mu.blocks();
                    bs.front().degree += 1;
                    bs.back().degree -= 1;
                    EXPECT_GT(codim_orientable(HNType(bs), g), codim_orientable(mu, g)) << mu.str();
                }
}

TEST(StratumRecord, Builders) {
    const HNType mu({Block{1, 1}, Block{1, 0}});
    const auto r = orientable_record(mu, Surface::orientable(2));
    EXPECT_EQ(r.complex_codim, 2);
    EXPECT_EQ(r.real_codim, 4);
    EXPECT_FALSE(r.bundle_sign.has_value());

    const auto c = sym({Block{1, 2}, Block{1, -2}}, 1);
    const auto nr = nonorientable_record(c, -1, Surface(1, 1));
    EXPECT_EQ(nr.complex_codim, 5);
    EXPECT_EQ(nr.real_codim, 5);
    EXPECT_EQ(nr.bundle_sign, -1);
    EXPECT_EQ(nr.classification, SymmetricClass::PairedMinus);
}
