#include "narayana/recurrence.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace narayana;

TEST(Narayana, MatchesHandWrittenPrefix) {
    const auto t = narayana_upto(30);
    const auto& want = oracle::narayana_prefix();
    ASSERT_EQ(t.k_max(), 30u);
    for (std::size_t k = 0; k <= 30; ++k) EXPECT_EQ(t[k], want[k]) << k;
}

TEST(Narayana, TableValues) {
    const auto t = narayana_upto(16);
    EXPECT_EQ(t[16], 189);
    EXPECT_EQ(t[13], 60);
    EXPECT_EQ(t[8], 9);
    EXPECT_EQ(narayana_upto(0).k_max(), 0u);
    EXPECT_THROW(t[17], std::out_of_range);
}

TEST(Narayana, RecurrenceHoldsFarOut) {
    const auto t = narayana_upto(3000);
    for (std::size_t k = 3; k <= 3000; k += 37) EXPECT_EQ(t[k], t[k - 1] + t[k - 3]);
    EXPECT_EQ(t[3000].get_str().size(), 498u);
}

TEST(Narayana, CsvExport) {
    std::ostringstream out;
    narayana_upto(4).write_csv(out);
    EXPECT_EQ(out.str(), "k,N_k\n0,0\n1,1\n2,1\n3,1\n4,2\n");
}

TEST(Growth, UpperBoundHoldsLowerOnlyForSmallN) {
    const auto rep = verify_growth(1000, compute_constants(512));
    EXPECT_FALSE(rep.holds);
    EXPECT_TRUE(rep.upper_failures.empty());
    ASSERT_TRUE(rep.first_failure.has_value());
    EXPECT_EQ(*rep.first_failure, 3u);
    EXPECT_EQ(format_ranges(rep.lower_failures), "3-1000");
}

TEST(Growth, ShiftedLowerBoundHolds) {
    const auto rep = verify_growth(1000, compute_constants(512), 3);
    EXPECT_TRUE(rep.holds);
    EXPECT_TRUE(rep.lower_failures.empty());
    EXPECT_THROW(verify_growth(10, compute_constants(128), 0), std::invalid_argument);
    EXPECT_THROW(verify_growth(0, compute_constants(128)), std::invalid_argument);
}

TEST(Growth, FormatRanges) {
    EXPECT_EQ(format_ranges({}), "none");
    EXPECT_EQ(format_ranges({1, 2, 3, 7, 9, 10}), "1-3,7,9-10");
}

TEST(Binet, ResidualBelowHalfPowerForFirstThousand) {
    const auto c = compute_constants(512);
    const auto t = narayana_upto(1000);
    for (std::size_t k = 1; k <= 1000; ++k) {
        const auto r = binet_residual(k, c, t);
        EXPECT_TRUE(r.below_bound) << k;
    }
}

TEST(Binet, TailRouteAgreesWithDirectRoute) {
    const auto c = compute_constants(512);
    const auto t = narayana_upto(200);
    for (std::size_t k : {1u, 10u, 50u, 100u, 200u}) {
        const auto direct = binet_residual_direct(k, c, t);
        const auto r = binet_residual(k, c, t);
        EXPECT_TRUE(direct.contains(r.value)) << k;
    }
}

TEST(Binet, DirectRouteLosesDigitsWhereTailDoesNot) {
    const auto c = compute_constants(256);
    const auto t = narayana_upto(1000);
    EXPECT_THROW(binet_residual(1000, c, narayana_upto(500)), std::invalid_argument);
    const auto r = binet_residual(1000, c, t);
    EXPECT_TRUE(r.below_bound);
}
