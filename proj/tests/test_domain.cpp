#include "support/fixtures.hpp"

#include <npi/domain.hpp>
#include <npi/errors.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

using namespace npi;
using npi::testing::example_one;

TEST(Validate, SortsAndLabelsGroups)
{
    const RawGroups raw{{"B", {3, 1}}, {"A", {2}}};
    const MultiGroupData d = validate_and_sort(raw);
    ASSERT_EQ(d.q(), 2u);
    EXPECT_EQ(d.group(0).label, "B");
    EXPECT_EQ(d.group(0).values, (std::vector<double>{1, 3}));
    EXPECT_EQ(d.sizes(), (std::vector<std::size_t>{2, 1}));
    EXPECT_EQ(example_one().sizes(), (std::vector<std::size_t>{12, 2, 11}));
}

TEST(Validate, RejectPolicyRaisesOnTies)
{
    EXPECT_THROW(validate_and_sort({{"A", {1}}, {"B", {1}}}), TieError);
    EXPECT_THROW(validate_and_sort({{"A", {1, 1}}, {"B", {2}}}), TieError);
}

TEST(Validate, StructuralErrors)
{
    EXPECT_THROW(validate_and_sort({{"A", {1}}}), EmptyInput);
    EXPECT_THROW(validate_and_sort({}), EmptyInput);
    EXPECT_THROW(validate_and_sort({{"A", {1}}, {"A", {2}}}), ValidationError);
    EXPECT_THROW(validate_and_sort({{"A", {NAN}}, {"B", {2}}}), ValidationError);
    EXPECT_THROW(validate_and_sort({{"", {1}}, {"B", {2}}}), ValidationError);
}

TEST(Validate, EpsilonSeparatesWithinGroup)
{
    const auto d = validate_and_sort({{"A", {1, 1, 2}}, {"B", {5}}}, TiePolicy::perturb(1e-9));
    EXPECT_EQ(d.group(0).values, (std::vector<double>{1, 1 + 1e-9, 2}));
}

TEST(Validate, EpsilonOrdersAcrossGroupsByLabel)
{
    const auto d = validate_and_sort({{"B", {1}}, {"A", {1}}, {"C", {3}}}, TiePolicy::perturb(0.25));
    EXPECT_EQ(d.group(1).values.front(), 1.0);   // A first
    EXPECT_EQ(d.group(0).values.front(), 1.25);  // then B
}

TEST(Validate, AutomaticEpsilonStaysBelowSmallestGap)
{
    const auto d = validate_and_sort({{"A", {1, 1, 1}}, {"B", {1.5}}}, TiePolicy::perturb());
    const auto& a = d.group(0).values;
    EXPECT_LT(a[0], a[1]);
    EXPECT_LT(a[1], a[2]);
    EXPECT_LT(a[2], 1.5);
}

TEST(Validate, EpsilonTooLargeIsATieError)
{
    EXPECT_THROW(validate_and_sort({{"A", {1, 1}}, {"B", {1.1}}}, TiePolicy::perturb(0.5)), TieError);
}

TEST(Reorder, ByLabelAndPosition)
{
    const auto d = example_one();
    const std::vector<std::string> order{"Z", "X", "Y"};
    const auto r = d.reordered(std::span<const std::string>(order));
    EXPECT_EQ(r.labels(), order);
    const std::vector<std::string> bad{"X", "W"};
    EXPECT_THROW(d.reordered(std::span<const std::string>(bad)), ValidationError);
    const std::vector<std::string> twice{"X", "X"};
    EXPECT_THROW(d.reordered(std::span<const std::string>(twice)), ValidationError);
    const std::vector<std::size_t> out_of_range{0, 5};
    EXPECT_THROW(d.reordered(std::span<const std::size_t>(out_of_range)), IndexError);
}

TEST(Denominator, ProductOfSizesPlusOne)
{
    EXPECT_EQ(example_one().npi_denominator(), 468u);
    EXPECT_EQ(npi::testing::example_two().npi_denominator(), 1260u);
}

TEST(Partition, MiddleIntervalOfExampleOne)
{
    const auto p = partition(example_one(), 1, 1);
    EXPECT_EQ(p.lower, 9.0);
    EXPECT_EQ(p.upper, 20.0);
    EXPECT_EQ(p.breakpoints, (std::vector<double>{10, 11, 12, 13, 14, 15, 16, 17, 18, 19}));
    EXPECT_EQ(p.cells.size(), 11u);
}

TEST(Partition, FirstIntervalOfExampleOne)
{
    const auto p = partition(example_one(), 1, 0);
    EXPECT_TRUE(std::isinf(p.lower));
    EXPECT_EQ(p.breakpoints, (std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8}));
    // prefix counts in the last cell: all X and Z values below 9
    const auto& last = p.cells.back().below;
    EXPECT_EQ(last[0], 6u);
    EXPECT_EQ(last[1], 0u);
    EXPECT_EQ(last[2], 2u);
}

TEST(Partition, EmptyGroupSpansEverything)
{
    const auto d = npi::testing::make({{1, 3}, {}, {2}});
    const auto p = partition(d, 1, 0);
    EXPECT_EQ(p.breakpoints, (std::vector<double>{1, 2, 3}));
    EXPECT_EQ(p.cells.size(), 4u);
}

TEST(Partition, IndexErrors)
{
    EXPECT_THROW(partition(example_one(), 3, 0), IndexError);
    EXPECT_THROW(partition(example_one(), 1, 3), IndexError);
}

TEST(Partition, CellsRecoverEveryOtherObservationOnce)
{
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 100; ++rep) {
        const auto d = npi::testing::random_instance(rng, 4, 0, 5);
        for (std::size_t j = 0; j < d.q(); ++j) {
            std::multiset<double> seen;
            std::size_t extra_cells = 0;
            for (const auto& part : partition_group(d, j)) {
                seen.insert(part.breakpoints.begin(), part.breakpoints.end());
                extra_cells += part.cells.size() - 1;
                ASSERT_EQ(part.cells.size(), part.breakpoints.size() + 1);
            }
            std::multiset<double> others;
            for (std::size_t l = 0; l < d.q(); ++l) {
                if (l != j) {
                    others.insert(d.group(l).values.begin(), d.group(l).values.end());
                }
            }
            EXPECT_EQ(seen, others);
            EXPECT_EQ(extra_cells, others.size());
        }
    }
}

TEST(Partition, InvariantUnderMonotoneTransform)
{
    std::mt19937_64 rng(12);
    for (int rep = 0; rep < 50; ++rep) {
        const auto d = npi::testing::random_instance(rng, 3, 0, 4);
        const auto t = npi::testing::transformed(d, [](double x) { return x * x * x + 7 * x; });
        for (std::size_t j = 0; j < d.q(); ++j) {
            const auto a = partition_group(d, j);
            const auto b = partition_group(t, j);
            ASSERT_EQ(a.size(), b.size());
            for (std::size_t k = 0; k < a.size(); ++k) {
                ASSERT_EQ(a[k].cells.size(), b[k].cells.size());
                for (std::size_t c = 0; c < a[k].cells.size(); ++c) {
                    EXPECT_EQ(a[k].cells[c].gap, b[k].cells[c].gap);
                    EXPECT_EQ(a[k].cells[c].below, b[k].cells[c].below);
                }
            }
        }
    }
}

TEST(Pooled, RanksAndEndpoints)
{
    const auto order = pooled_order(npi::testing::make({{2}, {1, 3}}));
    EXPECT_EQ(order.total, 3u);
    EXPECT_EQ(order.ranks[1], (std::vector<std::size_t>{1, 3}));
    EXPECT_EQ(order.left_rank(0, 0), 0u);
    EXPECT_EQ(order.right_rank(0, 1), 4u);
}
