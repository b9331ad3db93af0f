#include "support/fixtures.hpp"

#include <npi/errors.hpp>
#include <npi/multi_group.hpp>
#include <npi/three_group.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace npi;
using npi::testing::example_one;
using npi::testing::example_two;
using npi::testing::make;

namespace {

std::vector<std::uint64_t> counts(const FourBounds& b)
{
    return {b.lower_lower.count(), b.lower_upper.count(), b.upper_lower.count(), b.upper_upper.count()};
}

MultiGroupData reorder(const MultiGroupData& d, std::vector<std::string> labels)
{
    return d.reordered(std::span<const std::string>(labels));
}

} // namespace

TEST(Empirical, Examples)
{
    EXPECT_EQ(empirical_h(example_one()), RationalProb(98, 264));
    EXPECT_EQ(empirical_h(example_one()).denom(), 264u);
    EXPECT_EQ(empirical_h(make({{1}, {2}, {3}})), RationalProb(1, 1));
    EXPECT_EQ(empirical_h(example_two()).count(), 47u);
    EXPECT_EQ(empirical_h(example_two()).denom(), 600u);
    EXPECT_THROW(empirical_h(make({{1}, {}, {3}})), EmptyGroup);
}

TEST(Empirical, MatchesLiteralCount)
{
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 200; ++rep) {
        const auto d = npi::testing::random_instance(rng, 2 + rep % 4, 1, 5);
        EXPECT_EQ(empirical_h(d).count(), npi::testing::literal_h_count(d));
    }
}

TEST(Bounds, ExampleOne)
{
    const FourBounds b = bounds(example_one());
    EXPECT_EQ(counts(b), (std::vector<std::uint64_t>{24, 98, 130, 248}));
    EXPECT_EQ(b.lower_lower.denom(), 468u);
}

TEST(Bounds, ExampleTwoAndAlternateOrderings)
{
    const auto d = example_two();
    EXPECT_EQ(counts(bounds(d)), (std::vector<std::uint64_t>{12, 47, 120, 266}));
    EXPECT_EQ(counts(bounds(reorder(d, {"X1", "X4", "X2", "X3"}))), (std::vector<std::uint64_t>{16, 58, 134, 296}));
    EXPECT_EQ(counts(bounds(reorder(d, {"X2", "X3", "X4", "X1"}))), (std::vector<std::uint64_t>{0, 2, 45, 139}));
}

TEST(Bounds, AllEmpty)
{
    const FourBounds b = bounds(make({{}, {}, {}, {}}));
    EXPECT_EQ(b.lower_lower, RationalProb(0, 1));
    EXPECT_EQ(b.lower_upper, RationalProb(0, 1));
    // middle masses at right ends sit at +inf, and inf < inf fails
    EXPECT_EQ(b.upper_lower, RationalProb(0, 1));
    EXPECT_EQ(b.upper_upper, RationalProb(1, 1));
    EXPECT_EQ(b, npi::testing::literal_bounds(make({{}, {}, {}, {}})));
}

TEST(Bounds, ArityError)
{
    EXPECT_THROW(bounds(make({{1}, {2}})), ArityError);
}

TEST(Bounds, MatchLiteralSums)
{
    std::mt19937_64 rng(42);
    for (int rep = 0; rep < 300; ++rep) {
        const auto d = npi::testing::random_instance(rng, 3 + rep % 3, 0, 5);
        EXPECT_EQ(bounds(d), npi::testing::literal_bounds(d));
    }
}

TEST(Perfect, Examples)
{
    const std::vector<std::size_t> two{2, 2, 2};
    const FourBounds p = perfect_reference(two);
    EXPECT_EQ(p.lower_lower, RationalProb(4, 27));
    EXPECT_EQ(p.lower_upper, RationalProb(8, 27));
    EXPECT_EQ(p.upper_lower, RationalProb(18, 27));
    EXPECT_EQ(p.upper_upper, RationalProb(1, 1));
    EXPECT_EQ(bounds(make({{1, 2}, {3, 4}, {5, 6}})), p);

    const std::vector<std::size_t> ones{1, 1, 1};
    EXPECT_EQ(perfect_reference(ones).lower_lower.count(), 0u);
}

TEST(Perfect, MatchesSeparatedData)
{
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<std::size_t> q_dist(3, 5), n_dist(0, 6);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<std::size_t> sizes(q_dist(rng));
        for (auto& n : sizes) {
            n = n_dist(rng);
        }
        EXPECT_EQ(bounds(npi::testing::separated(sizes)), perfect_reference(sizes));
    }
}

TEST(Complexity, Examples)
{
    EXPECT_EQ(complexity_estimate(npi::testing::separated({4, 5, 5, 6})).value, 4200u);
    EXPECT_EQ(complexity_estimate(example_one()).value, 9u * 11u * 6u);
    EXPECT_EQ(complexity_estimate(make({{1}, {2, 3}, {4}})).value, 4u);
    EXPECT_THROW(complexity_estimate(make({{1}, {2}})), ArityError);
}

TEST(Complexity, Saturates)
{
    const auto d = npi::testing::separated({30, 30, 30, 30, 30, 30});
    const ComplexityEstimate c = complexity_estimate(d, 1000);
    EXPECT_TRUE(c.saturated);
    EXPECT_EQ(c.value, 1000u);
}

TEST(Exact, ExampleOneMatchesThreeGroup)
{
    const ExactResult r = exact_search(example_one());
    EXPECT_EQ(r.lower, RationalProb(44, 468));
    EXPECT_EQ(r.upper, RationalProb(225, 468));
    EXPECT_EQ(evaluate_assignment(example_one(), r.lower_assignment), r.lower);
    EXPECT_EQ(evaluate_assignment(example_one(), r.upper_assignment), r.upper);
}

TEST(Exact, AllEmpty)
{
    const ExactResult r = exact_search(make({{}, {}, {}, {}}));
    EXPECT_EQ(r.lower, RationalProb(0, 1));
    EXPECT_EQ(r.upper, RationalProb(1, 1));
}

TEST(Exact, ExampleTwo)
{
    const ExactResult r = exact_search(example_two());
    EXPECT_EQ(r.lower, RationalProb(13, 1260));
    EXPECT_EQ(r.upper, RationalProb(257, 1260));
}

TEST(Exact, BudgetExceededCarriesSize)
{
    const auto d = example_two();
    const std::uint64_t size = exact_search_size(d);
    ASSERT_GT(size, 1u);
    try {
        exact_search(d, size - 1);
        FAIL() << "expected BudgetExceeded";
    } catch (const BudgetExceeded& e) {
        EXPECT_EQ(e.estimate(), size);
        EXPECT_EQ(e.budget(), size - 1);
    }
    EXPECT_NO_THROW(exact_search(d, size));
}

TEST(Assignment, RejectsMisfits)
{
    MassAssignment a;
    a.gaps = {{0}};
    EXPECT_THROW(evaluate_assignment(example_one(), a), ValidationError);
    a.gaps = {{0, 100, 25}};
    EXPECT_THROW(evaluate_assignment(example_one(), a), ValidationError);
}

TEST(AlgorithmA, ExampleTwoPerGroup)
{
    const AlgorithmAResult a = algorithm_a(example_two());
    ASSERT_EQ(a.lower_per_group.size(), 2u);
    EXPECT_EQ(a.lower_per_group[0].value.count(), 29u);
    EXPECT_EQ(a.lower_per_group[1].value.count(), 25u);
    EXPECT_EQ(a.upper_per_group[0].value.count(), 176u);
    EXPECT_EQ(a.upper_per_group[1].value.count(), 180u);
    EXPECT_EQ(a.lower, RationalProb(25, 1260));
    EXPECT_EQ(a.upper, RationalProb(180, 1260));
    EXPECT_EQ(a.lower_per_group[0].label, "X2");
}

TEST(AlgorithmA, ThreeGroupsIsExact)
{
    std::mt19937_64 rng(44);
    for (int rep = 0; rep < 100; ++rep) {
        const auto d = npi::testing::random_instance(rng, 3, 0, 6);
        const AlgorithmAResult a = algorithm_a(d);
        EXPECT_EQ((LowerUpper{a.lower, a.upper}), exact_three(d));
    }
}

TEST(AlgorithmA, TiesContainChosenCell)
{
    const AlgorithmAResult a = algorithm_a(example_two());
    for (const auto& g : a.lower_per_group) {
        ASSERT_EQ(g.cells.size(), g.ties.size());
        for (std::size_t k = 0; k < g.cells.size(); ++k) {
            EXPECT_EQ(g.ties[k].front(), g.cells[k]);
        }
    }
}

TEST(AlgorithmB, ExampleTwo)
{
    const AlgorithmBResult b = algorithm_b(example_two());
    EXPECT_EQ(b.lower, RationalProb(13, 1260));
    EXPECT_EQ(b.upper, RationalProb(257, 1260));
    EXPECT_EQ(evaluate_assignment(example_two(), b.lower_assignment), b.lower);
    EXPECT_EQ(evaluate_assignment(example_two(), b.upper_assignment), b.upper);
}

TEST(AlgorithmB, ThreeGroupsIsExact)
{
    EXPECT_EQ(algorithm_b(example_one()).lower, RationalProb(44, 468));
    EXPECT_EQ(algorithm_b(example_one()).upper, RationalProb(225, 468));
}

TEST(Scan, ExampleTwoExtremes)
{
    const auto d = example_two();
    const ScanResult lo = permutation_scan(d, ScanObjective::min_h);
    const ScanResult hi = permutation_scan(d, ScanObjective::max_h);
    EXPECT_EQ(lo.value, RationalProb(2, 600));
    EXPECT_EQ(hi.value, RationalProb(58, 600));
    EXPECT_EQ(lo.labels, (std::vector<std::string>{"X2", "X3", "X4", "X1"}));
    EXPECT_EQ(hi.labels, (std::vector<std::string>{"X1", "X4", "X2", "X3"}));
    EXPECT_THROW(permutation_scan(d, ScanObjective::max_h, 23), BudgetExceeded);
}

TEST(Scan, SeparatedDataPeaksAtIdentity)
{
    const auto d = npi::testing::separated({2, 3, 1, 2});
    const ScanResult hi = permutation_scan(d, ScanObjective::max_h);
    EXPECT_EQ(hi.positions, (std::vector<std::size_t>{0, 1, 2, 3}));
    EXPECT_EQ(hi.value, RationalProb(1, 1));
}

TEST(Scan, ExampleOneAgreesWithAllSixOrderings)
{
    const auto d = example_one();
    RationalProb lo(1, 1), hi(0, 1);
    std::vector<std::size_t> perm{0, 1, 2};
    do {
        const auto h = empirical_h(d.reordered(std::span<const std::size_t>(perm)));
        lo = std::min(lo, h);
        hi = std::max(hi, h);
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_EQ(permutation_scan(d, ScanObjective::min_h).value, lo);
    EXPECT_EQ(permutation_scan(d, ScanObjective::max_h).value, hi);
}

TEST(AlgorithmA, EmptyMiddleGroupsAreOptimisedAlongside)
{
    for (std::size_t q = 3; q <= 5; ++q) {
        const auto d = make(std::vector<std::vector<double>>(q));
        const AlgorithmAResult a = algorithm_a(d);
        EXPECT_EQ(a.lower, RationalProb(0, 1));
        EXPECT_EQ(a.upper, RationalProb(1, 1));
    }
    const auto d = make({{1, 5}, {2, 6}, {}, {3, 7}});
    const ExactResult e = exact_search(d);
    const AlgorithmAResult a = algorithm_a(d);
    EXPECT_LE(e.lower, a.lower);
    EXPECT_LE(a.upper, e.upper);
}
