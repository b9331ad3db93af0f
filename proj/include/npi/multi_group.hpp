#pragma once

#include <npi/domain.hpp>
#include <npi/rational.hpp>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace npi {

/// Default cap on enumerated mass assignments for exact search and for
/// Algorithm B's combining step.
inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

/// Which NPI bound an assignment is evaluated for. Lower places the first
/// group's masses at right ends and the last group's at left ends; upper
/// does the reverse. Middle-group masses sharing a cell are ordered against
/// the event for lower and along it for upper.
enum class Orientation { lower, upper };

/// The four computable bounds around the exact lower and upper probability:
/// lower_lower <= lower <= lower_upper and upper_lower <= upper <= upper_upper.
struct FourBounds {
    RationalProb lower_lower;
    RationalProb lower_upper;
    RationalProb upper_lower;
    RationalProb upper_upper;

    friend bool operator==(const FourBounds&, const FourBounds&) = default;
};

/// One placement of every middle-group mass: gaps[m][k] is the pooled gap
/// (see PooledOrder) holding the mass of interval k of the group at ordering
/// position m + 1.
struct MassAssignment {
    Orientation orientation = Orientation::lower;
    std::vector<std::vector<std::size_t>> gaps;
};

/// Empirical probability that one observation per group is in the event
/// order, over all index tuples; denominator prod_j n_j. Throws EmptyGroup
/// if a group has no observations.
RationalProb empirical_h(const MultiGroupData& data);

/// Throws ArityError if q < 3.
FourBounds bounds(const MultiGroupData& data);

/// The four bounds for fully separated groups of the given sizes. The last
/// value is always 1; the first is clamped to 0 whenever a middle group has
/// fewer than two observations.
FourBounds perfect_reference(std::span<const std::size_t> sizes);

struct ComplexityEstimate {
    std::uint64_t value = 0;
    bool saturated = false;
};

inline constexpr std::uint64_t kDefaultComplexityCap = 1'000'000'000'000'000'000ULL;

/// Number of ways to place all middle-group masses at once:
/// prod over middle groups j and their intervals of (other observations
/// inside the interval + 1). Saturates at `cap`. Throws ArityError if q < 3.
ComplexityEstimate complexity_estimate(const MultiGroupData& data,
                                       std::uint64_t cap = kDefaultComplexityCap);

/// Chain count of a concrete assignment as a probability over prod(n_j + 1).
/// Throws ValidationError if the assignment does not fit the data.
RationalProb evaluate_assignment(const MultiGroupData& data, const MassAssignment& assignment);

struct ExactResult {
    RationalProb lower;
    RationalProb upper;
    MassAssignment lower_assignment;
    MassAssignment upper_assignment;
    /// Combinations enumerated per bound; one middle group is always solved
    /// per interval, so this is at most complexity_estimate.
    std::uint64_t enumerated = 0;
};

/// Exact NPI lower and upper probability by exhaustive search over mass
/// assignments. Throws BudgetExceeded (carrying the enumeration size) when
/// more than `budget` combinations would be visited. Requires q >= 2.
ExactResult exact_search(const MultiGroupData& data, std::uint64_t budget = kDefaultBudget);

/// Enumeration size exact_search would use; compare against a budget before
/// calling.
std::uint64_t exact_search_size(const MultiGroupData& data);

/// One middle group optimised with the others at their right ends.
struct GroupOptimum {
    std::size_t position = 0;  // ordering position of the optimised group
    std::string label;
    RationalProb value;
    std::vector<std::size_t> cells;          // chosen gap per interval (leftmost optimum)
    std::vector<std::vector<std::size_t>> ties;  // every optimal gap per interval
};

struct AlgorithmAResult {
    RationalProb lower;
    RationalProb upper;
    std::vector<GroupOptimum> lower_per_group;
    std::vector<GroupOptimum> upper_per_group;
};

/// Optimises each middle group on its own, with the other middle groups'
/// masses at the right ends of their intervals, and keeps the smallest lower
/// and largest upper value. A middle group with no observations has no ends,
/// so it is optimised alongside. Throws ArityError if q < 3.
AlgorithmAResult algorithm_a(const MultiGroupData& data);

struct AlgorithmBResult {
    RationalProb lower;
    RationalProb upper;
    MassAssignment lower_assignment;
    MassAssignment upper_assignment;
    std::uint64_t enumerated = 0;
};

/// Combines Algorithm A's per-group optima: every middle group is restricted
/// to the cells that were optimal for it alone, and the masses are then
/// placed jointly within those cells. The result is the count of one
/// feasible assignment. Throws ArityError if q < 3 and BudgetExceeded if the
/// joint placement exceeds `budget`.
AlgorithmBResult algorithm_b(const MultiGroupData& data, std::uint64_t budget = kDefaultBudget);

/// Same, reusing an Algorithm A result computed for `data`.
AlgorithmBResult algorithm_b(const MultiGroupData& data, const AlgorithmAResult& a,
                             std::uint64_t budget = kDefaultBudget);

enum class ScanObjective { min_h, max_h };

struct ScanResult {
    std::vector<std::size_t> positions;  // indices into the input groups
    std::vector<std::string> labels;
    RationalProb value;
};

/// Evaluates the empirical value for every ordering of the groups and
/// returns the extreme one; ties go to the lexicographically first ordering.
/// Throws BudgetExceeded when q! > budget.
ScanResult permutation_scan(const MultiGroupData& data, ScanObjective objective,
                            std::uint64_t budget = kDefaultBudget);

} // namespace npi
