#pragma once

// Symbolic evaluation of mass assignments over the pooled order.
//
// Every location is an integer key. Data ranks r (0 = -inf, total+1 = +inf)
// map to even slots; a middle-group mass inside gap c maps to the odd slot
// 2c+1, with a minor offset that orders masses sharing a gap: descending by
// ordering position for the lower probability (every pair fails the event)
// and ascending for the upper (every pair satisfies it). Strict comparison of
// keys then reproduces every indicator of the event exactly.

#include <npi/domain.hpp>
#include <npi/multi_group.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace npi::detail {

using Key = std::uint64_t;

class KeySpace {
public:
    KeySpace(std::size_t total, std::size_t q)
        : total_(total), q_(q), stride_(q + 1)
    {
    }

    Key data(std::size_t rank) const noexcept { return 2 * static_cast<Key>(rank) * stride_; }
    Key neg_inf() const noexcept { return data(0); }
    Key pos_inf() const noexcept { return data(total_ + 1); }

    /// Mass of the group at ordering position `position` placed in `gap`.
    Key mass(std::size_t gap, std::size_t position, Orientation o) const noexcept
    {
        const Key minor = o == Orientation::lower ? q_ - position : position + 1;
        return (2 * static_cast<Key>(gap) + 1) * stride_ + minor;
    }

private:
    std::size_t total_;
    std::size_t q_;
    Key stride_;
};

/// Endpoint layers of the first and last group for the given orientation:
/// lower puts the first group's masses at right ends and the last group's at
/// left ends, upper the reverse.
std::vector<Key> first_group_layer(const PooledOrder& order, const KeySpace& ks, Orientation o);
std::vector<Key> last_group_layer(const PooledOrder& order, const KeySpace& ks, Orientation o);
std::vector<Key> right_end_layer(const PooledOrder& order, const KeySpace& ks, std::size_t group);
std::vector<Key> left_end_layer(const PooledOrder& order, const KeySpace& ks, std::size_t group);
std::vector<Key> data_layer(const PooledOrder& order, const KeySpace& ks, std::size_t group);

/// Number of tuples, one key per layer, that are strictly increasing.
/// Each layer must be sorted.
std::uint64_t count_chains(const std::vector<std::vector<Key>>& layers);

/// Per-gap candidate lists, indexed [interval][option], ascending.
using IntervalCandidates = std::vector<std::vector<std::size_t>>;

/// What each middle group contributes to a search: either fixed locations
/// (e.g. its data right ends) or a choice of gap per interval.
struct MiddleGroupSpec {
    std::optional<std::vector<Key>> fixed;
    IntervalCandidates candidates;
};

struct SearchSpec {
    const PooledOrder* order = nullptr;
    Orientation orientation = Orientation::lower;
    std::vector<MiddleGroupSpec> middle;  // ordering positions 1 .. q-2
    /// Index into `middle` of the choice group to solve per interval;
    /// unset picks the one with the most combinations.
    std::optional<std::size_t> closed_form;
};

struct SearchResult {
    std::uint64_t best = 0;
    /// Chosen gap per interval for every choice group; empty for fixed groups.
    std::vector<std::vector<std::size_t>> choice;
    /// For the group optimised in closed form: every optimal gap per interval
    /// at the reported optimum.
    std::optional<std::size_t> closed_form_group;
    IntervalCandidates closed_form_ties;
    std::uint64_t leaves = 0;
};

/// Leaves the search would enumerate: the product of candidate counts over
/// all choice groups except the one solved per interval. Saturates at
/// UINT64_MAX.
std::uint64_t enumeration_size(const SearchSpec& spec);

/// Minimises (lower) or maximises (upper) the chain count over every
/// combination of candidates. One choice group is solved per interval in
/// closed form, which is exact because each tuple of the event touches
/// exactly one of its intervals. Ties keep the first combination in
/// lexicographic candidate order. Throws BudgetExceeded when
/// enumeration_size(spec) > budget.
SearchResult run_search(const SearchSpec& spec, std::uint64_t budget);

/// Chain count of one concrete assignment (every middle group fixed or with a
/// single candidate per interval).
std::uint64_t evaluate_layers(const PooledOrder& order, Orientation o,
                              const std::vector<std::vector<Key>>& middle_layers);

} // namespace npi::detail
