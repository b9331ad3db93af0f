#pragma once

#include <npi/domain.hpp>
#include <npi/rational.hpp>

#include <cstdint>

namespace npi {

struct OracleResult {
    RationalProb lower;
    RationalProb upper;
    /// Cell-level assignments visited; equals complexity_estimate(data).
    std::uint64_t assignments_evaluated = 0;
};

inline constexpr std::uint64_t kDefaultOracleCap = 1'000'000;

/// Brute-force reference for the exact lower and upper probability.
///
/// Enumerates every choice of cell for every middle-group mass and, where
/// several masses share a cell, every relative order of them. Each
/// configuration is materialised as explicit numeric points and scored by
/// the literal nested sum over all interval tuples. Unbounded cells use the
/// pooled minimum - 1 and maximum + 1 as midpoints. Shares no code with the
/// symbolic search. Throws BudgetExceeded above `hard_cap` cell assignments.
OracleResult oracle_min_max(const MultiGroupData& data, std::uint64_t hard_cap = kDefaultOracleCap);

} // namespace npi
