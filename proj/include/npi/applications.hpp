#pragma once

#include <npi/csv.hpp>
#include <npi/domain.hpp>
#include <npi/multi_group.hpp>
#include <npi/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace npi {

struct ReportOptions {
    /// Budget for exact search and Algorithm B; either is omitted from the
    /// report (with the refused size recorded) when it would exceed this.
    std::uint64_t budget = kDefaultBudget;
    bool algorithm_b = true;
    /// When false and q > 3 the exact values are skipped (q = 3 is always
    /// cheap and always included).
    bool exact = true;
};

/// Everything known about one ordering event, all as exact rationals.
struct OrderingReport {
    std::vector<std::string> ordering;
    std::vector<std::size_t> n;
    std::uint64_t denominator = 1;

    FourBounds bounds;
    AlgorithmAResult algorithm_a;
    std::optional<LowerUpper> algorithm_b;
    std::optional<std::uint64_t> algorithm_b_refused;
    std::optional<LowerUpper> exact;
    std::optional<std::uint64_t> exact_refused;
    /// Absent when a group has no observations.
    std::optional<RationalProb> empirical;
    FourBounds perfect;
};

/// Bounds, Algorithm A (and B), the exact values when affordable, the
/// empirical value and the perfect-ordering reference for the groups in
/// their given order. Throws ArityError if q < 3.
OrderingReport ordering_report(const MultiGroupData& data, const ReportOptions& options = {});

/// NPI bounds on the volume (hyper-volume for q > 3) under the ROC surface,
/// groups ordered from the least to the most severe condition. For q = 3
/// the exact values always come from the per-interval K optimisation.
OrderingReport vus_bounds(const MultiGroupData& data, const ReportOptions& options = {});

/// Groups a ranked-set sample by rank: row j of the table (all cycles)
/// becomes group "rank<j+1>". Throws ShapeError on a ragged or empty table.
MultiGroupData rss_groups(const RssTable& table, TiePolicy ties = TiePolicy::perturb());

/// Report for the event that the next observation of each rank comes out
/// in ascending rank order. Needs at least three ranks.
OrderingReport rss_perfect_ordering(const RssTable& table, TiePolicy ties = TiePolicy::perturb(),
                                    const ReportOptions& options = {});

} // namespace npi
