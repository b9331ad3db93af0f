#pragma once

#include <npi/rational.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace npi {

/// One group's observations, sorted strictly increasing.
///
/// Interval k (0 <= k <= n) is (x_{k-1}, x_k) in 0-based data terms, with
/// x_{-1} = -inf and x_n = +inf. The infinite endpoints are never stored.
struct GroupSample {
    std::string label;
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
    bool empty() const noexcept { return values.empty(); }
    std::size_t interval_count() const noexcept { return values.size() + 1; }

    /// Left and right endpoint of interval k, using +-infinity at the ends.
    double interval_lower(std::size_t k) const;
    double interval_upper(std::size_t k) const;
};

/// The groups in the order of the event X_1 < X_2 < ... < X_q.
class MultiGroupData {
public:
    /// Validates: q >= 2, distinct non-empty labels, finite values, strictly
    /// increasing within each group and no value shared between groups.
    explicit MultiGroupData(std::vector<GroupSample> groups);

    std::size_t q() const noexcept { return groups_.size(); }
    const GroupSample& group(std::size_t j) const { return groups_.at(j); }
    std::span<const GroupSample> groups() const noexcept { return groups_; }

    std::vector<std::size_t> sizes() const;
    std::vector<std::string> labels() const;
    std::size_t total_size() const noexcept;

    std::optional<std::size_t> index_of(const std::string& label) const;

    /// The groups named by `ordering`, in that order. Labels must be distinct
    /// and present; a subset of at least two groups is allowed.
    MultiGroupData reordered(std::span<const std::string> ordering) const;
    MultiGroupData reordered(std::span<const std::size_t> positions) const;

    /// prod_j (n_j + 1), the NPI denominator. Throws ValidationError on overflow.
    std::uint64_t npi_denominator() const;

private:
    std::vector<GroupSample> groups_;
};

struct TiePolicy {
    enum class Kind { reject, epsilon };

    Kind kind = Kind::reject;
    /// Separation step for Kind::epsilon; 0 selects one automatically.
    double epsilon = 0.0;

    static TiePolicy reject() { return {}; }
    static TiePolicy perturb(double eps = 0.0) { return {Kind::epsilon, eps}; }
};

using RawGroups = std::vector<std::pair<std::string, std::vector<double>>>;

/// Sorts each group and resolves ties.
///
/// Under epsilon, every run of equal values (within or across groups) is
/// spread out as v, v + eps, v + 2 eps, ... ordered by group label and then by
/// input position. With eps = 0 the step is the smallest nonzero gap divided
/// by twice the longest run. Throws TieError under reject or when eps cannot
/// separate a run without reaching the next distinct value, EmptyInput for
/// fewer than two groups.
MultiGroupData validate_and_sort(const RawGroups& raw, TiePolicy policy = TiePolicy::reject());

/// The pooled sorted order of all observations.
///
/// Pooled rank r (1..total) is the r-th smallest value. Gap c (0..total) is
/// the open interval between pooled ranks c and c+1, with rank 0 = -inf and
/// rank total+1 = +inf.
struct PooledOrder {
    std::size_t total = 0;
    std::vector<double> values;               // values[r - 1] has pooled rank r
    std::vector<std::size_t> owner;           // owner[r - 1] is its group
    std::vector<std::vector<std::size_t>> ranks;  // ranks[j][i]: pooled rank of x_{j,i}

    /// Pooled rank of the left / right end of interval k of group j.
    std::size_t left_rank(std::size_t j, std::size_t k) const;
    std::size_t right_rank(std::size_t j, std::size_t k) const;
};

PooledOrder pooled_order(const MultiGroupData& data);

/// One open cell of a group's data interval. Cells are identified by the
/// pooled gap they occupy; no representative point is ever materialised.
struct Cell {
    std::size_t gap = 0;
    /// below[l]: number of group-l observations <= the cell's left edge
    /// (for l equal to the partitioned group this is the interval index).
    std::vector<std::size_t> below;
};

/// The cells of interval `interval` of group `group` cut by every other
/// group's observations lying strictly inside it.
struct SubIntervalPartition {
    std::size_t group = 0;
    std::size_t interval = 0;
    double lower = 0.0;
    double upper = 0.0;
    std::vector<double> breakpoints;
    std::vector<Cell> cells;
};

/// Throws IndexError when group >= q or interval > n_group.
SubIntervalPartition partition(const MultiGroupData& data, std::size_t group, std::size_t interval);

/// All n_group + 1 partitions of one group, in interval order.
std::vector<SubIntervalPartition> partition_group(const MultiGroupData& data, std::size_t group);

} // namespace npi
