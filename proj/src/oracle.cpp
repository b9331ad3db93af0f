#include <npi/oracle.hpp>

#include <npi/errors.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>
#include <vector>

namespace npi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct OracleCell {
    double lo;
    double hi;
};

/// Literal sum over every tuple of one point per group of I(p_1 < ... < p_q).
std::uint64_t literal_count(const std::vector<std::vector<double>>& points)
{
    std::vector<std::size_t> idx(points.size(), 0);
    for (const auto& p : points) {
        if (p.empty()) {
            return 0;
        }
    }
    std::uint64_t count = 0;
    for (;;) {
        bool ordered = true;
        for (std::size_t j = 0; j + 1 < points.size(); ++j) {
            if (!(points[j][idx[j]] < points[j + 1][idx[j + 1]])) {
                ordered = false;
                break;
            }
        }
        count += ordered ? 1 : 0;

        std::size_t j = points.size();
        while (j-- > 0) {
            if (++idx[j] < points[j].size()) {
                break;
            }
            idx[j] = 0;
        }
        if (j == static_cast<std::size_t>(-1)) {
            return count;
        }
    }
}

std::vector<double> right_ends(const GroupSample& g)
{
    std::vector<double> out = g.values;
    out.push_back(kInf);
    return out;
}

std::vector<double> left_ends(const GroupSample& g)
{
    std::vector<double> out{-kInf};
    out.insert(out.end(), g.values.begin(), g.values.end());
    return out;
}

class Oracle {
public:
    explicit Oracle(const MultiGroupData& data)
        : data_(data)
    {
        std::vector<double> pooled;
        for (const auto& g : data.groups()) {
            pooled.insert(pooled.end(), g.values.begin(), g.values.end());
        }
        std::sort(pooled.begin(), pooled.end());
        // finite stand-ins for the unbounded cells, centred on min - 1 / max + 1
        lo_proxy_ = pooled.empty() ? -1.0 : pooled.front() - 2.0;
        hi_proxy_ = pooled.empty() ? 1.0 : pooled.back() + 2.0;

        for (std::size_t j = 1; j + 1 < data.q(); ++j) {
            const auto& g = data.group(j);
            std::vector<std::vector<OracleCell>> intervals;
            for (std::size_t k = 0; k <= g.size(); ++k) {
                const double lo = k == 0 ? -kInf : g.values[k - 1];
                const double hi = k == g.size() ? kInf : g.values[k];
                std::vector<double> cuts{lo};
                for (double v : pooled) {
                    if (lo < v && v < hi) {
                        cuts.push_back(v);
                    }
                }
                cuts.push_back(hi);
                std::vector<OracleCell> cells;
                for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
                    cells.push_back({cuts[c], cuts[c + 1]});
                }
                intervals.push_back(std::move(cells));
            }
            cells_.push_back(std::move(intervals));
        }

        first_lower_ = right_ends(data.group(0));
        first_upper_ = left_ends(data.group(0));
        last_lower_ = left_ends(data.group(data.q() - 1));
        last_upper_ = right_ends(data.group(data.q() - 1));
    }

    std::uint64_t assignment_count() const
    {
        std::uint64_t n = 1;
        for (const auto& intervals : cells_) {
            for (const auto& cells : intervals) {
                if (__builtin_mul_overflow(n, cells.size(), &n)) {
                    return std::numeric_limits<std::uint64_t>::max();
                }
            }
        }
        return n;
    }

    OracleResult run()
    {
        OracleResult out;
        std::vector<std::pair<std::size_t, std::size_t>> slots;
        for (std::size_t m = 0; m < cells_.size(); ++m) {
            for (std::size_t k = 0; k < cells_[m].size(); ++k) {
                slots.emplace_back(m, k);
            }
        }
        std::vector<std::size_t> choice(slots.size(), 0);
        bool have = false;
        std::uint64_t lower = 0;
        std::uint64_t upper = 0;
        for (;;) {
            ++out.assignments_evaluated;
            for_each_arrangement(slots, choice, [&](const std::vector<std::vector<double>>& middle) {
                const std::uint64_t lo = score(first_lower_, middle, last_lower_);
                const std::uint64_t hi = score(first_upper_, middle, last_upper_);
                if (!have) {
                    lower = lo;
                    upper = hi;
                    have = true;
                } else {
                    lower = std::min(lower, lo);
                    upper = std::max(upper, hi);
                }
            });

            std::size_t s = slots.size();
            while (s-- > 0) {
                if (++choice[s] < cells_[slots[s].first][slots[s].second].size()) {
                    break;
                }
                choice[s] = 0;
            }
            if (s == static_cast<std::size_t>(-1)) {
                break;
            }
        }

        const std::uint64_t denom = data_.npi_denominator();
        out.lower = RationalProb(lower, denom);
        out.upper = RationalProb(upper, denom);
        return out;
    }

private:
    std::uint64_t score(const std::vector<double>& first, const std::vector<std::vector<double>>& middle,
                        const std::vector<double>& last) const
    {
        std::vector<std::vector<double>> points;
        points.push_back(first);
        points.insert(points.end(), middle.begin(), middle.end());
        points.push_back(last);
        return literal_count(points);
    }

    /// Calls `fn` with numeric mass points for every relative order of the
    /// masses that share a cell.
    template <typename Fn>
    void for_each_arrangement(const std::vector<std::pair<std::size_t, std::size_t>>& slots,
                              const std::vector<std::size_t>& choice, Fn&& fn) const
    {
        // masses grouped by the cell they sit in, keyed by its edges
        std::map<std::pair<double, double>, std::vector<std::size_t>> shared;
        for (std::size_t s = 0; s < slots.size(); ++s) {
            const auto& cell = cells_[slots[s].first][slots[s].second][choice[s]];
            shared[{cell.lo, cell.hi}].push_back(s);
        }
        std::vector<std::pair<OracleCell, std::vector<std::size_t>>> groups;
        for (auto& [edges, members] : shared) {
            std::sort(members.begin(), members.end());
            groups.push_back({{edges.first, edges.second}, members});
        }

        std::vector<std::vector<double>> middle(cells_.size());
        for (std::size_t m = 0; m < cells_.size(); ++m) {
            middle[m].assign(cells_[m].size(), 0.0);
        }
        arrange(groups, 0, slots, middle, fn);
    }

    template <typename Fn>
    void arrange(std::vector<std::pair<OracleCell, std::vector<std::size_t>>>& groups, std::size_t g,
                 const std::vector<std::pair<std::size_t, std::size_t>>& slots,
                 std::vector<std::vector<double>>& middle, Fn& fn) const
    {
        if (g == groups.size()) {
            fn(middle);
            return;
        }
        auto& [cell, members] = groups[g];
        const double lo = std::isinf(cell.lo) ? lo_proxy_ : cell.lo;
        const double hi = std::isinf(cell.hi) ? hi_proxy_ : cell.hi;
        std::vector<std::size_t> order = members;
        do {
            for (std::size_t i = 0; i < order.size(); ++i) {
                const double t = static_cast<double>(i + 1) / static_cast<double>(order.size() + 1);
                const auto [m, k] = slots[order[i]];
                middle[m][k] = lo + (hi - lo) * t;
            }
            arrange(groups, g + 1, slots, middle, fn);
        } while (std::next_permutation(order.begin(), order.end()));
    }

    const MultiGroupData& data_;
    double lo_proxy_ = -1.0;
    double hi_proxy_ = 1.0;
    std::vector<std::vector<std::vector<OracleCell>>> cells_;  // [middle][interval][cell]
    std::vector<double> first_lower_;
    std::vector<double> first_upper_;
    std::vector<double> last_lower_;
    std::vector<double> last_upper_;
};

} // namespace

OracleResult oracle_min_max(const MultiGroupData& data, std::uint64_t hard_cap)
{
    Oracle oracle(data);
    const std::uint64_t n = oracle.assignment_count();
    if (n > hard_cap) {
        throw BudgetExceeded(n, hard_cap, n == std::numeric_limits<std::uint64_t>::max());
    }
    return oracle.run();
}

} // namespace npi
