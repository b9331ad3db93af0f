#include <npi/domain.hpp>

#include <npi/errors.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace npi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string describe_value(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

struct Entry {
    double value;
    const std::string* label;
    std::size_t group;
    std::size_t position;
};

} // namespace

double GroupSample::interval_lower(std::size_t k) const
{
    if (k > values.size()) {
        throw IndexError("interval " + std::to_string(k) + " out of range for group '" + label + "'");
    }
    return k == 0 ? -kInf : values[k - 1];
}

double GroupSample::interval_upper(std::size_t k) const
{
    if (k > values.size()) {
        throw IndexError("interval " + std::to_string(k) + " out of range for group '" + label + "'");
    }
    return k == values.size() ? kInf : values[k];
}

MultiGroupData::MultiGroupData(std::vector<GroupSample> groups)
    : groups_(std::move(groups))
{
    if (groups_.size() < 2) {
        throw EmptyInput("at least two groups are required, got " + std::to_string(groups_.size()));
    }
    std::set<std::string> seen;
    for (const auto& g : groups_) {
        if (g.label.empty()) {
            throw ValidationError("group label must not be empty");
        }
        if (!seen.insert(g.label).second) {
            throw ValidationError("duplicate group label '" + g.label + "'");
        }
        for (std::size_t i = 0; i < g.values.size(); ++i) {
            if (!std::isfinite(g.values[i])) {
                throw ValidationError("non-finite value in group '" + g.label + "'");
            }
            if (i > 0 && !(g.values[i - 1] < g.values[i])) {
                throw ValidationError("group '" + g.label + "' is not strictly increasing at value " +
                                      describe_value(g.values[i]));
            }
        }
    }

    std::vector<std::pair<double, std::size_t>> pooled;
    pooled.reserve(total_size());
    for (std::size_t j = 0; j < groups_.size(); ++j) {
        for (double v : groups_[j].values) {
            pooled.emplace_back(v, j);
        }
    }
    std::sort(pooled.begin(), pooled.end());
    for (std::size_t r = 1; r < pooled.size(); ++r) {
        if (pooled[r - 1].first == pooled[r].first) {
            throw TieError("value " + describe_value(pooled[r].first) + " appears in groups '" +
                           groups_[pooled[r - 1].second].label + "' and '" +
                           groups_[pooled[r].second].label + "'");
        }
    }
}

std::vector<std::size_t> MultiGroupData::sizes() const
{
    std::vector<std::size_t> out;
    out.reserve(groups_.size());
    for (const auto& g : groups_) {
        out.push_back(g.size());
    }
    return out;
}

std::vector<std::string> MultiGroupData::labels() const
{
    std::vector<std::string> out;
    out.reserve(groups_.size());
    for (const auto& g : groups_) {
        out.push_back(g.label);
    }
    return out;
}

std::size_t MultiGroupData::total_size() const noexcept
{
    std::size_t n = 0;
    for (const auto& g : groups_) {
        n += g.size();
    }
    return n;
}

std::optional<std::size_t> MultiGroupData::index_of(const std::string& label) const
{
    for (std::size_t j = 0; j < groups_.size(); ++j) {
        if (groups_[j].label == label) {
            return j;
        }
    }
    return std::nullopt;
}

MultiGroupData MultiGroupData::reordered(std::span<const std::string> ordering) const
{
    std::vector<std::size_t> positions;
    positions.reserve(ordering.size());
    for (const auto& label : ordering) {
        auto j = index_of(label);
        if (!j) {
            throw ValidationError("ordering names unknown group '" + label + "'");
        }
        positions.push_back(*j);
    }
    return reordered(std::span<const std::size_t>(positions));
}

MultiGroupData MultiGroupData::reordered(std::span<const std::size_t> positions) const
{
    std::vector<bool> used(groups_.size(), false);
    std::vector<GroupSample> out;
    out.reserve(positions.size());
    for (std::size_t j : positions) {
        if (j >= groups_.size()) {
            throw IndexError("group position " + std::to_string(j) + " out of range");
        }
        if (used[j]) {
            throw ValidationError("ordering repeats group '" + groups_[j].label + "'");
        }
        used[j] = true;
        out.push_back(groups_[j]);
    }
    return MultiGroupData(std::move(out));
}

std::uint64_t MultiGroupData::npi_denominator() const
{
    std::uint64_t d = 1;
    for (const auto& g : groups_) {
        d = checked_product(d, g.size() + 1);
    }
    return d;
}

MultiGroupData validate_and_sort(const RawGroups& raw, TiePolicy policy)
{
    if (raw.size() < 2) {
        throw EmptyInput("at least two groups are required, got " + std::to_string(raw.size()));
    }

    std::vector<Entry> entries;
    for (std::size_t j = 0; j < raw.size(); ++j) {
        const auto& [label, values] = raw[j];
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!std::isfinite(values[i])) {
                throw ValidationError("non-finite value in group '" + label + "'");
            }
            entries.push_back({values[i], &label, j, i});
        }
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.value != b.value) {
            return a.value < b.value;
        }
        if (*a.label != *b.label) {
            return *a.label < *b.label;
        }
        return a.position < b.position;
    });

    double smallest_gap = kInf;
    std::size_t longest_run = 1;
    std::size_t run = 1;
    for (std::size_t r = 1; r < entries.size(); ++r) {
        if (entries[r].value == entries[r - 1].value) {
            if (policy.kind == TiePolicy::Kind::reject) {
                throw TieError("tied value " + describe_value(entries[r].value) + " in groups '" +
                               *entries[r - 1].label + "' and '" + *entries[r].label + "'");
            }
            longest_run = std::max(longest_run, ++run);
        } else {
            smallest_gap = std::min(smallest_gap, entries[r].value - entries[r - 1].value);
            run = 1;
        }
    }

    if (longest_run > 1) {
        double eps = policy.epsilon;
        if (eps < 0.0 || !std::isfinite(eps)) {
            throw ValidationError("epsilon must be a non-negative finite number");
        }
        if (eps == 0.0) {
            eps = std::isfinite(smallest_gap) ? smallest_gap / (2.0 * static_cast<double>(longest_run))
                                              : 1.0;
        }
        if (std::isfinite(smallest_gap) &&
            !(eps * static_cast<double>(longest_run - 1) < smallest_gap)) {
            throw TieError("epsilon " + describe_value(eps) + " cannot separate a run of " +
                           std::to_string(longest_run) + " ties below the smallest gap " +
                           describe_value(smallest_gap));
        }
        std::size_t step = 0;
        double base = 0.0;
        for (std::size_t r = 0; r < entries.size(); ++r) {
            if (r > 0 && entries[r].value == base) {
                ++step;
                entries[r].value = base + static_cast<double>(step) * eps;
                if (!(entries[r - 1].value < entries[r].value)) {
                    throw TieError("epsilon " + describe_value(eps) + " is below the resolution of value " +
                                   describe_value(base));
                }
            } else {
                base = entries[r].value;
                step = 0;
            }
        }
    }

    std::vector<GroupSample> groups(raw.size());
    for (std::size_t j = 0; j < raw.size(); ++j) {
        groups[j].label = raw[j].first;
        groups[j].values.reserve(raw[j].second.size());
    }
    for (const auto& e : entries) {
        groups[e.group].values.push_back(e.value);
    }
    return MultiGroupData(std::move(groups));
}

std::size_t PooledOrder::left_rank(std::size_t j, std::size_t k) const
{
    return k == 0 ? 0 : ranks.at(j).at(k - 1);
}

std::size_t PooledOrder::right_rank(std::size_t j, std::size_t k) const
{
    const auto& r = ranks.at(j);
    return k == r.size() ? total + 1 : r.at(k);
}

PooledOrder pooled_order(const MultiGroupData& data)
{
    PooledOrder out;
    std::vector<std::pair<double, std::size_t>> pooled;
    pooled.reserve(data.total_size());
    out.ranks.resize(data.q());
    for (std::size_t j = 0; j < data.q(); ++j) {
        for (double v : data.group(j).values) {
            pooled.emplace_back(v, j);
        }
        out.ranks[j].reserve(data.group(j).size());
    }
    std::sort(pooled.begin(), pooled.end());

    out.total = pooled.size();
    out.values.reserve(pooled.size());
    out.owner.reserve(pooled.size());
    for (std::size_t r = 0; r < pooled.size(); ++r) {
        out.values.push_back(pooled[r].first);
        out.owner.push_back(pooled[r].second);
        out.ranks[pooled[r].second].push_back(r + 1);
    }
    return out;
}

std::vector<SubIntervalPartition> partition_group(const MultiGroupData& data, std::size_t group)
{
    if (group >= data.q()) {
        throw IndexError("group " + std::to_string(group) + " out of range for q = " + std::to_string(data.q()));
    }
    const PooledOrder order = pooled_order(data);
    const GroupSample& g = data.group(group);

    std::vector<SubIntervalPartition> out(g.interval_count());
    std::vector<std::size_t> below(data.q(), 0);
    std::size_t gap = 0;
    for (std::size_t k = 0; k < g.interval_count(); ++k) {
        SubIntervalPartition& part = out[k];
        part.group = group;
        part.interval = k;
        part.lower = g.interval_lower(k);
        part.upper = g.interval_upper(k);

        const std::size_t right = order.right_rank(group, k);
        for (;; ++gap) {
            part.cells.push_back({gap, below});
            if (gap + 1 == right) {
                break;
            }
            // pooled rank gap + 1 lies strictly inside the interval
            part.breakpoints.push_back(order.values[gap]);
            ++below[order.owner[gap]];
        }
        // step over the group's own observation closing this interval
        if (right <= order.total) {
            ++below[group];
            ++gap;
        }
    }
    return out;
}

SubIntervalPartition partition(const MultiGroupData& data, std::size_t group, std::size_t interval)
{
    if (group >= data.q()) {
        throw IndexError("group " + std::to_string(group) + " out of range for q = " + std::to_string(data.q()));
    }
    if (interval > data.group(group).size()) {
        throw IndexError("interval " + std::to_string(interval) + " out of range for group '" +
                         data.group(group).label + "'");
    }
    auto all = partition_group(data, group);
    return std::move(all[interval]);
}

} // namespace npi
