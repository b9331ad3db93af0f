#include <npi/multi_group.hpp>

#include <npi/errors.hpp>

#include "search.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace npi {

namespace {

using detail::Key;
using detail::KeySpace;

void require_arity(const MultiGroupData& data, std::size_t min_q, const char* what)
{
    if (data.q() < min_q) {
        throw ArityError(std::string(what) + " requires at least " + std::to_string(min_q) + " groups, got " +
                         std::to_string(data.q()));
    }
}

std::uint64_t empirical_denominator(const MultiGroupData& data)
{
    std::uint64_t d = 1;
    for (const auto& g : data.groups()) {
        if (g.empty()) {
            throw EmptyGroup("empirical value needs observations in every group; '" + g.label + "' is empty");
        }
        d = checked_product(d, g.size());
    }
    return d;
}

/// All gaps of every interval of the group at `position`.
detail::IntervalCandidates all_cells(const PooledOrder& order, std::size_t position)
{
    detail::IntervalCandidates out(order.ranks[position].size() + 1);
    for (std::size_t k = 0; k < out.size(); ++k) {
        const std::size_t left = order.left_rank(position, k);
        const std::size_t right = order.right_rank(position, k);
        out[k].resize(right - left);
        std::iota(out[k].begin(), out[k].end(), left);
    }
    return out;
}

detail::SearchSpec full_search_spec(const PooledOrder& order, Orientation o)
{
    detail::SearchSpec spec;
    spec.order = &order;
    spec.orientation = o;
    const std::size_t q = order.ranks.size();
    for (std::size_t position = 1; position + 1 < q; ++position) {
        spec.middle.push_back({std::nullopt, all_cells(order, position)});
    }
    return spec;
}

/// Lower bound of the lower probability: chains of intervals where each
/// interval lies entirely left of the next group's interval.
std::uint64_t separated_interval_chains(const PooledOrder& order)
{
    const std::size_t q = order.ranks.size();
    std::vector<std::uint64_t> weight(order.ranks[0].size() + 1, 1);
    for (std::size_t j = 1; j < q; ++j) {
        const std::size_t prev_count = order.ranks[j - 1].size() + 1;
        std::vector<std::uint64_t> next(order.ranks[j].size() + 1, 0);
        std::size_t p = 0;
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < next.size(); ++k) {
            const std::size_t left = order.left_rank(j, k);
            while (p < prev_count && order.right_rank(j - 1, p) < left) {
                acc += weight[p++];
            }
            next[k] = acc;
        }
        weight = std::move(next);
    }
    return std::accumulate(weight.begin(), weight.end(), std::uint64_t{0});
}

/// Upper bound of the upper probability: interval tuples admitting
/// increasing points, i.e. left(I_j) < right(I_k) for every j < k. The state
/// is the largest left rank seen so far.
std::uint64_t compatible_interval_tuples(const PooledOrder& order)
{
    const std::size_t slots = order.total + 2;
    std::vector<std::uint64_t> state(slots, 0);
    for (std::size_t k = 0; k <= order.ranks[0].size(); ++k) {
        state[order.left_rank(0, k)] += 1;
    }
    for (std::size_t j = 1; j < order.ranks.size(); ++j) {
        std::vector<std::uint64_t> prefix(slots + 1, 0);
        for (std::size_t m = 0; m < slots; ++m) {
            prefix[m + 1] = prefix[m] + state[m];
        }
        std::vector<std::uint64_t> next(slots, 0);
        for (std::size_t k = 0; k <= order.ranks[j].size(); ++k) {
            const std::size_t left = order.left_rank(j, k);
            const std::size_t right = order.right_rank(j, k);
            // running max stays `left` when it was <= left ...
            next[left] += prefix[left + 1];
            // ... and is unchanged when it lies strictly inside the interval
            for (std::size_t m = left + 1; m < right; ++m) {
                next[m] += state[m];
            }
        }
        state = std::move(next);
    }
    return std::accumulate(state.begin(), state.end(), std::uint64_t{0});
}

GroupOptimum optimise_one_group(const MultiGroupData& data, const PooledOrder& order, std::size_t position,
                                Orientation o)
{
    const KeySpace ks(order.total, data.q());
    detail::SearchSpec spec;
    spec.order = &order;
    spec.orientation = o;
    for (std::size_t p = 1; p + 1 < data.q(); ++p) {
        if (p == position) {
            spec.middle.push_back({std::nullopt, all_cells(order, p)});
        } else if (order.ranks[p].empty()) {
            // no observations, so no interval ends to hold the mass at
            spec.middle.push_back({std::nullopt, all_cells(order, p)});
        } else {
            spec.middle.push_back({detail::right_end_layer(order, ks, p), {}});
        }
    }
    spec.closed_form = position - 1;
    auto result = detail::run_search(spec, kDefaultBudget);

    GroupOptimum out;
    out.position = position;
    out.label = data.group(position).label;
    out.value = RationalProb(result.best, data.npi_denominator());
    out.cells = std::move(result.choice[position - 1]);
    out.ties = std::move(result.closed_form_ties);
    return out;
}

} // namespace

RationalProb empirical_h(const MultiGroupData& data)
{
    const std::uint64_t denom = empirical_denominator(data);
    const PooledOrder order = pooled_order(data);
    const KeySpace ks(order.total, data.q());
    std::vector<std::vector<Key>> layers;
    for (std::size_t j = 0; j < data.q(); ++j) {
        layers.push_back(detail::data_layer(order, ks, j));
    }
    return RationalProb(detail::count_chains(layers), denom);
}

FourBounds bounds(const MultiGroupData& data)
{
    require_arity(data, 3, "bounds");
    const std::uint64_t denom = data.npi_denominator();
    const PooledOrder order = pooled_order(data);
    const KeySpace ks(order.total, data.q());
    const std::size_t q = data.q();

    std::vector<std::vector<Key>> lower_upper{detail::right_end_layer(order, ks, 0)};
    std::vector<std::vector<Key>> upper_lower{detail::left_end_layer(order, ks, 0)};
    for (std::size_t j = 1; j + 1 < q; ++j) {
        lower_upper.push_back(detail::right_end_layer(order, ks, j));
        upper_lower.push_back(detail::right_end_layer(order, ks, j));
    }
    lower_upper.push_back(detail::left_end_layer(order, ks, q - 1));
    upper_lower.push_back(detail::right_end_layer(order, ks, q - 1));

    return {
        RationalProb(separated_interval_chains(order), denom),
        RationalProb(detail::count_chains(lower_upper), denom),
        RationalProb(detail::count_chains(upper_lower), denom),
        RationalProb(compatible_interval_tuples(order), denom),
    };
}

FourBounds perfect_reference(std::span<const std::size_t> sizes)
{
    if (sizes.size() < 3) {
        throw ArityError("perfect_reference requires at least 3 groups, got " + std::to_string(sizes.size()));
    }
    std::uint64_t denom = 1;
    std::uint64_t all_sizes = 1;
    std::uint64_t middle_sizes = 1;
    std::uint64_t middle_less_one = 1;
    bool middle_degenerate = false;
    for (std::size_t j = 0; j < sizes.size(); ++j) {
        denom = checked_product(denom, sizes[j] + 1);
        all_sizes = checked_product(all_sizes, sizes[j]);
        if (j > 0 && j + 1 < sizes.size()) {
            middle_sizes = checked_product(middle_sizes, sizes[j]);
            if (sizes[j] <= 1) {
                middle_degenerate = true;
            } else {
                middle_less_one = checked_product(middle_less_one, sizes[j] - 1);
            }
        }
    }
    const std::uint64_t first = sizes.front();
    const std::uint64_t last = sizes.back();
    const std::uint64_t lower_lower =
        middle_degenerate ? 0 : checked_product(checked_product(first, last), middle_less_one);
    const std::uint64_t upper_lower = checked_product(checked_product(first + 1, last + 1), middle_sizes);
    return {
        RationalProb(lower_lower, denom),
        RationalProb(all_sizes, denom),
        RationalProb(upper_lower, denom),
        RationalProb(denom, denom),
    };
}

ComplexityEstimate complexity_estimate(const MultiGroupData& data, std::uint64_t cap)
{
    require_arity(data, 3, "complexity_estimate");
    const PooledOrder order = pooled_order(data);
    ComplexityEstimate out{1, false};
    for (std::size_t j = 1; j + 1 < data.q(); ++j) {
        for (std::size_t k = 0; k <= order.ranks[j].size(); ++k) {
            const std::uint64_t cells = order.right_rank(j, k) - order.left_rank(j, k);
            std::uint64_t next = 0;
            if (__builtin_mul_overflow(out.value, cells, &next) || next > cap) {
                return {cap, true};
            }
            out.value = next;
        }
    }
    return out;
}

RationalProb evaluate_assignment(const MultiGroupData& data, const MassAssignment& assignment)
{
    const std::uint64_t denom = data.npi_denominator();
    const PooledOrder order = pooled_order(data);
    const KeySpace ks(order.total, data.q());
    const std::size_t middle = data.q() >= 2 ? data.q() - 2 : 0;
    if (assignment.gaps.size() != middle) {
        throw ValidationError("assignment covers " + std::to_string(assignment.gaps.size()) +
                              " middle groups, expected " + std::to_string(middle));
    }
    std::vector<std::vector<Key>> layers(middle);
    for (std::size_t m = 0; m < middle; ++m) {
        const std::size_t position = m + 1;
        const auto& gaps = assignment.gaps[m];
        if (gaps.size() != order.ranks[position].size() + 1) {
            throw ValidationError("assignment for group '" + data.group(position).label + "' has " +
                                  std::to_string(gaps.size()) + " intervals");
        }
        for (std::size_t k = 0; k < gaps.size(); ++k) {
            if (gaps[k] < order.left_rank(position, k) || gaps[k] >= order.right_rank(position, k)) {
                throw ValidationError("assignment places a mass of group '" + data.group(position).label +
                                      "' outside interval " + std::to_string(k));
            }
            layers[m].push_back(ks.mass(gaps[k], position, assignment.orientation));
        }
    }
    return RationalProb(detail::evaluate_layers(order, assignment.orientation, layers), denom);
}

std::uint64_t exact_search_size(const MultiGroupData& data)
{
    require_arity(data, 2, "exact_search");
    const PooledOrder order = pooled_order(data);
    return detail::enumeration_size(full_search_spec(order, Orientation::lower));
}

ExactResult exact_search(const MultiGroupData& data, std::uint64_t budget)
{
    require_arity(data, 2, "exact_search");
    const std::uint64_t denom = data.npi_denominator();
    const PooledOrder order = pooled_order(data);

    ExactResult out;
    for (Orientation o : {Orientation::lower, Orientation::upper}) {
        const auto result = detail::run_search(full_search_spec(order, o), budget);
        MassAssignment assignment{o, result.choice};
        if (o == Orientation::lower) {
            out.lower = RationalProb(result.best, denom);
            out.lower_assignment = std::move(assignment);
        } else {
            out.upper = RationalProb(result.best, denom);
            out.upper_assignment = std::move(assignment);
        }
        out.enumerated = result.leaves;
    }
    return out;
}

AlgorithmAResult algorithm_a(const MultiGroupData& data)
{
    require_arity(data, 3, "algorithm_a");
    const PooledOrder order = pooled_order(data);

    AlgorithmAResult out;
    for (std::size_t position = 1; position + 1 < data.q(); ++position) {
        out.lower_per_group.push_back(optimise_one_group(data, order, position, Orientation::lower));
        out.upper_per_group.push_back(optimise_one_group(data, order, position, Orientation::upper));
    }
    // the other middle groups sit at right ends, or are optimised too when empty
    out.lower = std::min_element(out.lower_per_group.begin(), out.lower_per_group.end(),
                                 [](const auto& a, const auto& b) { return a.value < b.value; })
                    ->value;
    out.upper = std::max_element(out.upper_per_group.begin(), out.upper_per_group.end(),
                                 [](const auto& a, const auto& b) { return a.value < b.value; })
                    ->value;
    return out;
}

AlgorithmBResult algorithm_b(const MultiGroupData& data, std::uint64_t budget)
{
    return algorithm_b(data, algorithm_a(data), budget);
}

AlgorithmBResult algorithm_b(const MultiGroupData& data, const AlgorithmAResult& a, std::uint64_t budget)
{
    require_arity(data, 3, "algorithm_b");
    if (a.lower_per_group.size() != data.q() - 2 || a.upper_per_group.size() != data.q() - 2) {
        throw ValidationError("algorithm_b: Algorithm A result does not match the data");
    }
    const std::uint64_t denom = data.npi_denominator();
    const PooledOrder order = pooled_order(data);

    AlgorithmBResult out;
    for (Orientation o : {Orientation::lower, Orientation::upper}) {
        const auto& per_group = o == Orientation::lower ? a.lower_per_group : a.upper_per_group;
        detail::SearchSpec spec;
        spec.order = &order;
        spec.orientation = o;
        for (const auto& g : per_group) {
            spec.middle.push_back({std::nullopt, g.ties});
        }
        const auto result = detail::run_search(spec, budget);
        MassAssignment assignment{o, result.choice};
        if (o == Orientation::lower) {
            out.lower = RationalProb(result.best, denom);
            out.lower_assignment = std::move(assignment);
        } else {
            out.upper = RationalProb(result.best, denom);
            out.upper_assignment = std::move(assignment);
        }
        out.enumerated = std::max(out.enumerated, result.leaves);
    }
    return out;
}

ScanResult permutation_scan(const MultiGroupData& data, ScanObjective objective, std::uint64_t budget)
{
    std::uint64_t orderings = 1;
    bool saturated = false;
    for (std::uint64_t k = 2; k <= data.q(); ++k) {
        if (__builtin_mul_overflow(orderings, k, &orderings)) {
            saturated = true;
            orderings = std::numeric_limits<std::uint64_t>::max();
            break;
        }
    }
    if (orderings > budget) {
        throw BudgetExceeded(orderings, budget, saturated);
    }
    const std::uint64_t denom = empirical_denominator(data);
    const PooledOrder order = pooled_order(data);
    const KeySpace ks(order.total, data.q());
    std::vector<std::vector<Key>> by_group;
    for (std::size_t j = 0; j < data.q(); ++j) {
        by_group.push_back(detail::data_layer(order, ks, j));
    }

    std::vector<std::size_t> positions(data.q());
    std::iota(positions.begin(), positions.end(), 0);
    std::vector<std::size_t> best_positions;
    std::uint64_t best = 0;
    std::vector<std::vector<Key>> layers(data.q());
    do {
        for (std::size_t i = 0; i < positions.size(); ++i) {
            layers[i] = by_group[positions[i]];
        }
        const std::uint64_t count = detail::count_chains(layers);
        const bool better = objective == ScanObjective::min_h ? count < best : count > best;
        if (best_positions.empty() || better) {
            best = count;
            best_positions = positions;
        }
    } while (std::next_permutation(positions.begin(), positions.end()));

    ScanResult out;
    out.positions = best_positions;
    for (auto p : best_positions) {
        out.labels.push_back(data.group(p).label);
    }
    out.value = RationalProb(best, denom);
    return out;
}

} // namespace npi
