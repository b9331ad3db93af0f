#include "search.hpp"

#include <npi/errors.hpp>

#include <algorithm>
#include <limits>
#include <thread>

namespace npi::detail {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t out = 0;
    return __builtin_mul_overflow(a, b, &out) ? kSaturated : out;
}

struct Weighted {
    const std::vector<Key>* keys = nullptr;
    std::vector<std::uint64_t> weight;
};

/// weight[b] = sum of prev weights at keys < b.
Weighted step_forward(const Weighted& prev, const std::vector<Key>& next)
{
    Weighted out{&next, std::vector<std::uint64_t>(next.size(), 0)};
    std::size_t a = 0;
    std::uint64_t acc = 0;
    for (std::size_t b = 0; b < next.size(); ++b) {
        while (a < prev.keys->size() && (*prev.keys)[a] < next[b]) {
            acc += prev.weight[a++];
        }
        out.weight[b] = acc;
    }
    return out;
}

/// weight[a] = sum of next weights at keys > a.
Weighted step_backward(const Weighted& next, const std::vector<Key>& prev)
{
    Weighted out{&prev, std::vector<std::uint64_t>(prev.size(), 0)};
    std::size_t b = next.keys->size();
    std::uint64_t acc = 0;
    for (std::size_t a = prev.size(); a-- > 0;) {
        while (b > 0 && (*next.keys)[b - 1] > prev[a]) {
            acc += next.weight[--b];
        }
        out.weight[a] = acc;
    }
    return out;
}

Weighted unit(const std::vector<Key>& keys)
{
    return {&keys, std::vector<std::uint64_t>(keys.size(), 1)};
}

std::size_t choose_closed_form_group(const SearchSpec& spec)
{
    if (spec.closed_form && *spec.closed_form < spec.middle.size() && !spec.middle[*spec.closed_form].fixed) {
        return *spec.closed_form;
    }
    std::size_t best = spec.middle.size();
    std::uint64_t best_size = 0;
    for (std::size_t m = 0; m < spec.middle.size(); ++m) {
        if (spec.middle[m].fixed) {
            continue;
        }
        std::uint64_t size = 1;
        for (const auto& c : spec.middle[m].candidates) {
            size = saturating_mul(size, c.size());
        }
        if (best == spec.middle.size() || size > best_size) {
            best = m;
            best_size = size;
        }
    }
    return best;
}

struct Slot {
    std::size_t middle;
    std::size_t interval;
    std::size_t radix;
};

/// Evaluates leaves of one search. Layers are kept in place and updated one
/// slot at a time as the odometer advances.
class Evaluator {
public:
    Evaluator(const SearchSpec& spec, std::size_t closed_form)
        : spec_(spec),
          ks_(spec.order->total, spec.middle.size() + 2),
          closed_form_(closed_form)
    {
        first_ = first_group_layer(*spec.order, ks_, spec.orientation);
        last_ = last_group_layer(*spec.order, ks_, spec.orientation);
        layers_.resize(spec.middle.size());
        for (std::size_t m = 0; m < spec.middle.size(); ++m) {
            const auto& g = spec.middle[m];
            if (g.fixed) {
                layers_[m] = *g.fixed;
            } else {
                layers_[m].resize(g.candidates.size());
                for (std::size_t k = 0; k < g.candidates.size(); ++k) {
                    layers_[m][k] = mass_key(m, g.candidates[k].front());
                }
            }
        }
    }

    Key mass_key(std::size_t middle, std::size_t gap) const
    {
        return ks_.mass(gap, middle + 1, spec_.orientation);
    }

    void set(std::size_t middle, std::size_t interval, std::size_t option)
    {
        layers_[middle][interval] = mass_key(middle, spec_.middle[middle].candidates[interval][option]);
    }

    /// Value of the current leaf, optimising the closed-form group per
    /// interval. When `ties` is given it receives every optimal gap.
    std::uint64_t evaluate(IntervalCandidates* ties = nullptr) const
    {
        if (closed_form_ == spec_.middle.size()) {
            return chain_count();
        }
        // chains arriving from the left, ending just before the closed-form group
        Weighted left = unit(first_);
        for (std::size_t m = 0; m < closed_form_; ++m) {
            left = step_forward(left, layers_[m]);
        }
        Weighted right = unit(last_);
        for (std::size_t m = spec_.middle.size(); m-- > closed_form_ + 1;) {
            right = step_backward(right, layers_[m]);
        }

        std::vector<std::uint64_t> left_prefix(left.keys->size() + 1, 0);
        for (std::size_t i = 0; i < left.keys->size(); ++i) {
            left_prefix[i + 1] = left_prefix[i] + left.weight[i];
        }
        std::vector<std::uint64_t> right_suffix(right.keys->size() + 1, 0);
        for (std::size_t i = right.keys->size(); i-- > 0;) {
            right_suffix[i] = right_suffix[i + 1] + right.weight[i];
        }

        const auto& cands = spec_.middle[closed_form_].candidates;
        if (ties) {
            ties->assign(cands.size(), {});
        }
        const bool minimise = spec_.orientation == Orientation::lower;
        std::uint64_t total = 0;
        for (std::size_t k = 0; k < cands.size(); ++k) {
            std::uint64_t best = 0;
            bool have = false;
            for (std::size_t gap : cands[k]) {
                const Key p = mass_key(closed_form_, gap);
                const auto below = static_cast<std::size_t>(
                    std::lower_bound(left.keys->begin(), left.keys->end(), p) - left.keys->begin());
                const auto above = static_cast<std::size_t>(
                    std::upper_bound(right.keys->begin(), right.keys->end(), p) - right.keys->begin());
                const std::uint64_t value = left_prefix[below] * right_suffix[above];
                if (!have || (minimise ? value < best : value > best)) {
                    best = value;
                    have = true;
                    if (ties) {
                        (*ties)[k].assign(1, gap);
                    }
                } else if (ties && value == best) {
                    (*ties)[k].push_back(gap);
                }
            }
            total += best;
        }
        return total;
    }

    std::uint64_t chain_count() const
    {
        Weighted w = unit(first_);
        for (const auto& layer : layers_) {
            w = step_forward(w, layer);
        }
        w = step_forward(w, last_);
        std::uint64_t total = 0;
        for (auto x : w.weight) {
            total += x;
        }
        return total;
    }

private:
    const SearchSpec& spec_;
    KeySpace ks_;
    std::size_t closed_form_;
    std::vector<Key> first_;
    std::vector<Key> last_;
    std::vector<std::vector<Key>> layers_;
};

std::vector<Slot> enumerated_slots(const SearchSpec& spec, std::size_t closed_form)
{
    std::vector<Slot> slots;
    for (std::size_t m = 0; m < spec.middle.size(); ++m) {
        if (m == closed_form || spec.middle[m].fixed) {
            continue;
        }
        for (std::size_t k = 0; k < spec.middle[m].candidates.size(); ++k) {
            slots.push_back({m, k, spec.middle[m].candidates[k].size()});
        }
    }
    return slots;
}

/// Mixed-radix digits of a leaf index; the last slot varies fastest.
std::vector<std::size_t> decode(std::uint64_t index, const std::vector<Slot>& slots)
{
    std::vector<std::size_t> digits(slots.size(), 0);
    for (std::size_t s = slots.size(); s-- > 0;) {
        digits[s] = static_cast<std::size_t>(index % slots[s].radix);
        index /= slots[s].radix;
    }
    return digits;
}

struct Best {
    std::uint64_t value = 0;
    std::uint64_t index = 0;
    bool have = false;
};

Best scan_range(const SearchSpec& spec, std::size_t closed_form, const std::vector<Slot>& slots,
                std::uint64_t begin, std::uint64_t end)
{
    Evaluator ev(spec, closed_form);
    auto digits = decode(begin, slots);
    for (std::size_t s = 0; s < slots.size(); ++s) {
        ev.set(slots[s].middle, slots[s].interval, digits[s]);
    }
    const bool minimise = spec.orientation == Orientation::lower;
    Best best;
    for (std::uint64_t leaf = begin; leaf < end; ++leaf) {
        const std::uint64_t value = ev.evaluate();
        if (!best.have || (minimise ? value < best.value : value > best.value)) {
            best = {value, leaf, true};
        }
        for (std::size_t s = slots.size(); s-- > 0;) {
            if (++digits[s] < slots[s].radix) {
                ev.set(slots[s].middle, slots[s].interval, digits[s]);
                break;
            }
            digits[s] = 0;
            ev.set(slots[s].middle, slots[s].interval, 0);
        }
    }
    return best;
}

} // namespace

std::vector<Key> first_group_layer(const PooledOrder& order, const KeySpace& ks, Orientation o)
{
    return o == Orientation::lower ? right_end_layer(order, ks, 0) : left_end_layer(order, ks, 0);
}

std::vector<Key> last_group_layer(const PooledOrder& order, const KeySpace& ks, Orientation o)
{
    const std::size_t last = order.ranks.size() - 1;
    return o == Orientation::lower ? left_end_layer(order, ks, last) : right_end_layer(order, ks, last);
}

std::vector<Key> right_end_layer(const PooledOrder& order, const KeySpace& ks, std::size_t group)
{
    std::vector<Key> out = data_layer(order, ks, group);
    out.push_back(ks.pos_inf());
    return out;
}

std::vector<Key> left_end_layer(const PooledOrder& order, const KeySpace& ks, std::size_t group)
{
    std::vector<Key> out;
    out.reserve(order.ranks[group].size() + 1);
    out.push_back(ks.neg_inf());
    for (auto r : order.ranks[group]) {
        out.push_back(ks.data(r));
    }
    return out;
}

std::vector<Key> data_layer(const PooledOrder& order, const KeySpace& ks, std::size_t group)
{
    std::vector<Key> out;
    out.reserve(order.ranks[group].size() + 1);
    for (auto r : order.ranks[group]) {
        out.push_back(ks.data(r));
    }
    return out;
}

std::uint64_t count_chains(const std::vector<std::vector<Key>>& layers)
{
    if (layers.empty()) {
        return 0;
    }
    Weighted w = unit(layers.front());
    for (std::size_t i = 1; i < layers.size(); ++i) {
        w = step_forward(w, layers[i]);
    }
    std::uint64_t total = 0;
    for (auto x : w.weight) {
        total += x;
    }
    return total;
}

std::uint64_t enumeration_size(const SearchSpec& spec)
{
    const std::size_t closed_form = choose_closed_form_group(spec);
    std::uint64_t size = 1;
    for (const auto& slot : enumerated_slots(spec, closed_form)) {
        size = saturating_mul(size, slot.radix);
    }
    return size;
}

SearchResult run_search(const SearchSpec& spec, std::uint64_t budget)
{
    for (const auto& g : spec.middle) {
        if (g.fixed) {
            continue;
        }
        for (const auto& c : g.candidates) {
            if (c.empty()) {
                throw ValidationError("search: empty candidate list");
            }
        }
    }

    const std::size_t closed_form = choose_closed_form_group(spec);
    const auto slots = enumerated_slots(spec, closed_form);
    const std::uint64_t leaves = enumeration_size(spec);
    if (leaves > budget) {
        throw BudgetExceeded(leaves, budget, leaves == kSaturated);
    }

    constexpr std::uint64_t kParallelThreshold = 1 << 14;
    const std::uint64_t hw = std::max(1U, std::thread::hardware_concurrency());
    const std::uint64_t workers = leaves >= kParallelThreshold ? std::min<std::uint64_t>(hw, 16) : 1;

    std::vector<Best> partial(workers);
    if (workers == 1) {
        partial[0] = scan_range(spec, closed_form, slots, 0, leaves);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::uint64_t w = 0; w < workers; ++w) {
            const std::uint64_t begin = leaves * w / workers;
            const std::uint64_t end = leaves * (w + 1) / workers;
            pool.emplace_back([&, w, begin, end] { partial[w] = scan_range(spec, closed_form, slots, begin, end); });
        }
    }

    const bool minimise = spec.orientation == Orientation::lower;
    Best best;
    for (const auto& p : partial) {
        if (!p.have) {
            continue;
        }
        if (!best.have || (minimise ? p.value < best.value : p.value > best.value) ||
            (p.value == best.value && p.index < best.index)) {
            best = p;
        }
    }

    SearchResult out;
    out.best = best.value;
    out.leaves = leaves;
    out.choice.resize(spec.middle.size());

    Evaluator ev(spec, closed_form);
    const auto digits = decode(best.index, slots);
    for (std::size_t s = 0; s < slots.size(); ++s) {
        ev.set(slots[s].middle, slots[s].interval, digits[s]);
        out.choice[slots[s].middle].resize(spec.middle[slots[s].middle].candidates.size());
        out.choice[slots[s].middle][slots[s].interval] = spec.middle[slots[s].middle].candidates[slots[s].interval][digits[s]];
    }
    if (closed_form < spec.middle.size()) {
        out.closed_form_group = closed_form;
        ev.evaluate(&out.closed_form_ties);
        auto& chosen = out.choice[closed_form];
        chosen.clear();
        for (const auto& t : out.closed_form_ties) {
            chosen.push_back(t.front());
        }
    }
    return out;
}

std::uint64_t evaluate_layers(const PooledOrder& order, Orientation o,
                              const std::vector<std::vector<Key>>& middle_layers)
{
    const KeySpace ks(order.total, order.ranks.size());
    std::vector<std::vector<Key>> layers;
    layers.reserve(middle_layers.size() + 2);
    layers.push_back(first_group_layer(order, ks, o));
    for (const auto& l : middle_layers) {
        layers.push_back(l);
    }
    layers.push_back(last_group_layer(order, ks, o));
    return count_chains(layers);
}

} // namespace npi::detail
