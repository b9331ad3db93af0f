#include <npi/applications.hpp>

#include <npi/errors.hpp>
#include <npi/three_group.hpp>

namespace npi {

OrderingReport ordering_report(const MultiGroupData& data, const ReportOptions& options)
{
    if (data.q() < 3) {
        throw ArityError("an ordering report requires at least 3 groups, got " + std::to_string(data.q()));
    }
    OrderingReport report;
    report.ordering = data.labels();
    report.n = data.sizes();
    report.denominator = data.npi_denominator();
    report.bounds = bounds(data);
    report.algorithm_a = algorithm_a(data);
    report.perfect = perfect_reference(report.n);

    if (options.algorithm_b) {
        try {
            const auto b = algorithm_b(data, report.algorithm_a, options.budget);
            report.algorithm_b = LowerUpper{b.lower, b.upper};
        } catch (const BudgetExceeded& e) {
            report.algorithm_b_refused = e.estimate();
        }
    }

    if (data.q() == 3) {
        report.exact = exact_three(data);
    } else if (options.exact) {
        try {
            const auto exact = exact_search(data, options.budget);
            report.exact = LowerUpper{exact.lower, exact.upper};
        } catch (const BudgetExceeded& e) {
            report.exact_refused = e.estimate();
        }
    }

    bool any_empty = false;
    for (auto n : report.n) {
        any_empty = any_empty || n == 0;
    }
    if (!any_empty) {
        report.empirical = empirical_h(data);
    }
    return report;
}

OrderingReport vus_bounds(const MultiGroupData& data, const ReportOptions& options)
{
    return ordering_report(data, options);
}

MultiGroupData rss_groups(const RssTable& table, TiePolicy ties)
{
    if (table.empty() || table.front().empty()) {
        throw ShapeError("ranked-set table is empty");
    }
    const std::size_t cycles = table.front().size();
    RawGroups raw;
    for (std::size_t r = 0; r < table.size(); ++r) {
        if (table[r].size() != cycles) {
            throw ShapeError("rank " + std::to_string(r + 1) + " has " + std::to_string(table[r].size()) +
                             " cycles, expected " + std::to_string(cycles));
        }
        raw.emplace_back("rank" + std::to_string(r + 1), table[r]);
    }
    return validate_and_sort(raw, ties);
}

OrderingReport rss_perfect_ordering(const RssTable& table, TiePolicy ties, const ReportOptions& options)
{
    const MultiGroupData data = rss_groups(table, ties);
    if (data.q() < 3) {
        throw ArityError("ranked-set ordering needs at least 3 ranks, got " + std::to_string(data.q()));
    }
    return ordering_report(data, options);
}

} // namespace npi
