#include <npi/cli/report_json.hpp>

#include <cmath>
#include <string>

namespace npi::cli {

using nlohmann::json;

namespace {

json edge(double v)
{
    // infinite cell edges have no JSON number
    if (!std::isfinite(v)) {
        return v < 0 ? json("-inf") : json("inf");
    }
    return v;
}

json cells_json(const std::vector<CellK>& cells)
{
    json out = json::array();
    for (const auto& c : cells) {
        out.push_back({{"gap", c.gap},
                       {"left", edge(c.left_edge)},
                       {"right", edge(c.right_edge)},
                       {"s_x", std::to_string(c.s_x)},
                       {"s_z", std::to_string(c.s_z)},
                       {"k", std::to_string(c.k)}});
    }
    return out;
}

json group_optima(const std::vector<GroupOptimum>& optima)
{
    json out = json::array();
    for (const auto& g : optima) {
        out.push_back({{"group", g.label}, {"position", g.position}, {"value", probability_json(g.value)},
                       {"cells", g.cells}});
    }
    return out;
}

json refused(std::uint64_t size)
{
    return {{"refused", std::to_string(size)}};
}

} // namespace

json probability_json(const RationalProb& p)
{
    return {{"count", std::to_string(p.count())}, {"decimal", p.decimal(4)}};
}

json standalone_json(const RationalProb& p)
{
    json out = probability_json(p);
    out["denominator"] = std::to_string(p.denom());
    return out;
}

json lower_upper_json(const LowerUpper& v)
{
    return {{"lower", probability_json(v.lower)}, {"upper", probability_json(v.upper)}};
}

json bounds_json(const FourBounds& b)
{
    return {{"lower_lower", probability_json(b.lower_lower)},
            {"lower_upper", probability_json(b.lower_upper)},
            {"upper_lower", probability_json(b.upper_lower)},
            {"upper_upper", probability_json(b.upper_upper)}};
}

json algorithm_a_json(const AlgorithmAResult& a)
{
    return {{"lower", probability_json(a.lower)},
            {"upper", probability_json(a.upper)},
            {"lower_per_group", group_optima(a.lower_per_group)},
            {"upper_per_group", group_optima(a.upper_per_group)}};
}

json kj_profile_json(const KjProfile& profile)
{
    json intervals = json::array();
    for (const auto& iv : profile.intervals) {
        intervals.push_back({{"interval", iv.interval},
                             {"lower", cells_json(iv.lower)},
                             {"upper", cells_json(iv.upper)},
                             {"argmin", iv.argmin},
                             {"argmax", iv.argmax}});
    }
    return {{"denominator", std::to_string(profile.denominator)}, {"intervals", intervals}};
}

json scan_json(const ScanResult& min, const ScanResult& max)
{
    auto one = [](const ScanResult& r) {
        json out = standalone_json(r.value);
        out["ordering"] = r.labels;
        return out;
    };
    return {{"min", one(min)}, {"max", one(max)}};
}

json report_json(const OrderingReport& report)
{
    json out;
    out["ordering"] = report.ordering;
    out["n"] = report.n;
    out["denominator"] = std::to_string(report.denominator);
    out["bounds"] = bounds_json(report.bounds);
    out["algA"] = algorithm_a_json(report.algorithm_a);
    if (report.algorithm_b) {
        out["algB"] = lower_upper_json(*report.algorithm_b);
    } else if (report.algorithm_b_refused) {
        out["algB"] = refused(*report.algorithm_b_refused);
    }
    if (report.exact) {
        out["exact"] = lower_upper_json(*report.exact);
    } else if (report.exact_refused) {
        out["exact"] = refused(*report.exact_refused);
    }
    if (report.empirical) {
        out["empirical"] = standalone_json(*report.empirical);
    }
    out["perfect"] = bounds_json(report.perfect);
    return out;
}

} // namespace npi::cli
