#include <npi/cli/run.hpp>

#include <npi/applications.hpp>
#include <npi/cli/report_json.hpp>
#include <npi/csv.hpp>
#include <npi/errors.hpp>
#include <npi/three_group.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <optional>
#include <span>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace npi::cli {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 8> kMethodNames{{
    {Method::bounds, "bounds"},
    {Method::exact, "exact"},
    {Method::alg_a, "algA"},
    {Method::alg_b, "algB"},
    {Method::empirical, "empirical"},
    {Method::perfect, "perfect"},
    {Method::kj_profile, "kj-profile"},
    {Method::permutations, "permutations"},
}};

bool wants(const std::vector<Method>& methods, Method m)
{
    return std::find(methods.begin(), methods.end(), m) != methods.end();
}

MultiGroupData load(const RunConfig& config)
{
    MultiGroupData data = [&] {
        if (config.command == Command::rss) {
            return rss_groups(read_rss_csv_file(config.input), config.ties.value_or(TiePolicy::perturb()));
        }
        return validate_and_sort(read_long_csv_file(config.input), config.ties.value_or(TiePolicy::reject()));
    }();
    if (!config.ordering.empty()) {
        return data.reordered(std::span<const std::string>(config.ordering));
    }
    return data;
}

json header(const MultiGroupData& data)
{
    return {{"ordering", data.labels()}, {"n", data.sizes()}, {"denominator", std::to_string(data.npi_denominator())}};
}

LowerUpper exact_values(const MultiGroupData& data, std::uint64_t budget)
{
    if (data.q() == 3) {
        return exact_three(data);
    }
    const ExactResult r = exact_search(data, budget);
    return {r.lower, r.upper};
}

json scan(const MultiGroupData& data, std::uint64_t budget)
{
    return scan_json(permutation_scan(data, ScanObjective::min_h, budget),
                     permutation_scan(data, ScanObjective::max_h, budget));
}

// Every requested method computed on its own; a refused enumeration aborts
// the whole run.
json run_order(const MultiGroupData& data, const std::vector<Method>& methods, std::uint64_t budget)
{
    json out = header(data);
    std::optional<AlgorithmAResult> a;
    for (Method m : methods) {
        switch (m) {
        case Method::bounds:
            out["bounds"] = bounds_json(bounds(data));
            break;
        case Method::exact:
            out["exact"] = lower_upper_json(exact_values(data, budget));
            break;
        case Method::alg_a:
        case Method::alg_b:
            if (!a) {
                a = algorithm_a(data);
            }
            if (m == Method::alg_a) {
                out["algA"] = algorithm_a_json(*a);
            } else {
                const AlgorithmBResult b = algorithm_b(data, *a, budget);
                out["algB"] = lower_upper_json({b.lower, b.upper});
            }
            break;
        case Method::empirical:
            out["empirical"] = standalone_json(empirical_h(data));
            break;
        case Method::perfect: {
            const auto sizes = data.sizes();
            out["perfect"] = bounds_json(perfect_reference(sizes));
            break;
        }
        case Method::kj_profile:
            out["kj-profile"] = kj_profile_json(kj_profile(data));
            break;
        case Method::permutations:
            out["permutations"] = scan(data, budget);
            break;
        }
    }
    return out;
}

// Report-driven commands: the report decides what is affordable, and a method
// the caller asked for that the report had to refuse is a budget failure.
json run_report(const RunConfig& config, const MultiGroupData& data, const std::vector<Method>& methods)
{
    ReportOptions options;
    options.budget = config.budget;
    options.algorithm_b = wants(methods, Method::alg_b);
    options.exact = wants(methods, Method::exact);
    const OrderingReport report =
        config.command == Command::vus ? vus_bounds(data, options) : ordering_report(data, options);

    if (wants(methods, Method::exact) && report.exact_refused) {
        throw BudgetExceeded(*report.exact_refused, config.budget);
    }
    if (wants(methods, Method::alg_b) && report.algorithm_b_refused) {
        throw BudgetExceeded(*report.algorithm_b_refused, config.budget);
    }
    if (wants(methods, Method::empirical) && !report.empirical) {
        throw EmptyGroup("empirical value needs at least one observation per group");
    }

    const json full = report_json(report);
    json out = header(data);
    for (Method m : methods) {
        const std::string key(method_name(m));
        if (m == Method::kj_profile) {
            out[key] = kj_profile_json(kj_profile(data));
        } else if (m == Method::permutations) {
            out[key] = scan(data, config.budget);
        } else {
            out[key] = full.at(key);
        }
    }
    return out;
}

json error_json(const std::string& kind, const std::string& message)
{
    return {{"error", {{"kind", kind}, {"message", message}}}};
}

} // namespace

Method parse_method(std::string_view name)
{
    for (const auto& [m, n] : kMethodNames) {
        if (n == name) {
            return m;
        }
    }
    throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

std::string_view method_name(Method m)
{
    for (const auto& [k, n] : kMethodNames) {
        if (k == m) {
            return n;
        }
    }
    return "?";
}

Command parse_command(std::string_view name)
{
    if (name == "order") return Command::order;
    if (name == "vus") return Command::vus;
    if (name == "rss") return Command::rss;
    if (name == "scan") return Command::scan;
    throw std::invalid_argument("unknown command '" + std::string(name) + "'");
}

TiePolicy parse_ties(std::string_view text)
{
    if (text == "reject") {
        return TiePolicy::reject();
    }
    if (text == "epsilon") {
        return TiePolicy::perturb();
    }
    constexpr std::string_view prefix = "epsilon:";
    if (text.starts_with(prefix)) {
        const std::string_view num = text.substr(prefix.size());
        double eps = 0.0;
        const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), eps);
        if (ec == std::errc() && ptr == num.data() + num.size() && eps > 0.0) {
            return TiePolicy::perturb(eps);
        }
    }
    throw std::invalid_argument("tie policy must be reject, epsilon or epsilon:<positive step>, got '" +
                                std::string(text) + "'");
}

std::vector<Method> default_methods(Command command)
{
    switch (command) {
    case Command::order:
        return {Method::bounds, Method::exact, Method::alg_a, Method::empirical, Method::perfect};
    case Command::vus:
    case Command::rss:
        return {Method::bounds, Method::exact, Method::alg_a, Method::alg_b, Method::empirical, Method::perfect};
    case Command::scan:
        return {Method::permutations};
    }
    return {};
}

RunOutcome run(const RunConfig& config)
{
    try {
        const MultiGroupData data = load(config);
        const std::vector<Method> methods = config.methods.empty() ? default_methods(config.command) : config.methods;
        switch (config.command) {
        case Command::order:
            return {kExitOk, run_order(data, methods, config.budget)};
        case Command::vus:
        case Command::rss:
            if (data.q() < 3) {
                throw ArityError("at least three groups are required, got " + std::to_string(data.q()));
            }
            return {kExitOk, run_report(config, data, methods)};
        case Command::scan: {
            json out = header(data);
            out["permutations"] = scan(data, config.budget);
            return {kExitOk, out};
        }
        }
        return {kExitValidation, error_json("ValidationError", "unknown command")};
    } catch (const BudgetExceeded& e) {
        json out = error_json(e.kind(), e.what());
        out["error"]["estimate"] = std::to_string(e.estimate());
        out["error"]["budget"] = std::to_string(e.budget());
        return {kExitBudget, out};
    } catch (const Error& e) {
        return {kExitValidation, error_json(e.kind(), e.what())};
    } catch (const std::invalid_argument& e) {
        return {kExitValidation, error_json("ValidationError", e.what())};
    }
}

std::string render(const json& report)
{
    return report.dump(2) + "\n";
}

int run_and_write(const RunConfig& config, std::ostream& out)
{
    const RunOutcome outcome = run(config);
    const std::string text = render(outcome.report);
    if (config.output.empty()) {
        out << text;
        return outcome.exit_code;
    }
    std::ofstream file(config.output);
    if (!file) {
        out << render(error_json("ValidationError", "cannot open output file '" + config.output + "'"));
        return kExitValidation;
    }
    file << text;
    return outcome.exit_code;
}

} // namespace npi::cli
