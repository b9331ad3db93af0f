#pragma once

#include <npi/domain.hpp>
#include <npi/multi_group.hpp>

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace npi::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitBudget = 3;

enum class Command { order, vus, rss, scan };

enum class Method { bounds, exact, alg_a, alg_b, empirical, perfect, kj_profile, permutations };

struct RunConfig {
    Command command = Command::order;
    std::string input;
    /// Group labels in event order; empty keeps the input order.
    std::vector<std::string> ordering;
    /// Empty selects the command's defaults.
    std::vector<Method> methods;
    /// Unset: reject for group CSVs, automatic epsilon for ranked-set tables.
    std::optional<TiePolicy> ties;
    std::uint64_t budget = kDefaultBudget;
    std::string output;
};

struct RunOutcome {
    int exit_code = kExitOk;
    nlohmann::json report;
};

/// Throws std::invalid_argument for an unknown name.
Method parse_method(std::string_view name);
std::string_view method_name(Method m);
Command parse_command(std::string_view name);

/// "reject", "epsilon" (automatic step) or "epsilon:<step>".
TiePolicy parse_ties(std::string_view text);

std::vector<Method> default_methods(Command command);

/// Runs one command. Validation problems give exit 2, a refused enumeration
/// exit 3; either way `report` holds an "error" object instead of results.
RunOutcome run(const RunConfig& config);

/// Runs and writes the report (to config.output, or `out` when empty).
int run_and_write(const RunConfig& config, std::ostream& out);

/// Deterministic rendering: sorted keys, two-space indent, trailing newline.
std::string render(const nlohmann::json& report);

} // namespace npi::cli
