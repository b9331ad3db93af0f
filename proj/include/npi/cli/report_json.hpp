#pragma once

#include <npi/applications.hpp>
#include <npi/multi_group.hpp>
#include <npi/rational.hpp>
#include <npi/three_group.hpp>

#include <json.hpp>

namespace npi::cli {

/// {"count": "<n>", "decimal": "<4 places>"}; counts are strings so any
/// integer width survives the round trip.
nlohmann::json probability_json(const RationalProb& p);
/// Same plus "denominator", for values whose denominator differs from the
/// report's.
nlohmann::json standalone_json(const RationalProb& p);

nlohmann::json lower_upper_json(const LowerUpper& v);
nlohmann::json bounds_json(const FourBounds& b);
nlohmann::json algorithm_a_json(const AlgorithmAResult& a);
nlohmann::json kj_profile_json(const KjProfile& profile);
nlohmann::json scan_json(const ScanResult& min, const ScanResult& max);

/// Every field of the report; refused computations appear as
/// {"refused": "<enumeration size>"}.
nlohmann::json report_json(const OrderingReport& report);

} // namespace npi::cli
