#pragma once

#include <npi/csv.hpp>
#include <npi/domain.hpp>
#include <npi/multi_group.hpp>

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace npi::testing {

MultiGroupData example_one();    // X, Y, Z with n = (12, 2, 11)
MultiGroupData example_two();    // X1..X4 with n = (4, 5, 5, 6)
RssTable spray_table();          // 5 ranks x 5 cycles, one within-rank tie
MultiGroupData make(const std::vector<std::vector<double>>& groups);

/// q groups with sizes drawn from [min_n, max_n]; values are a random
/// permutation of 1..N, so there are never ties.
MultiGroupData random_instance(std::mt19937_64& rng, std::size_t q, std::size_t min_n, std::size_t max_n);

/// Groups laid out one after another in the given order.
MultiGroupData separated(const std::vector<std::size_t>& sizes);

/// Every observation mapped through f (which must be strictly increasing).
MultiGroupData transformed(const MultiGroupData& data, const std::function<double(double)>& f);

/// Groups in reverse order with negated values.
MultiGroupData reversed(const MultiGroupData& data);

/// Literal nested sums over all interval tuples, straight from the
/// indicator definitions with +-infinity endpoints.
FourBounds literal_bounds(const MultiGroupData& data);
std::uint64_t literal_h_count(const MultiGroupData& data);

std::string csv_of(const MultiGroupData& data);
std::string write_temp(const std::string& name, const std::string& contents);

} // namespace npi::testing
