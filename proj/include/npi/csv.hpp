#pragma once

#include <npi/domain.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace npi {

/// Rows are ranks, columns are cycles.
using RssTable = std::vector<std::vector<double>>;

/// Long-format observations with header `group,value`, one per row. Groups
/// are returned in order of first appearance. Throws ValidationError on a
/// malformed header, row or number.
RawGroups read_long_csv(std::istream& in);
RawGroups read_long_csv_file(const std::string& path);

/// Ranked-set sample with header `rank,cycle,value`. Ranks and cycles are
/// 1-based integers; every (rank, cycle) pair must appear exactly once or a
/// ShapeError is thrown.
RssTable read_rss_csv(std::istream& in);
RssTable read_rss_csv_file(const std::string& path);

} // namespace npi
