#include <npi/csv.hpp>

#include <npi/errors.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <string_view>

namespace npi {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) {
            return out;
        }
        start = comma + 1;
    }
}

std::string where(std::size_t line_no)
{
    return "line " + std::to_string(line_no) + ": ";
}

double parse_value(std::string_view field, std::size_t line_no)
{
    if (!field.empty() && field.front() == '+') {
        field.remove_prefix(1);
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size() || field.empty() || !std::isfinite(v)) {
        throw ValidationError(where(line_no) + "invalid number '" + std::string(field) + "'");
    }
    return v;
}

std::size_t parse_index(std::string_view field, std::size_t line_no, const char* what)
{
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size() || field.empty() || v == 0) {
        throw ValidationError(where(line_no) + "invalid " + what + " '" + std::string(field) + "'");
    }
    return v;
}

/// Reads the header and returns the data rows with their line numbers.
std::vector<std::pair<std::size_t, std::vector<std::string_view>>>
read_rows(std::istream& in, std::vector<std::string>& storage, std::string_view expected_header)
{
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::size_t> header_line;
    std::vector<std::size_t> numbers;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        if (!header_line) {
            std::string header;
            for (auto f : split_fields(trim(line))) {
                if (!header.empty()) {
                    header += ',';
                }
                header += f;
            }
            if (header != expected_header) {
                throw ValidationError(where(line_no) + "expected header '" + std::string(expected_header) +
                                      "', got '" + std::string(trim(line)) + "'");
            }
            header_line = line_no;
            continue;
        }
        storage.push_back(line);
        numbers.push_back(line_no);
    }
    if (!header_line) {
        throw ValidationError("empty input: missing header '" + std::string(expected_header) + "'");
    }

    const std::size_t width = static_cast<std::size_t>(std::count(expected_header.begin(), expected_header.end(), ',')) + 1;
    std::vector<std::pair<std::size_t, std::vector<std::string_view>>> rows;
    rows.reserve(storage.size());
    for (std::size_t i = 0; i < storage.size(); ++i) {
        auto fields = split_fields(storage[i]);
        if (fields.size() != width) {
            throw ValidationError(where(numbers[i]) + "expected " + std::to_string(width) + " fields, got " +
                                  std::to_string(fields.size()));
        }
        rows.emplace_back(numbers[i], std::move(fields));
    }
    return rows;
}

std::ifstream open_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open '" + path + "'");
    }
    return in;
}

} // namespace

RawGroups read_long_csv(std::istream& in)
{
    std::vector<std::string> storage;
    const auto rows = read_rows(in, storage, "group,value");

    RawGroups out;
    std::map<std::string, std::size_t, std::less<>> index;
    for (const auto& [line_no, fields] : rows) {
        if (fields[0].empty()) {
            throw ValidationError(where(line_no) + "empty group label");
        }
        const double v = parse_value(fields[1], line_no);
        auto it = index.find(fields[0]);
        if (it == index.end()) {
            it = index.emplace(std::string(fields[0]), out.size()).first;
            out.emplace_back(std::string(fields[0]), std::vector<double>{});
        }
        out[it->second].second.push_back(v);
    }
    return out;
}

RawGroups read_long_csv_file(const std::string& path)
{
    auto in = open_file(path);
    return read_long_csv(in);
}

RssTable read_rss_csv(std::istream& in)
{
    std::vector<std::string> storage;
    const auto rows = read_rows(in, storage, "rank,cycle,value");

    std::map<std::pair<std::size_t, std::size_t>, double> cells;
    std::size_t max_rank = 0;
    std::size_t max_cycle = 0;
    for (const auto& [line_no, fields] : rows) {
        const auto rank = parse_index(fields[0], line_no, "rank");
        const auto cycle = parse_index(fields[1], line_no, "cycle");
        const double v = parse_value(fields[2], line_no);
        if (!cells.emplace(std::make_pair(rank, cycle), v).second) {
            throw ShapeError(where(line_no) + "duplicate entry for rank " + std::to_string(rank) + ", cycle " +
                             std::to_string(cycle));
        }
        max_rank = std::max(max_rank, rank);
        max_cycle = std::max(max_cycle, cycle);
    }
    if (cells.size() != max_rank * max_cycle) {
        throw ShapeError("ranked-set table is not rectangular: " + std::to_string(cells.size()) +
                         " entries for " + std::to_string(max_rank) + " ranks x " + std::to_string(max_cycle) +
                         " cycles");
    }

    RssTable table(max_rank, std::vector<double>(max_cycle));
    for (const auto& [key, v] : cells) {
        table[key.first - 1][key.second - 1] = v;
    }
    return table;
}

RssTable read_rss_csv_file(const std::string& path)
{
    auto in = open_file(path);
    return read_rss_csv(in);
}

} // namespace npi
