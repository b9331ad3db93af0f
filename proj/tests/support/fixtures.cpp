#include "fixtures.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace npi::testing {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

MultiGroupData labelled(const std::vector<std::string>& labels, const std::vector<std::vector<double>>& groups)
{
    std::vector<GroupSample> out;
    for (std::size_t j = 0; j < groups.size(); ++j) {
        auto v = groups[j];
        std::sort(v.begin(), v.end());
        out.push_back({labels[j], v});
    }
    return MultiGroupData(std::move(out));
}

double lo(const GroupSample& g, std::size_t i) { return i == 0 ? -kInf : g.values[i - 1]; }
double hi(const GroupSample& g, std::size_t i) { return i == g.size() ? kInf : g.values[i]; }

// Odometer over one interval per group.
template <class F>
void for_each_tuple(const MultiGroupData& data, F&& f)
{
    std::vector<std::size_t> idx(data.q(), 0);
    while (true) {
        f(idx);
        std::size_t j = data.q();
        while (j > 0) {
            --j;
            if (++idx[j] <= data.group(j).size()) {
                break;
            }
            idx[j] = 0;
            if (j == 0) {
                return;
            }
        }
    }
}

} // namespace

MultiGroupData make(const std::vector<std::vector<double>>& groups)
{
    std::vector<std::string> labels;
    for (std::size_t j = 0; j < groups.size(); ++j) {
        labels.push_back("G" + std::to_string(j + 1));
    }
    return labelled(labels, groups);
}

MultiGroupData example_one()
{
    return labelled({"X", "Y", "Z"}, {{2, 3, 5, 6, 7, 8, 10, 11, 15, 17, 18, 21},
                                      {9, 20},
                                      {1, 4, 12, 13, 14, 16, 19, 22, 23, 24, 25}});
}

MultiGroupData example_two()
{
    return labelled({"X1", "X2", "X3", "X4"},
                    {{1, 6, 11, 16}, {4, 8, 10, 12, 15}, {3, 9, 14, 17, 20}, {2, 5, 7, 13, 18, 19}});
}

RssTable spray_table()
{
    return {{0.3, 3.9, 3.4, 5.1, 3.2},
            {2.8, 11.9, 11.8, 10.4, 14.1},
            {24.4, 12.6, 13.0, 19.3, 13},
            {5.7, 10.5, 21.8, 21, 25},
            {14.3, 56.5, 29.6, 15, 22.9}};
}

MultiGroupData random_instance(std::mt19937_64& rng, std::size_t q, std::size_t min_n, std::size_t max_n)
{
    std::uniform_int_distribution<std::size_t> size(min_n, max_n);
    std::vector<std::size_t> n(q);
    for (auto& s : n) {
        s = size(rng);
    }
    std::vector<double> pool(std::accumulate(n.begin(), n.end(), std::size_t{0}));
    std::iota(pool.begin(), pool.end(), 1.0);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<std::vector<double>> groups(q);
    std::size_t at = 0;
    for (std::size_t j = 0; j < q; ++j) {
        groups[j].assign(pool.begin() + static_cast<std::ptrdiff_t>(at),
                         pool.begin() + static_cast<std::ptrdiff_t>(at + n[j]));
        at += n[j];
    }
    return make(groups);
}

MultiGroupData separated(const std::vector<std::size_t>& sizes)
{
    std::vector<std::vector<double>> groups;
    double next = 1.0;
    for (std::size_t n : sizes) {
        groups.emplace_back();
        for (std::size_t i = 0; i < n; ++i) {
            groups.back().push_back(next++);
        }
    }
    return make(groups);
}

MultiGroupData transformed(const MultiGroupData& data, const std::function<double(double)>& f)
{
    std::vector<GroupSample> out(data.groups().begin(), data.groups().end());
    for (auto& g : out) {
        for (auto& v : g.values) {
            v = f(v);
        }
    }
    return MultiGroupData(std::move(out));
}

MultiGroupData reversed(const MultiGroupData& data)
{
    std::vector<GroupSample> out(data.groups().rbegin(), data.groups().rend());
    for (auto& g : out) {
        for (auto& v : g.values) {
            v = -v;
        }
        std::reverse(g.values.begin(), g.values.end());
    }
    return MultiGroupData(std::move(out));
}

FourBounds literal_bounds(const MultiGroupData& data)
{
    const std::size_t q = data.q();
    std::uint64_t ll = 0, lu = 0, ul = 0, uu = 0;
    for_each_tuple(data, [&](const std::vector<std::size_t>& i) {
        bool sep = true, low = true, up = true, any = true;
        for (std::size_t j = 0; j + 1 < q; ++j) {
            const auto& a = data.group(j);
            const auto& b = data.group(j + 1);
            sep = sep && hi(a, i[j]) < lo(b, i[j + 1]);
            // lower: first at right ends, middle at right ends, last at left ends
            const double lu_b = j + 1 == q - 1 ? lo(b, i[j + 1]) : hi(b, i[j + 1]);
            low = low && hi(a, i[j]) < lu_b;
            // upper: first at left ends, the rest at right ends
            const double ul_a = j == 0 ? lo(a, i[j]) : hi(a, i[j]);
            up = up && ul_a < hi(b, i[j + 1]);
        }
        for (std::size_t k = 1; k < q && any; ++k) {
            for (std::size_t j = 0; j < k; ++j) {
                any = any && lo(data.group(j), i[j]) < hi(data.group(k), i[k]);
            }
        }
        ll += sep;
        lu += low;
        ul += up;
        uu += any;
    });
    const std::uint64_t d = data.npi_denominator();
    return {{ll, d}, {lu, d}, {ul, d}, {uu, d}};
}

std::uint64_t literal_h_count(const MultiGroupData& data)
{
    std::uint64_t count = 0;
    std::vector<std::size_t> idx(data.q(), 0);
    for (const auto& g : data.groups()) {
        if (g.empty()) {
            return 0;
        }
    }
    while (true) {
        bool ok = true;
        for (std::size_t j = 0; j + 1 < data.q(); ++j) {
            ok = ok && data.group(j).values[idx[j]] < data.group(j + 1).values[idx[j + 1]];
        }
        count += ok;
        std::size_t j = data.q();
        while (true) {
            if (j == 0) {
                return count;
            }
            --j;
            if (++idx[j] < data.group(j).size()) {
                break;
            }
            idx[j] = 0;
        }
    }
}

std::string csv_of(const MultiGroupData& data)
{
    std::ostringstream os;
    os.precision(17);
    os << "group,value\n";
    for (const auto& g : data.groups()) {
        for (double v : g.values) {
            os << g.label << ',' << v << '\n';
        }
    }
    return os.str();
}

std::string write_temp(const std::string& name, const std::string& contents)
{
    const auto dir = std::filesystem::temp_directory_path() / "npi_tests";
    std::filesystem::create_directories(dir);
    const auto path = dir / name;
    std::ofstream(path) << contents;
    return path.string();
}

} // namespace npi::testing
