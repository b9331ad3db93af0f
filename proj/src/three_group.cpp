#include <npi/three_group.hpp>

#include <npi/errors.hpp>

namespace npi {

namespace {

void require_three(const MultiGroupData& data, const char* what)
{
    if (data.q() != 3) {
        throw ArityError(std::string(what) + " requires exactly 3 groups, got " + std::to_string(data.q()));
    }
}

} // namespace

KjProfile kj_profile(const MultiGroupData& data)
{
    require_three(data, "kj_profile");

    KjProfile out;
    out.denominator = data.npi_denominator();
    const std::uint64_t n_z = data.group(2).size();

    for (const auto& part : partition_group(data, 1)) {
        KjInterval iv;
        iv.interval = part.interval;
        for (std::size_t c = 0; c < part.cells.size(); ++c) {
            const Cell& cell = part.cells[c];
            const double left = c == 0 ? part.lower : part.breakpoints[c - 1];
            const double right = c + 1 == part.cells.size() ? part.upper : part.breakpoints[c];
            // X observations below the cell and Z observations above it
            const std::uint64_t x_below = cell.below[0];
            const std::uint64_t z_above = n_z - cell.below[2];

            iv.lower.push_back({cell.gap, left, right, x_below, z_above, x_below * z_above});
            iv.upper.push_back({cell.gap, left, right, x_below + 1, z_above + 1, (x_below + 1) * (z_above + 1)});

            if (iv.lower[c].k < iv.lower[iv.argmin].k) {
                iv.argmin = c;
            }
            if (iv.upper[c].k > iv.upper[iv.argmax].k) {
                iv.argmax = c;
            }
        }
        out.intervals.push_back(std::move(iv));
    }
    return out;
}

LowerUpper exact_three(const MultiGroupData& data)
{
    const KjProfile profile = kj_profile(data);
    std::uint64_t lower = 0;
    std::uint64_t upper = 0;
    for (const auto& iv : profile.intervals) {
        lower += iv.lower[iv.argmin].k;
        upper += iv.upper[iv.argmax].k;
    }
    return {RationalProb(lower, profile.denominator), RationalProb(upper, profile.denominator)};
}

} // namespace npi
