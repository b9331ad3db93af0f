#pragma once

#include <npi/domain.hpp>
#include <npi/rational.hpp>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace npi {

/// K = S_x * S_z for one cell of a Y interval: S_x counts X masses left of
/// the cell, S_z counts Z masses right of it.
struct CellK {
    std::size_t gap = 0;
    double left_edge = 0.0;
    double right_edge = 0.0;
    std::uint64_t s_x = 0;
    std::uint64_t s_z = 0;
    std::uint64_t k = 0;
};

struct KjInterval {
    std::size_t interval = 0;
    /// X masses at right ends, Z masses at left ends.
    std::vector<CellK> lower;
    /// X masses at left ends, Z masses at right ends.
    std::vector<CellK> upper;
    std::size_t argmin = 0;  // leftmost cell attaining the minimum of lower[].k
    std::size_t argmax = 0;  // leftmost cell attaining the maximum of upper[].k
};

struct KjProfile {
    std::vector<KjInterval> intervals;
    std::uint64_t denominator = 1;
};

/// Per-cell K values for every interval of the middle group Y of (X, Y, Z).
/// Throws ArityError unless q == 3.
KjProfile kj_profile(const MultiGroupData& data);

/// Exact NPI lower and upper probability of X < Y < Z for the next
/// observations: the per-interval minimum (maximum) K summed over Y's
/// intervals. Throws ArityError unless q == 3.
LowerUpper exact_three(const MultiGroupData& data);

} // namespace npi
