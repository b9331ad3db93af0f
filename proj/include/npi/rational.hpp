#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace npi {

/// An exact probability stored as count / denom.
///
/// NPI quantities carry denom = prod_j (n_j + 1), the empirical value carries
/// prod_j n_j. Comparison and equality are by value, so 0/1 == 0/468.
class RationalProb {
public:
    constexpr RationalProb() = default;

    /// Throws std::invalid_argument unless 0 <= count <= denom and denom > 0.
    RationalProb(std::uint64_t count, std::uint64_t denom);

    constexpr std::uint64_t count() const noexcept { return count_; }
    constexpr std::uint64_t denom() const noexcept { return denom_; }

    double to_double() const noexcept;

    /// Fixed-point rendering with round-half-even on the exact value.
    std::string decimal(int places = 4) const;

    /// "count/denom", unreduced.
    std::string str() const;

    friend bool operator==(const RationalProb& a, const RationalProb& b) noexcept;
    friend std::strong_ordering operator<=>(const RationalProb& a, const RationalProb& b) noexcept;

private:
    std::uint64_t count_ = 0;
    std::uint64_t denom_ = 1;
};

std::ostream& operator<<(std::ostream& os, const RationalProb& p);

/// A lower and an upper probability for the same event.
struct LowerUpper {
    RationalProb lower;
    RationalProb upper;

    friend bool operator==(const LowerUpper&, const LowerUpper&) = default;
};

/// a * b, throwing ValidationError if it does not fit 64 bits.
std::uint64_t checked_product(std::uint64_t a, std::uint64_t b);

} // namespace npi
