#include <npi/rational.hpp>

#include <npi/errors.hpp>

#include <ostream>
#include <stdexcept>

namespace npi {

__extension__ using u128 = unsigned __int128;

RationalProb::RationalProb(std::uint64_t count, std::uint64_t denom)
    : count_(count), denom_(denom)
{
    if (denom == 0) {
        throw std::invalid_argument("RationalProb: zero denominator");
    }
    if (count > denom) {
        throw std::invalid_argument("RationalProb: count " + std::to_string(count) +
                                    " exceeds denominator " + std::to_string(denom));
    }
}

double RationalProb::to_double() const noexcept
{
    return static_cast<double>(count_) / static_cast<double>(denom_);
}

std::string RationalProb::decimal(int places) const
{
    if (places < 0 || places > 18) {
        throw std::invalid_argument("RationalProb::decimal: places must be in [0, 18]");
    }
    u128 scale = 1;
    for (int i = 0; i < places; ++i) {
        scale *= 10;
    }
    const u128 scaled = static_cast<u128>(count_) * scale;
    u128 quotient = scaled / denom_;
    const u128 twice_rem = 2 * (scaled % denom_);
    if (twice_rem > denom_ || (twice_rem == denom_ && quotient % 2 == 1)) {
        ++quotient;
    }

    const auto whole = static_cast<std::uint64_t>(quotient / scale);
    auto frac = static_cast<std::uint64_t>(quotient % scale);
    std::string out = std::to_string(whole);
    if (places > 0) {
        std::string digits(static_cast<std::size_t>(places), '0');
        for (int i = places - 1; i >= 0; --i) {
            digits[static_cast<std::size_t>(i)] = static_cast<char>('0' + frac % 10);
            frac /= 10;
        }
        out += '.';
        out += digits;
    }
    return out;
}

std::string RationalProb::str() const
{
    return std::to_string(count_) + "/" + std::to_string(denom_);
}

bool operator==(const RationalProb& a, const RationalProb& b) noexcept
{
    return static_cast<u128>(a.count_) * b.denom_ == static_cast<u128>(b.count_) * a.denom_;
}

std::strong_ordering operator<=>(const RationalProb& a, const RationalProb& b) noexcept
{
    return static_cast<u128>(a.count_) * b.denom_ <=> static_cast<u128>(b.count_) * a.denom_;
}

std::ostream& operator<<(std::ostream& os, const RationalProb& p)
{
    return os << p.str();
}

std::uint64_t checked_product(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw ValidationError("sample sizes too large: counts do not fit in 64 bits");
    }
    return out;
}

} // namespace npi
