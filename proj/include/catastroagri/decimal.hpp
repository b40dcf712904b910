#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace catastroagri {

/// Fixed-point decimal with six fractional digits, stored as a scaled
/// 64-bit integer. Areas and money are summed with this type so that totals
/// of integer inputs are exact. Arithmetic throws Error(Overflow) instead of
/// wrapping.
class Decimal {
public:
    static constexpr int kScaleDigits = 6;
    static constexpr std::int64_t kScale = 1'000'000;

    constexpr Decimal() = default;

    static constexpr Decimal from_units(std::int64_t units) {
        Decimal d;
        d.units_ = units;
        return d;
    }
    static Decimal from_integer(std::int64_t value);

    /// Parses "[-+]digits[.digits]" with at most six fractional digits.
    /// Surrounding ASCII whitespace is ignored; thousands separators,
    /// exponents and a bare "." are rejected.
    static std::optional<Decimal> parse(std::string_view text);

    /// Nearest representable value (half away from zero). Throws on
    /// non-finite or out-of-range input.
    static Decimal from_double(double value);

    constexpr std::int64_t units() const { return units_; }
    double to_double() const;
    bool is_integer() const { return units_ % kScale == 0; }

    /// Shortest plain rendering: no exponent, no trailing fractional zeros,
    /// no thousands separators ("14838", "2.5", "-0.000001").
    std::string to_string() const;

    Decimal operator-() const;
    Decimal& operator+=(Decimal other);
    Decimal& operator-=(Decimal other);
    friend Decimal operator+(Decimal a, Decimal b) { return a += b; }
    friend Decimal operator-(Decimal a, Decimal b) { return a -= b; }

    /// Exact product, or nullopt when the result needs more than six
    /// fractional digits.
    static std::optional<Decimal> exact_product(Decimal a, Decimal b);
    /// Product rounded half away from zero to six fractional digits.
    static Decimal rounded_product(Decimal a, Decimal b);

    friend constexpr auto operator<=>(Decimal, Decimal) = default;
    friend constexpr bool operator==(Decimal, Decimal) = default;

private:
    std::int64_t units_ = 0;
};

}  // namespace catastroagri
