#include "catastroagri/decimal.hpp"

#include "catastroagri/error.hpp"

#include <cmath>
#include <limits>

namespace catastroagri {

namespace {

__extension__ using i128 = __int128;

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();
constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();

std::int64_t narrow(i128 v) {
    if (v > kMax || v < kMin) {
        throw Error(ErrorCode::Overflow, "decimal value out of range");
    }
    return static_cast<std::int64_t>(v);
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

}  // namespace

Decimal Decimal::from_integer(std::int64_t value) {
    return from_units(narrow(static_cast<i128>(value) * kScale));
}

std::optional<Decimal> Decimal::parse(std::string_view text) {
    while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
    while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
    if (text.empty()) return std::nullopt;

    bool negative = false;
    if (text.front() == '-' || text.front() == '+') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }

    i128 whole = 0;
    std::size_t i = 0;
    std::size_t int_digits = 0;
    for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i, ++int_digits) {
        whole = whole * 10 + (text[i] - '0');
        if (whole > kMax) return std::nullopt;
    }

    i128 frac = 0;
    std::size_t frac_digits = 0;
    if (i < text.size() && text[i] == '.') {
        ++i;
        for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i, ++frac_digits) {
            if (frac_digits == kScaleDigits) return std::nullopt;
            frac = frac * 10 + (text[i] - '0');
        }
    }
    if (i != text.size() || int_digits + frac_digits == 0) return std::nullopt;
    for (std::size_t k = frac_digits; k < kScaleDigits; ++k) frac *= 10;

    i128 units = whole * kScale + frac;
    if (negative) units = -units;
    if (units > kMax || units < kMin) return std::nullopt;
    return from_units(static_cast<std::int64_t>(units));
}

Decimal Decimal::from_double(double value) {
    if (!std::isfinite(value)) {
        throw Error(ErrorCode::DomainError, "decimal from non-finite value");
    }
    const long double scaled = std::round(static_cast<long double>(value) * kScale);
    if (scaled > static_cast<long double>(kMax) || scaled < static_cast<long double>(kMin)) {
        throw Error(ErrorCode::Overflow, "decimal value out of range");
    }
    return from_units(static_cast<std::int64_t>(scaled));
}

double Decimal::to_double() const {
    return static_cast<double>(units_ / kScale) +
           static_cast<double>(units_ % kScale) / static_cast<double>(kScale);
}

std::string Decimal::to_string() const {
    i128 v = units_;
    const bool negative = v < 0;
    if (negative) v = -v;
    auto whole = static_cast<unsigned long long>(v / kScale);
    auto frac = static_cast<unsigned long long>(v % kScale);

    std::string out = negative ? "-" : "";
    out += std::to_string(whole);
    if (frac != 0) {
        std::string digits = std::to_string(frac);
        digits.insert(0, kScaleDigits - digits.size(), '0');
        while (digits.back() == '0') digits.pop_back();
        out += '.';
        out += digits;
    }
    return out;
}

Decimal Decimal::operator-() const { return from_units(narrow(-static_cast<i128>(units_))); }

Decimal& Decimal::operator+=(Decimal other) {
    units_ = narrow(static_cast<i128>(units_) + other.units_);
    return *this;
}

Decimal& Decimal::operator-=(Decimal other) {
    units_ = narrow(static_cast<i128>(units_) - other.units_);
    return *this;
}

std::optional<Decimal> Decimal::exact_product(Decimal a, Decimal b) {
    const i128 raw = static_cast<i128>(a.units_) * b.units_;
    if (raw % kScale != 0) return std::nullopt;
    return from_units(narrow(raw / kScale));
}

Decimal Decimal::rounded_product(Decimal a, Decimal b) {
    const i128 raw = static_cast<i128>(a.units_) * b.units_;
    i128 q = raw / kScale;
    const i128 r = raw % kScale;
    if (2 * (r < 0 ? -r : r) >= kScale) q += raw < 0 ? -1 : 1;
    return from_units(narrow(q));
}

}  // namespace catastroagri
