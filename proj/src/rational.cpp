#include "qgroupoid/rational.hpp"

#include "qgroupoid/errors.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <numeric>
#include <tuple>
#include <utility>

namespace qgroupoid {

namespace {

using Wide = __int128;

Wide gcd128(Wide a, Wide b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const Wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t parse_int(std::string_view digits, std::string_view whole) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc{} || ptr != digits.data() + digits.size())
        throw DomainError("not a rational number: '" + std::string(whole) + "'");
    return v;
}

// Reduces num/den to lowest terms with a positive denominator.
std::pair<std::int64_t, std::int64_t> reduce(Wide num, Wide den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const Wide g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    constexpr Wide lim = std::numeric_limits<std::int64_t>::max();
    if (num > lim || num < -lim || den > lim) throw DomainError("rational overflow");
    return {static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

Rational from_wide(Wide num, Wide den) {
    const auto [n, d] = reduce(num, den);
    return Rational(n, d);
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    std::tie(num_, den_) = reduce(num, den);
}

Rational Rational::parse(std::string_view text) {
    const std::string_view whole = text;
    if (text.empty()) throw DomainError("empty rational");

    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        return Rational(parse_int(text.substr(0, slash), whole), parse_int(text.substr(slash + 1), whole));
    }

    bool negative = false;
    if (text.front() == '+' || text.front() == '-') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    std::int64_t exponent = 0;
    if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_text = text.substr(e + 1);
        if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
        exponent = parse_int(exp_text, whole);
        text = text.substr(0, e);
    }
    std::string digits;
    bool seen_point = false;
    for (const char c : text) {
        if (c == '.' && !seen_point) {
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (seen_point) --exponent;
        } else {
            throw DomainError("not a rational number: '" + std::string(whole) + "'");
        }
    }
    if (digits.empty()) throw DomainError("not a rational number: '" + std::string(whole) + "'");

    Rational value(parse_int(digits, whole));
    if (exponent < -18 || exponent > 18) throw DomainError("rational overflow in '" + std::string(whole) + "'");
    std::int64_t scale = 1;
    for (std::int64_t i = 0; i < (exponent < 0 ? -exponent : exponent); ++i) scale *= 10;
    value = exponent < 0 ? value / Rational(scale) : value * Rational(scale);
    return negative ? Rational(0) - value : value;
}

double Rational::to_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(Rational l, Rational r) {
    return from_wide(static_cast<Wide>(l.num_) * r.den_ + static_cast<Wide>(r.num_) * l.den_,
                               static_cast<Wide>(l.den_) * r.den_);
}

Rational operator-(Rational l, Rational r) {
    return from_wide(static_cast<Wide>(l.num_) * r.den_ - static_cast<Wide>(r.num_) * l.den_,
                               static_cast<Wide>(l.den_) * r.den_);
}

Rational operator*(Rational l, Rational r) {
    return from_wide(static_cast<Wide>(l.num_) * r.num_, static_cast<Wide>(l.den_) * r.den_);
}

Rational operator/(Rational l, Rational r) {
    return from_wide(static_cast<Wide>(l.num_) * r.den_, static_cast<Wide>(l.den_) * r.num_);
}

bool operator<(const Rational& l, const Rational& r) {
    return static_cast<Wide>(l.num_) * r.den_ < static_cast<Wide>(r.num_) * l.den_;
}

}  // namespace qgroupoid
