#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace qgroupoid {

/// Exact rational with 64-bit numerator and positive denominator, always in
/// lowest terms. Arithmetic throws DomainError on overflow or division by zero.
class Rational {
public:
    constexpr Rational() noexcept = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    /// Accepts "n", "n/d" and decimals such as "-0.9" or "2.5e-3".
    static Rational parse(std::string_view text);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    /// Correctly rounded when |num| and den are below 2^53.
    double to_double() const noexcept;
    std::string to_string() const;

    friend Rational operator+(Rational l, Rational r);
    friend Rational operator-(Rational l, Rational r);
    friend Rational operator*(Rational l, Rational r);
    friend Rational operator/(Rational l, Rational r);
    friend bool operator==(const Rational&, const Rational&) = default;
    friend bool operator<(const Rational& l, const Rational& r);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace qgroupoid
