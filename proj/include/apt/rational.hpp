#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace apt {

/// Exact fraction in lowest terms with a positive denominator.
///
/// Thin value wrapper over boost's arbitrary precision rational so the rest
/// of the library never sees the multiprecision types directly. All bound
/// comparisons in the library go through this type; nothing is rounded.
class Rational {
public:
    using Integer = boost::multiprecision::cpp_int;

    Rational() = default;
    Rational(std::int64_t value) : value_(value) {}  // NOLINT: implicit by design of arithmetic types
    Rational(std::int64_t numerator, std::int64_t denominator);
    Rational(const Integer& numerator, const Integer& denominator);

    /// Parses "p", "p/q" or "-p/q". Throws std::invalid_argument.
    static Rational parse(std::string_view text);

    Integer numerator() const;
    Integer denominator() const;

    bool is_integer() const { return denominator() == 1; }
    Integer floor() const;
    Integer ceil() const;

    /// "p/q", or "p" when the denominator is one.
    std::string str() const;

    Rational& operator+=(const Rational& rhs) { value_ += rhs.value_; return *this; }
    Rational& operator-=(const Rational& rhs) { value_ -= rhs.value_; return *this; }
    Rational& operator*=(const Rational& rhs) { value_ *= rhs.value_; return *this; }
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(-a.value_); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    using Value = boost::multiprecision::cpp_rational;
    explicit Rational(Value v) : value_(std::move(v)) {}

    Value value_{0};
};

}  // namespace apt
