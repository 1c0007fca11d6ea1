#include "apt/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace apt {

namespace {

Rational::Integer parse_integer(std::string_view text, std::string_view whole)
{
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        negative = text[i] == '-';
        ++i;
    }
    if (i == text.size())
        throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    Rational::Integer value = 0;
    for (; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9')
            throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
        value = value * 10 + (text[i] - '0');
    }
    return negative ? Rational::Integer(-value) : value;
}

}  // namespace

Rational::Rational(std::int64_t numerator, std::int64_t denominator)
    : Rational(Integer(numerator), Integer(denominator))
{
}

Rational::Rational(const Integer& numerator, const Integer& denominator)
{
    if (denominator == 0)
        throw std::domain_error("rational with zero denominator");
    value_ = denominator < 0 ? Value(-numerator, -denominator) : Value(numerator, denominator);
}

Rational Rational::parse(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_integer(text, text), Integer(1));
    const Integer num = parse_integer(text.substr(0, slash), text);
    const Integer den = parse_integer(text.substr(slash + 1), text);
    if (den == 0)
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

Rational::Integer Rational::numerator() const { return boost::multiprecision::numerator(value_); }

Rational::Integer Rational::denominator() const { return boost::multiprecision::denominator(value_); }

Rational::Integer Rational::floor() const
{
    const Integer num = numerator();
    const Integer den = denominator();
    Integer q = num / den;
    if (num < 0 && q * den != num)
        --q;
    return q;
}

Rational::Integer Rational::ceil() const
{
    const Integer num = numerator();
    const Integer den = denominator();
    Integer q = num / den;
    if (num > 0 && q * den != num)
        ++q;
    return q;
}

std::string Rational::str() const
{
    if (is_integer())
        return numerator().str();
    return numerator().str() + "/" + denominator().str();
}

Rational& Rational::operator/=(const Rational& rhs)
{
    if (rhs.value_ == 0)
        throw std::domain_error("rational division by zero");
    value_ /= rhs.value_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace apt
