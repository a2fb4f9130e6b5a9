#include "circdiam/rational.hpp"

#include <cctype>

#include "circdiam/errors.hpp"

namespace circdiam {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+'))
    {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw ParseError("not a rational number: \"" + std::string(text) + "\"");
    Integer p{std::string(num)};
    Integer q{std::string(den)};
    if (q == 0)
        throw ParseError("zero denominator in \"" + std::string(text) + "\"");
    Rational value(p, q);   // canonicalizes
    return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value)
{
    return value.str();
}

std::string to_string(const Integer& value)
{
    return value.str();
}

Rational dot(const Vector& lhs, const Vector& rhs)
{
    Rational sum = 0;
    for (std::size_t i = 0; i < lhs.size(); ++i)
        if (!is_zero(lhs[i]) && !is_zero(rhs[i]))
            sum += lhs[i] * rhs[i];
    return sum;
}

Rational dot(const Vector& lhs, const IntVector& rhs)
{
    Rational sum = 0;
    for (std::size_t i = 0; i < lhs.size(); ++i)
        if (!is_zero(rhs[i]) && !is_zero(lhs[i]))
            sum += lhs[i] * rhs[i];
    return sum;
}

IntVector primitive_direction(const Vector& v)
{
    Integer lcm_den = 1;
    bool nonzero = false;
    for (const auto& x : v)
    {
        if (is_zero(x))
            continue;
        nonzero = true;
        lcm_den = boost::multiprecision::lcm(lcm_den, Integer(denominator(x)));
    }
    if (!nonzero)
        return {};
    IntVector out(v.size());
    Integer g = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        out[i] = Integer(numerator(v[i])) * (lcm_den / Integer(denominator(v[i])));
        g = boost::multiprecision::gcd(g, Integer(abs(out[i])));
    }
    for (auto& x : out)
        x /= g;
    return out;
}

Vector to_rational(const IntVector& v)
{
    Vector out;
    out.reserve(v.size());
    for (const auto& x : v)
        out.emplace_back(x);
    return out;
}

}  // namespace circdiam
