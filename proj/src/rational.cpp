#include "gptlab/rational.hpp"

#include <sstream>

namespace gptlab {

std::string to_string(const Rational& q)
{
    return q.str();
}

namespace {

bool is_integer_token(const std::string& s)
{
    if (s.empty())
        return false;
    std::size_t start = (s[0] == '-') ? 1 : 0;
    if (start == s.size())
        return false;
    for (std::size_t i = start; i < s.size(); ++i)
    {
        if (s[i] < '0' || s[i] > '9')
            return false;
    }
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text)
{
    const std::size_t slash = text.find('/');
    std::string num_part = (slash == std::string::npos) ? text : text.substr(0, slash);
    std::string den_part = (slash == std::string::npos) ? "1" : text.substr(slash + 1);
    if (!is_integer_token(num_part) || !is_integer_token(den_part) || den_part[0] == '-')
        throw UsageError("malformed rational literal: \"" + text + "\"");
    boost::multiprecision::mpz_int num(num_part);
    boost::multiprecision::mpz_int den(den_part);
    if (den == 0)
        throw UsageError("zero denominator in rational literal: \"" + text + "\"");
    return Rational(num, den);
}

std::string to_string(const RatVec& v)
{
    std::ostringstream out;
    out << "(";
    for (Eigen::Index i = 0; i < v.size(); ++i)
    {
        if (i > 0)
            out << ", ";
        out << v(i).str();
    }
    out << ")";
    return out.str();
}

RatVec make_vec(std::initializer_list<Rational> entries)
{
    RatVec v(static_cast<Eigen::Index>(entries.size()));
    Eigen::Index i = 0;
    for (const Rational& q : entries)
        v(i++) = q;
    return v;
}

RatVec to_rat_vec(const std::vector<Rational>& entries)
{
    RatVec v(static_cast<Eigen::Index>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = entries[i];
    return v;
}

bool lex_less(const RatVec& a, const RatVec& b)
{
    for (Eigen::Index i = 0; i < a.size() && i < b.size(); ++i)
    {
        if (a(i) != b(i))
            return a(i) < b(i);
    }
    return a.size() < b.size();
}

}  // namespace gptlab
