#include "polymat/rational.hpp"

#include <cctype>

namespace polymat {

namespace {

bool is_integer_literal(std::string_view s)
{
    if (s.empty())
        return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    return true;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+')
        throw InputError("malformed rational \"" + std::string(text) + "\"");
    std::string n(num[0] == '+' ? num.substr(1) : num);
    mpz_class p(n, 10);
    mpz_class q(std::string(den), 10);
    if (q == 0)
        throw InputError("zero denominator in \"" + std::string(text) + "\"");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

std::string format_rational(const Rational& value)
{
    Rational q(value);
    q.canonicalize();
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

} // namespace polymat
