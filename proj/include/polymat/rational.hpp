#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace polymat {

using Rational = mpq_class;

// Input errors: malformed files, unknown labels, cap violations.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parses "7", "-3", "p/q". The result is canonical (lowest terms, q > 0).
Rational parse_rational(std::string_view text);

// Integer values print without a denominator; everything else as "p/q".
std::string format_rational(const Rational& q);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

} // namespace polymat
