#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace cml {

/// Exact rational number. All game-relevant arithmetic happens in this type.
using Rational = mpq_class;
using Integer = mpz_class;

/// Thrown on malformed input files or descriptors.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when a caller violates an operation's precondition.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a configured enumeration or iteration cap would be exceeded.
class CapExceeded : public std::runtime_error {
public:
    CapExceeded(const std::string& what, double required)
        : std::runtime_error(what), required_(required) {}
    double required() const { return required_; }

private:
    double required_;
};

/// Parses "7", "-3", "2.25", "7/2" into an exact rational.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& x);

Rational pow(const Rational& base, unsigned exponent);

Integer factorial(unsigned k);

/// Decimal rendering of x^(1/k) rounded half-up to `digits` significant digits.
/// Uses an integer k-th root with a few guard digits, so the output is the
/// same on every platform. x must be non-negative.
std::string root_decimal(const Rational& x, unsigned k, int digits = 12);

/// Decimal rendering of a non-negative rational to `digits` significant digits.
inline std::string to_decimal(const Rational& x, int digits = 12) {
    return root_decimal(x, 1, digits);
}

}  // namespace cml
