#pragma once

#include "cml/rational.hpp"

#include <mpfr.h>

#include <string>

namespace cml {

/// Closed interval [lo, hi] of non-negative reals with outward-rounded MPFR
/// endpoints. Only the monotone operations needed for bound certification are
/// provided; every operand must be non-negative.
class Interval {
public:
    static constexpr mpfr_prec_t kPrecision = 256;

    Interval();
    explicit Interval(const Rational& exact);
    Interval(const Interval& other);
    Interval& operator=(const Interval& other);
    ~Interval();

    static Interval ln2();

    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    friend Interval operator/(const Interval& a, const Interval& b);

    /// x^(1/k)
    Interval root(unsigned k) const;

    /// True if every point of *this is <= every point of other.
    bool certainly_le(const Interval& other) const;
    /// True if every point of *this is > every point of other.
    bool certainly_gt(const Interval& other) const;

    double lower() const;
    double upper() const;
    /// Midpoint rendered with `digits` significant digits.
    std::string to_decimal(int digits = 12) const;

private:
    mpfr_t lo_;
    mpfr_t hi_;
};

}  // namespace cml
