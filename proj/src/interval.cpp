#include "cml/interval.hpp"

#include <cstdio>
#include <vector>

namespace cml {

Interval::Interval() {
    mpfr_init2(lo_, kPrecision);
    mpfr_init2(hi_, kPrecision);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Rational& exact) : Interval() {
    if (exact < 0) throw UsageError("Interval requires a non-negative value");
    mpfr_set_q(lo_, exact.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, exact.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Interval& other) : Interval() {
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval& Interval::operator=(const Interval& other) {
    if (this != &other) {
        mpfr_set(lo_, other.lo_, MPFR_RNDD);
        mpfr_set(hi_, other.hi_, MPFR_RNDU);
    }
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Interval Interval::ln2() {
    Interval r;
    mpfr_const_log2(r.lo_, MPFR_RNDD);
    mpfr_const_log2(r.hi_, MPFR_RNDU);
    return r;
}

Interval operator+(const Interval& a, const Interval& b) {
    Interval r;
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Interval operator*(const Interval& a, const Interval& b) {
    Interval r;
    mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_mul(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Interval operator/(const Interval& a, const Interval& b) {
    if (mpfr_sgn(b.lo_) <= 0) throw UsageError("Interval division by an interval touching zero");
    Interval r;
    mpfr_div(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_div(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
}

Interval Interval::root(unsigned k) const {
    Interval r;
    mpfr_rootn_ui(r.lo_, lo_, k, MPFR_RNDD);
    mpfr_rootn_ui(r.hi_, hi_, k, MPFR_RNDU);
    return r;
}

bool Interval::certainly_le(const Interval& other) const { return mpfr_lessequal_p(hi_, other.lo_) != 0; }

bool Interval::certainly_gt(const Interval& other) const { return mpfr_greater_p(lo_, other.hi_) != 0; }

double Interval::lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }

double Interval::upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }

std::string Interval::to_decimal(int digits) const {
    mpfr_t mid;
    mpfr_init2(mid, kPrecision);
    mpfr_add(mid, lo_, hi_, MPFR_RNDN);
    mpfr_div_ui(mid, mid, 2, MPFR_RNDN);
    std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, mid);
    mpfr_clear(mid);
    return std::string(buf.data());
}

}  // namespace cml
