#include "cml/rational.hpp"

#include <cctype>

namespace cml {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw ParseError("malformed number '" + std::string(whole) + "'");
    Integer v(std::string(s), 10);
    return negative ? Integer(-v) : v;
}

Integer pow10(unsigned e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    if (text.empty()) throw ParseError("empty number");
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Integer num = parse_integer(text.substr(0, slash), text);
        auto den_text = text.substr(slash + 1);
        if (!all_digits(den_text)) throw ParseError("malformed rational '" + std::string(text) + "'");
        Integer den(std::string(den_text), 10);
        if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        auto int_part = text.substr(0, dot);
        auto frac_part = text.substr(dot + 1);
        bool negative = !int_part.empty() && int_part.front() == '-';
        if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) int_part.remove_prefix(1);
        if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
            (!frac_part.empty() && !all_digits(frac_part)))
            throw ParseError("malformed decimal '" + std::string(text) + "'");
        Integer whole = int_part.empty() ? Integer(0) : Integer(std::string(int_part), 10);
        Integer frac = frac_part.empty() ? Integer(0) : Integer(std::string(frac_part), 10);
        Integer scale = pow10(static_cast<unsigned>(frac_part.size()));
        Rational r(Integer(whole * scale + frac), scale);
        r.canonicalize();
        return negative ? Rational(-r) : r;
    }
    return Rational(parse_integer(text, text));
}

std::string to_string(const Rational& v) {
    Rational x = v;
    x.canonicalize();
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational pow(const Rational& base, unsigned exponent) {
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
    return Rational(num, den);  // already canonical
}

Integer factorial(unsigned k) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), k);
    return r;
}

std::string root_decimal(const Rational& x, unsigned k, int digits) {
    if (x < 0) throw UsageError("root_decimal of a negative value");
    if (k == 0) throw UsageError("root_decimal with k = 0");
    if (digits < 1) digits = 1;
    if (x == 0) return "0";

    // Find the decimal exponent e with 10^e <= x^(1/k) < 10^(e+1), i.e. 10^(ek) <= x < 10^((e+1)k).
    auto below = [&](long e) {  // 10^(e*k) <= x
        long p = e * static_cast<long>(k);
        return p >= 0 ? Rational(pow10(static_cast<unsigned>(p))) <= x
                      : Rational(Integer(1), pow10(static_cast<unsigned>(-p))) <= x;
    };
    long e = 0;
    while (!below(e)) --e;
    while (below(e + 1)) ++e;

    // r = floor(x^(1/k) * 10^s) holds digits + guard significant digits.
    const int guard = 3;
    long s = static_cast<long>(digits) + guard - 1 - e;
    Rational scaled = x;
    long ps = s * static_cast<long>(k);
    if (ps >= 0)
        scaled *= Rational(pow10(static_cast<unsigned>(ps)));
    else
        scaled /= Rational(pow10(static_cast<unsigned>(-ps)));
    Integer floor_scaled = scaled.get_num() / scaled.get_den();
    Integer r;
    mpz_root(r.get_mpz_t(), floor_scaled.get_mpz_t(), k);

    // Round away the guard digits, half-up.
    Integer g = pow10(guard);
    Integer q = r / g;
    if (Integer(r % g) * 2 >= g) q += 1;
    s -= guard;

    std::string mant = q.get_str();
    // q may have gained a digit by rounding (999.. -> 1000..); drop the trailing zero.
    if (static_cast<int>(mant.size()) > digits) {
        mant.pop_back();
        s -= 1;
    }
    // value = mant * 10^(-s)
    if (s <= 0) return mant + std::string(static_cast<std::size_t>(-s), '0');
    std::string out;
    if (static_cast<long>(mant.size()) <= s)
        out = "0." + std::string(static_cast<std::size_t>(s - static_cast<long>(mant.size())), '0') + mant;
    else
        out = mant.substr(0, mant.size() - static_cast<std::size_t>(s)) + "." + mant.substr(mant.size() - static_cast<std::size_t>(s));
    // trim trailing zeros after the point
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
    return out;
}

}  // namespace cml
