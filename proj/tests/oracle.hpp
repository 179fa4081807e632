#pragma once

// Test-only reference: expands Lambda-functions by visiting every exponent
// vector in {0..d+1}^l (odometer order) and evaluating gamma from its textbook
// definition. Shares no code with the library's composition recursion.

#include "cml/rational.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace oracle {

using cml::Integer;
using cml::Rational;

inline Integer fact(unsigned k) {
    Integer r = 1;
    for (unsigned i = 2; i <= k; ++i) r *= i;
    return r;
}

using Gamma = std::function<Rational(const std::vector<unsigned>&, unsigned)>;

inline Rational gamma_dcoord(const std::vector<unsigned>& t, unsigned d) {
    Integer denom = 1;
    for (unsigned x : t) {
        if (x == d + 1) return Rational(1);
        denom *= fact(x);
    }
    return Rational(fact(d) * d, denom);
}

inline Rational gamma_ccoord(const std::vector<unsigned>&, unsigned d) { return Rational(fact(d)); }

inline Rational expand(const std::vector<Rational>& w, unsigned d, const Gamma& gamma,
                       std::optional<std::size_t> player = std::nullopt) {
    const std::size_t l = w.size();
    if (l == 0) return 0;
    std::vector<unsigned> t(l, 0);
    Rational total = 0;
    while (true) {
        unsigned sum = 0;
        for (unsigned x : t) sum += x;
        if (sum == d + 1 && (!player || t[*player] >= 1)) {
            Rational term = 1;
            for (std::size_t k = 0; k < l; ++k)
                for (unsigned e = 0; e < t[k]; ++e) term *= w[k];
            Rational g = gamma(t, d);
            g.canonicalize();
            total += g * term;
        }
        std::size_t k = 0;
        while (k < l && ++t[k] > d + 1) t[k++] = 0;
        if (k == l) break;
    }
    return total;
}

inline std::vector<Rational> ints(std::initializer_list<long> v) {
    std::vector<Rational> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

}  // namespace oracle
