#include "cml/instance.hpp"

#include <random>

namespace cml {

const std::vector<std::string>& generator_kinds() {
    static const std::vector<std::string> kinds = {"uniform-integer", "restricted-related", "two-values"};
    return kinds;
}

Instance generate_instance(const std::string& kind, std::size_t n, std::size_t m, std::uint64_t seed,
                           const GeneratorParams& params) {
    if (n == 0 || m == 0) throw UsageError("generator needs n >= 1 and m >= 1");
    if (params.lo < 1 || params.hi < params.lo)
        throw UsageError("generator range must satisfy 1 <= lo <= hi");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> value(params.lo, params.hi);
    std::vector<std::vector<Weight>> rows(n, std::vector<Weight>(m));

    if (kind == "uniform-integer") {
        for (auto& row : rows)
            for (auto& w : row) w = Weight(Rational(value(rng)));
    } else if (kind == "two-values") {
        std::bernoulli_distribution coin(0.5);
        for (auto& row : rows)
            for (auto& w : row) w = Weight(Rational(coin(rng) ? params.hi : params.lo));
    } else if (kind == "restricted-related") {
        if (params.factor_max < 1) throw UsageError("factor_max must be >= 1");
        if (!(params.avail > 0.0 && params.avail <= 1.0)) throw UsageError("avail must be in (0, 1]");
        std::uniform_int_distribution<long> factor(1, params.factor_max);
        std::vector<long> machine_factor(m);
        for (auto& f : machine_factor) f = factor(rng);
        std::bernoulli_distribution open(params.avail);
        for (std::size_t u = 0; u < n; ++u) {
            long base = value(rng);
            for (int attempt = 0;; ++attempt) {
                bool any = false;
                for (std::size_t j = 0; j < m; ++j) {
                    if (open(rng)) {
                        rows[u][j] = Weight(Rational(base * machine_factor[j]));
                        any = true;
                    } else {
                        rows[u][j] = Weight::unavailable();
                    }
                }
                if (any) break;
                if (params.strict)
                    throw UsageError("job " + std::to_string(u) + " drew an empty availability row");
                if (attempt > 10000) throw UsageError("could not draw a non-empty availability row");
            }
        }
    } else {
        std::string known;
        for (const auto& k : generator_kinds()) known += (known.empty() ? "" : ", ") + k;
        throw UsageError("unknown generator kind '" + kind + "' (expected one of: " + known + ")");
    }
    return Instance(std::move(rows));
}

}  // namespace cml
