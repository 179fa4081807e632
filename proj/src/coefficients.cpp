#include "cml/mechanism.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace cml {

std::vector<Partition> partitions(unsigned total) {
    std::vector<Partition> out;
    Partition current;
    std::function<void(unsigned, unsigned)> rec = [&](unsigned remaining, unsigned max_part) {
        if (remaining == 0) {
            out.push_back(current);
            return;
        }
        for (unsigned p = std::min(remaining, max_part); p >= 1; --p) {
            current.push_back(p);
            rec(remaining - p, p);
            current.pop_back();
        }
    };
    rec(total, total);
    return out;
}

unsigned default_degree(std::size_t machines) {
    unsigned ceil_log2 = 0;
    while ((std::size_t{1} << ceil_log2) < machines) ++ceil_log2;
    return std::max(2u, ceil_log2);
}

CoefficientFunction CoefficientFunction::dcoord(unsigned d) {
    if (d < 2) throw UsageError("mechanisms in M(d) need d >= 2");
    return CoefficientFunction(CoefficientKind::DCoord, d);
}

CoefficientFunction CoefficientFunction::ccoord(unsigned d) {
    if (d < 2) throw UsageError("mechanisms in M(d) need d >= 2");
    return CoefficientFunction(CoefficientKind::CCoord, d);
}

CoefficientFunction CoefficientFunction::custom(unsigned d, std::map<Partition, Rational> table) {
    if (d < 2) throw UsageError("mechanisms in M(d) need d >= 2");
    const auto all = partitions(d + 1);
    for (const auto& [key, value] : table) {
        if (!std::is_sorted(key.rbegin(), key.rend()) || std::find(key.begin(), key.end(), 0u) != key.end() ||
            std::accumulate(key.begin(), key.end(), 0u) != d + 1)
            throw UsageError("gamma table key is not a partition of d+1 into positive parts");
        if (value < 0) throw UsageError("gamma values must be non-negative");
    }
    for (const auto& p : all) {
        if (!table.count(p)) {
            std::string text;
            for (unsigned x : p) text += (text.empty() ? "" : ",") + std::to_string(x);
            throw UsageError("gamma table is missing partition {" + text + "}");
        }
    }
    CoefficientFunction cf(CoefficientKind::Custom, d);
    cf.table_ = std::move(table);
    return cf;
}

CoefficientFunction CoefficientFunction::zero_sensitive_fixture(const CoefficientFunction& base,
                                                                std::map<std::vector<unsigned>, Rational> padded) {
    CoefficientFunction cf = base;
    for (const auto& [key, value] : padded) {
        if (std::accumulate(key.begin(), key.end(), 0u) != base.d_ + 1)
            throw UsageError("padded gamma key must sum to d+1");
        if (value < 0) throw UsageError("gamma values must be non-negative");
    }
    for (auto& [key, value] : padded) {
        std::vector<unsigned> sorted = key;
        std::sort(sorted.rbegin(), sorted.rend());
        cf.padded_[sorted] = value;
    }
    return cf;
}

Rational CoefficientFunction::canonical(const Partition& parts) const {
    switch (kind_) {
        case CoefficientKind::CCoord:
            return Rational(factorial(d_));
        case CoefficientKind::DCoord: {
            if (parts.size() == 1) return Rational(1);  // single part equal to d+1
            Integer denom = 1;
            for (unsigned t : parts) denom *= factorial(t);
            Rational r(Integer(factorial(d_) * d_), denom);
            r.canonicalize();
            return r;
        }
        case CoefficientKind::Custom:
            break;
    }
    return table_.at(parts);
}

Rational CoefficientFunction::operator()(std::span<const unsigned> parts) const {
    unsigned sum = 0;
    for (unsigned t : parts) sum += t;
    if (sum != d_ + 1) throw UsageError("gamma argument must sum to d+1");
    if (!padded_.empty()) {
        std::vector<unsigned> sorted(parts.begin(), parts.end());
        std::sort(sorted.rbegin(), sorted.rend());
        if (auto it = padded_.find(sorted); it != padded_.end()) return it->second;
    }
    Partition key;
    key.reserve(parts.size());
    for (unsigned t : parts)
        if (t != 0) key.push_back(t);
    std::sort(key.rbegin(), key.rend());
    return canonical(key);
}

std::string CoefficientFunction::name() const {
    switch (kind_) {
        case CoefficientKind::DCoord:
            return "dcoord";
        case CoefficientKind::CCoord:
            return "ccoord";
        case CoefficientKind::Custom:
            break;
    }
    return "custom";
}

const CoefficientFunction& Mechanism::coefficients() const {
    if (!cf_) throw UsageError("the makespan baseline is not a member of M(d)");
    return *cf_;
}

}  // namespace cml
