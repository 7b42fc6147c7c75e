#pragma once

#include <algorithm>
#include <vector>

#include "bigint.hpp"
#include "vector.hpp"

namespace vasrev {

// Non-increasing sequence of d natural thresholds driving component
// extraction. Levels are exact big integers: adapted extractors grow as
// lambda^d per step and overflow machine words quickly.
class Extractor {
  public:
    explicit Extractor(std::vector<BigInt> levels) : levels_(std::move(levels)) {
        if (levels_.empty()) throw PreconditionFailed("extractor needs at least one level");
        for (std::size_t i = 0; i < levels_.size(); ++i) {
            if (levels_[i] < 0) throw PreconditionFailed("extractor levels are natural numbers");
            if (i > 0 && levels_[i - 1] < levels_[i])
                throw PreconditionFailed("extractor levels must be non-increasing");
        }
    }

    static Extractor from_ints(const std::vector<Int>& levels) {
        return Extractor(std::vector<BigInt>(levels.begin(), levels.end()));
    }

    int dim() const { return static_cast<int>(levels_.size()); }
    // 1-based, matching the lambda_n indexing of the recurrences.
    const BigInt& level(int n) const { return levels_.at(static_cast<std::size_t>(n - 1)); }
    const std::vector<BigInt>& levels() const { return levels_; }

    friend bool operator==(const Extractor&, const Extractor&) = default;

  private:
    std::vector<BigInt> levels_;
};

namespace detail {

// Slot maxima over a configuration set; projected slots count as maximal and
// an empty set as everywhere minimal.
struct SlotMax {
    bool star = false;
    bool any = false;
    Int value = 0;

    bool at_least(const BigInt& threshold) const {
        if (star) return true;
        if (!any) return false;
        return BigInt(value) >= threshold;
    }
};

inline std::vector<SlotMax> slot_maxima(int d, const std::vector<Config>& xs) {
    std::vector<SlotMax> m(static_cast<std::size_t>(d));
    for (const Config& x : xs) {
        if (x.dim() != d) throw DimensionMismatch("configuration dimension");
        if (!x.is_config()) throw PreconditionFailed("set members must be configurations");
        for (int i = 0; i < d; ++i) {
            auto& mi = m[static_cast<std::size_t>(i)];
            if (x.is_star(i)) {
                mi.star = true;
            } else {
                mi.value = mi.any ? std::max(mi.value, *x.slot(i)) : *x.slot(i);
                mi.any = true;
            }
        }
    }
    return m;
}

}  // namespace detail

// The unique minimal excluding set J for (lambda, X): outside J every slot of
// every member stays below lambda_{|J|+1}. The candidate of size j is
// T_j = { i : max_i >= lambda_{j+1} }; the first j with |T_j| <= j gives the
// minimal set (T_j is itself excluding and contained in every excluding set).
inline IndexSet min_excluding_set(const Extractor& lambda, const std::vector<Config>& xs) {
    int d = lambda.dim();
    for (const Config& x : xs)
        if (x.dim() != d) throw DimensionMismatch("configuration dimension vs extractor");
    auto maxima = detail::slot_maxima(d, xs);

    IndexSet result;
    bool found = false;
    for (int j = 0; j < d && !found; ++j) {
        IndexSet tj;
        for (int i = 0; i < d; ++i)
            if (maxima[static_cast<std::size_t>(i)].at_least(lambda.level(j + 1))) tj.insert(i);
        if (static_cast<int>(tj.size()) <= j) {
            result = std::move(tj);
            found = true;
        }
    }
    if (!found)
        for (int i = 0; i < d; ++i) result.insert(i);

    // Minimality witness: each member of J is reached by some configuration.
    if (!result.empty()) {
        const BigInt& floor_level = lambda.level(static_cast<int>(result.size()));
        for (int i : result)
            if (!maxima[static_cast<std::size_t>(i)].at_least(floor_level))
                throw Error("minimal excluding set witness failed");
    }
    return result;
}

// pi_J(X) for the minimal excluding set J, as a sorted duplicate-free set.
inline std::vector<Config> extract(const Extractor& lambda, const std::vector<Config>& xs) {
    IndexSet j = min_excluding_set(lambda, xs);
    std::vector<Config> out;
    out.reserve(xs.size());
    for (const Config& x : xs) out.push_back(project(x, j));
    std::sort(out.begin(), out.end(), CanonLess{});
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// lambda_{n-1} >= lambda_n^{d-n+1} * a + lambda_n for all n in 2..d.
inline bool is_adapted(const Extractor& lambda, Int a) {
    int d = lambda.dim();
    for (int n = 2; n <= d; ++n) {
        BigInt rhs = big_pow(lambda.level(n), static_cast<unsigned long>(d - n + 1));
        rhs = rhs * a + lambda.level(n);
        if (lambda.level(n - 1) < rhs) return false;
    }
    return true;
}

// The adapted extractor with lambda_d = s and lambda_{n-1} = lambda_n^d (1+a);
// each lambda_n^{d+1-n} stays within x^{d^d} for x = (1+a)s.
inline Extractor build_adapted(int d, Int s, Int a) {
    if (d < 1) throw PreconditionFailed("dimension must be at least 1");
    if (s < 1) throw PreconditionFailed("s must be positive");
    if (a < 0) throw PreconditionFailed("action norm is a natural number");
    std::vector<BigInt> levels(static_cast<std::size_t>(d));
    levels[static_cast<std::size_t>(d - 1)] = s;
    for (int n = d; n >= 2; --n)
        levels[static_cast<std::size_t>(n - 2)] =
            big_pow(levels[static_cast<std::size_t>(n - 1)], static_cast<unsigned long>(d)) * (1 + a);
    Extractor lambda(std::move(levels));
    if (!is_adapted(lambda, a)) throw Error("build_adapted produced a non-adapted extractor");
    BigInt cap = big_pow(BigInt(1 + a) * BigInt(s), big_pow(BigInt(d), static_cast<unsigned long>(d)));
    for (int n = 1; n <= d; ++n)
        if (big_pow(lambda.level(n), static_cast<unsigned long>(d + 1 - n)) > cap)
            throw Error("adapted extractor level bound violated");
    return lambda;
}

}  // namespace vasrev
