#pragma once

#include "bigint.hpp"
#include "vector.hpp"

namespace vasrev {

// d^{d+2}, the dimension tower the run-length exponents share.
inline BigInt dim_tower(int d) {
    if (d < 1) throw PreconditionFailed("dimension must be at least 1");
    return big_pow(BigInt(d), static_cast<unsigned long>(d + 2));
}

// 17 d^2 x^{15 d^{d+2}}: length bound for the synthesized reversible word.
inline BigPower revbound_main(int d, const BigInt& x) {
    return BigPower{BigInt(17) * d * d, x, BigInt(15) * dim_tower(d)};
}

// 3 d x^{7 d^{d+2}}: length bound for the balancing cycle.
inline BigPower ucycle_bound(int d, const BigInt& x) {
    return BigPower{BigInt(3) * d, x, BigInt(7) * dim_tower(d)};
}

// 2 x^{7 d^{d+2}}: length bound for the displacement-matching path.
inline BigPower alpha_tilde_bound(int d, const BigInt& x) {
    return BigPower{BigInt(2), x, BigInt(7) * dim_tower(d)};
}

inline BigInt revbound_x(Int a, Int p_norm, Int delta_norm) {
    return BigInt(1 + 2 * a) * (BigInt(1) + p_norm + delta_norm);
}

inline BigInt corollary_x(Int a, Int max_endpoint_norm) {
    return BigInt(1 + 2 * a) * (BigInt(1) + BigInt(2) * max_endpoint_norm);
}

// Run-length budget at which a reversible-reachability search is complete,
// for standard endpoints bounded by max_endpoint_norm.
inline BigPower corollary_bound(int d, Int a, Int max_endpoint_norm) {
    return revbound_main(d, corollary_x(a, max_endpoint_norm));
}

struct BoundReport {
    int d = 1;
    Int a = 0;
    Int p_norm = 0;
    Int delta_norm = 0;
    BigInt x;            // (1+2a)(1 + p_norm + delta_norm)
    BigInt x_corollary;  // (1+2a)(1 + 2(p_norm + delta_norm)); endpoint norms bounded by p+delta
    BigPower main;
    BigPower u_cycle;
    BigPower alpha_tilde;
    BigPower corollary;
};

inline BoundReport bound_report(int d, Int a, Int p_norm, Int delta_norm) {
    if (d < 1) throw PreconditionFailed("dimension must be at least 1");
    if (a < 0 || p_norm < 0 || delta_norm < 0)
        throw PreconditionFailed("norms are natural numbers");
    BoundReport r;
    r.d = d;
    r.a = a;
    r.p_norm = p_norm;
    r.delta_norm = delta_norm;
    r.x = revbound_x(a, p_norm, delta_norm);
    r.x_corollary = corollary_x(a, checked_add(p_norm, delta_norm));
    r.main = revbound_main(d, r.x);
    r.u_cycle = ucycle_bound(d, r.x);
    r.alpha_tilde = alpha_tilde_bound(d, r.x);
    r.corollary = revbound_main(d, r.x_corollary);
    return r;
}

// (102 d^2 a^2)^{(15 d^{d+2})^{d+2}}; zero when the action norm is zero.
inline BigPower domain_bound_form(int d, Int a) {
    if (d < 1) throw PreconditionFailed("dimension must be at least 1");
    if (a < 0) throw PreconditionFailed("action norm is a natural number");
    if (a == 0) return BigPower{0, 1, 0};
    BigInt base = BigInt(102) * d * d * a * a;
    BigInt exponent = big_pow(BigInt(15) * dim_tower(d), static_cast<unsigned long>(d + 2));
    return BigPower{1, base, exponent};
}

inline BigInt domain_bound(int d, Int a, std::size_t digit_guard = BigPower::kDefaultDigitGuard) {
    return domain_bound_form(d, a).value(digit_guard);
}

}  // namespace vasrev
