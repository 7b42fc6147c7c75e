#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "errors.hpp"

namespace vasrev {

using BigInt = mpz_class;

// base^exp, exact. exp must be a natural number small enough for GMP.
inline BigInt big_pow(const BigInt& base, const BigInt& exp) {
    if (exp < 0) throw PreconditionFailed("big_pow: negative exponent");
    if (!exp.fits_ulong_p()) throw ValueTooLarge("big_pow: exponent does not fit unsigned long");
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp.get_ui());
    return r;
}

inline BigInt big_pow(const BigInt& base, unsigned long exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

// Exact value of the form coeff * base^exponent. The theoretical bounds of
// the analysis routinely exceed what can be expanded to digits (the domain
// bound for d=2 already has ~3e9 digits), so they are carried in this form
// and expanded only on demand, under a digit guard.
struct BigPower {
    BigInt coeff = 1;
    BigInt base = 1;
    BigInt exponent = 0;

    static constexpr std::size_t kDefaultDigitGuard = 2'000'000;

    // Number of decimal digits the expanded value would need, roughly.
    double digits_estimate() const {
        if (coeff == 0 || base == 0) return 1.0;
        double coeff_digits = static_cast<double>(mpz_sizeinbase(coeff.get_mpz_t(), 10));
        double base_digits = static_cast<double>(mpz_sizeinbase(base.get_mpz_t(), 10));
        return coeff_digits + base_digits * exponent.get_d();
    }

    bool expandable(std::size_t digit_guard = kDefaultDigitGuard) const {
        if (base == 0 || base == 1 || base == -1 || coeff == 0) return true;
        if (!exponent.fits_ulong_p()) return false;
        return digits_estimate() <= static_cast<double>(digit_guard);
    }

    BigInt value(std::size_t digit_guard = kDefaultDigitGuard) const {
        if (coeff == 0) return 0;
        if (base == 0) return exponent == 0 ? coeff : BigInt(0);
        if (!expandable(digit_guard))
            throw ValueTooLarge("bound " + str() + " exceeds the digit guard (" +
                                std::to_string(digit_guard) + " digits)");
        return coeff * big_pow(base, exponent);
    }

    int value_sign() const {
        if (coeff == 0) return 0;
        if (base == 0) return exponent == 0 ? sgn(coeff) : 0;
        if (base < 0 && exponent % 2 != 0) return -sgn(coeff);
        return sgn(coeff);
    }

    // Exact comparison value >= v, decided without expanding when the value is
    // astronomically large: coeff*base^e >= 2^(e*(bits(base)-1)) for base >= 2.
    bool at_least(const BigInt& v) const {
        int s = value_sign();
        if (v <= 0) {
            if (s > 0) return true;
            if (s == 0) return true;  // 0 >= v for v <= 0
            return value() >= v;      // negative values only arise from small inputs
        }
        if (s <= 0) return false;
        if (coeff >= 1 && base >= 2) {
            BigInt low_bits = exponent * static_cast<long>(mpz_sizeinbase(base.get_mpz_t(), 2) - 1);
            BigInt v_bits = static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2));
            if (low_bits >= v_bits) return true;  // value >= 2^low_bits >= 2^bits(v) > v
        }
        return value() >= v;  // remaining cases are small enough to expand
    }

    std::string str(std::size_t digit_guard = kDefaultDigitGuard) const {
        if (expandable(digit_guard)) return value(digit_guard).get_str();
        std::string s;
        if (coeff != 1) s += coeff.get_str() + "*";
        s += base.get_str() + "^" + exponent.get_str();
        return s;
    }
};

}  // namespace vasrev
