#ifndef LAMBDA0_LAMBDA_RING_HPP
#define LAMBDA0_LAMBDA_RING_HPP

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "lambda0/util.hpp"

namespace lambda0 {

enum class Variant { omega, omega_prime };

/* Truncation context: coefficients mod 3^e, polynomials mod omega_n
 * (respectively omega'_n = omega_n / T). */
struct LevelContext {
    unsigned e = 2;
    unsigned n = 0;
    Variant variant = Variant::omega;

    uint64_t modulus() const { return pow3(e); }
    size_t deg() const
    {
        size_t d = pow3(n);
        return variant == Variant::omega ? d : d - 1;
    }
    bool operator==(const LevelContext&) const = default;
};

/* Element of (Z/3^e)[T]/(omega), coefficients lowest degree first,
 * length exactly ctx.deg(). */
struct TruncatedPolynomial {
    LevelContext ctx;
    std::vector<uint64_t> coeff;

    TruncatedPolynomial() = default;
    TruncatedPolynomial(LevelContext c, std::vector<uint64_t> v) : ctx(c), coeff(std::move(v)) {}
    bool is_zero() const
    {
        for (uint64_t x : coeff)
            if (x) return false;
        return true;
    }
    bool operator==(const TruncatedPolynomial&) const = default;
};

/* omega_n = (1+T)^{3^n} - 1 (resp. omega'_n = omega_n / T) with exact
 * integer coefficients, lowest degree first, length deg+1 (monic). */
std::vector<mpz_class> omega_exact(unsigned n, Variant variant = Variant::omega);

/* same, reduced mod 3^e */
std::vector<uint64_t> omega_coeffs_mod(unsigned n, Variant variant, uint64_t mod3e);

/* build an element of the context ring from arbitrary-degree coefficients:
 * reduce mod 3^e and take the remainder mod omega (monic division) */
TruncatedPolynomial poly_in_context(const LevelContext& ctx, const std::vector<int64_t>& coeffs);
TruncatedPolynomial poly_in_context(const LevelContext& ctx, const std::vector<mpz_class>& coeffs);

/* remainder of f modulo the monic polynomial g, all coefficients mod 3^e */
std::vector<uint64_t> poly_rem_monic(std::vector<uint64_t> f, const std::vector<uint64_t>& g,
                                     uint64_t mod3e);

/* multiply by T in the context ring (in place) */
void mul_by_T(const LevelContext& ctx, std::vector<uint64_t>& coeff);

/* product in the context ring */
TruncatedPolynomial poly_mul(const TruncatedPolynomial& a, const TruncatedPolynomial& b);

/* powers (1+T)^i for i = 0 .. count-1 in the context ring */
std::vector<std::vector<uint64_t>> one_plus_T_powers(const LevelContext& ctx, size_t count);

/* substitute T -> (1+T)^{-1} - 1 (the Iwasawa involution) */
TruncatedPolynomial involute(const TruncatedPolynomial& p);

} // namespace lambda0

#endif
