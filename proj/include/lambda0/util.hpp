#ifndef LAMBDA0_UTIL_HPP
#define LAMBDA0_UTIL_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace lambda0 {

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m)
{
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m);

/* inverse of a modulo m; throws if gcd(a, m) != 1 */
uint64_t invmod(uint64_t a, uint64_t m);

uint64_t gcd_u64(uint64_t a, uint64_t b);

uint64_t isqrt_u64(uint64_t n);

/* deterministic Miller-Rabin, valid for all n < 2^64 */
bool is_prime_u64(uint64_t n);

/* distinct prime factors, trial division + Pollard rho */
std::vector<uint64_t> prime_factors_u64(uint64_t n);

bool is_squarefree_u64(uint64_t n);

/* Kronecker symbol (a|n) */
int kronecker(long long a, long long n);

inline uint64_t pow3(unsigned e)
{
    uint64_t r = 1;
    while (e--) r *= 3;
    return r;
}

/* 3-adic valuation; val3(0) = cap */
inline unsigned val3(uint64_t x, unsigned cap = 64)
{
    if (x == 0) return cap;
    unsigned v = 0;
    while (x % 3 == 0) { x /= 3; ++v; }
    return v;
}

} // namespace lambda0

#endif
