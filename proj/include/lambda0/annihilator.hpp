#ifndef LAMBDA0_ANNIHILATOR_HPP
#define LAMBDA0_ANNIHILATOR_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "lambda0/ideal.hpp"
#include "lambda0/quadfield.hpp"

namespace lambda0 {

/* r == 1 (mod M), M = 3^e f'; g a primitive root mod r; chi_base generates
 * the 3^e-torsion of the multiplicative group */
struct AuxiliaryPrime {
    uint64_t r = 0;
    uint64_t M = 0;
    uint64_t g = 0;
    uint64_t chi_base = 0;
    unsigned e = 0;
};

/* ascending primes == 1 (mod 3^e f'); throws std::runtime_error when the
 * search horizon `cap` multiples of M is exhausted */
std::vector<AuxiliaryPrime> find_aux_primes(const FundamentalDiscriminant& fd, unsigned e,
                                            unsigned n, unsigned count,
                                            uint64_t cap = 2'000'000);

/* the 3^e-power-residue character mod r: discrete log of x^{(r-1)/3^e}
 * base chi_base, an element of Z/3^e; surjective homomorphism */
uint64_t chi(uint64_t x, const AuxiliaryPrime& P);

enum class Orientation { gamma, gamma_inverse };

/* image of the level-n cyclotomic unit mod r, folded into an annihilator
 * alpha_r of (Z/3^e)[T]/(omega_n) (omega'_n when f == 1 mod 3) */
TruncatedPolynomial eta_image(const FundamentalDiscriminant& fd, unsigned n,
                              const AuxiliaryPrime& P, unsigned e,
                              Orientation orient = Orientation::gamma);

struct SaturationReport {
    unsigned primes_consumed = 0;
    unsigned stable_count = 0;
    bool saturated = false;
};

/* fold annihilator elements into one ideal; stop when `stability_window`
 * consecutive elements leave the canonical form unchanged */
std::pair<TruncatedLambdaIdeal, SaturationReport>
accumulate_ideal(const LevelContext& ctx, const std::vector<TruncatedPolynomial>& alphas,
                 unsigned stability_window);

/* the quotient ring context used for f at level n */
inline LevelContext level_context(const FundamentalDiscriminant& fd, unsigned n, unsigned e)
{
    return {e, n, fd.residue3 == 1 ? Variant::omega_prime : Variant::omega};
}

} // namespace lambda0

#endif
