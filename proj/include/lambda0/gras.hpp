#ifndef LAMBDA0_GRAS_HPP
#define LAMBDA0_GRAS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "lambda0/annihilator.hpp"
#include "lambda0/ideal.hpp"
#include "lambda0/quadfield.hpp"

namespace lambda0 {

using real = boost::multiprecision::mpfr_float;

/* Logs of the real conjugates of the level-n cyclotomic unit eta_n.
 * V[s0][j0] = log |eta^{sigma^{s0} gamma^{j0}}| under the base embedding
 * sending sqrt(f) to +sqrt(f) and zeta_{3^{n+1}} to exp(2 pi i/3^{n+1});
 * gamma acts on zeta by the same generator c (4 or 4^{-1}) used to label
 * the annihilator coordinates. */
struct RealEmbeddingSheet {
    uint64_t f = 0;
    unsigned n = 0;
    unsigned bits = 0;
    Orientation orient = Orientation::gamma;
    std::vector<real> V[2];
    double err_log2 = 0;  // absolute error bound (log2) per entry
};

/* throws precision_error when the unit-norm sanity check fails */
RealEmbeddingSheet embed_eta(const FundamentalDiscriminant& fd, unsigned n, unsigned bits,
                             Orientation orient = Orientation::gamma);

enum class PowerVerdict { certified_yes, certified_no, inconclusive };

struct PowerCertificate {
    std::vector<int64_t> g;   // group-ring exponent: sum g_j gamma^j
    unsigned k = 0;           // question: is eta^g a 3^k-th power of a unit?
    PowerVerdict verdict = PowerVerdict::inconclusive;
    unsigned denom_pow3 = 0;  // denominator 3^d of the integral witness (yes)
    double margin = 0;        // yes: -log2 of the norm gap; no: margin / tolerance
    unsigned bits_used = 0;
};

struct GrasConfig {
    unsigned bits_start = 384;
    unsigned bits_max = 1u << 16;
    unsigned denom_pow3_max = 3;  // try denominators 1, 3, 9, 27
    unsigned level_cap = 2;       // exact algebra has degree 2 * 3^n
    Orientation orient = Orientation::gamma;
};

/* Decide whether eta_n^{g(gamma)} is a 3^k-th power in the unit group.
 * A yes verdict carries an exact integer identity, verified by a norm
 * inequality; a no verdict means the unique real-analytic candidate root
 * stays away from the integer lattice by 2^16 times the error bound, for
 * every admissible denominator.  Upgrades `sheet` in place when more
 * precision is needed. */
PowerCertificate is_power(const FundamentalDiscriminant& fd, RealEmbeddingSheet& sheet,
                          std::vector<int64_t> g, unsigned k, const GrasConfig& cfg);

enum class VerifyVerdict { verified, refuted, inconclusive };

struct VerifyReport {
    VerifyVerdict verdict = VerifyVerdict::inconclusive;
    unsigned v = 0;  // duality exponent: the quotient ring is mod (3^v, omega)
    std::vector<PowerCertificate> tests;
    std::string note;
};

/* Certify that the accumulated annihilator ideal U at level n is the full
 * annihilator, i.e. that the reported quotient order is also a lower bound
 * for #C_n.  Every generator w = 3^s g of the annihilator of U modulo
 * (3^v, omega_n) pairs with the unit side: U is exact iff eta^{g(gamma)}
 * is a 3^{v-s}-th power of a unit for each of them.  All tests yes =>
 * verified; any no => refuted (U is strictly too small, not saturated);
 * otherwise inconclusive. */
VerifyReport verify_ideal(const FundamentalDiscriminant& fd, const TruncatedLambdaIdeal& U,
                          const GrasConfig& cfg);

} // namespace lambda0

#endif
