#include "doctest.h"

#include <vector>

#include "helpers.hpp"

#include "lambda0/annihilator.hpp"
#include "lambda0/quadfield.hpp"

using namespace lambda0;

namespace {

TruncatedLambdaIdeal accumulate(const FundamentalDiscriminant& fd, unsigned n, unsigned e,
                                unsigned nprimes, Orientation o, SaturationReport* rep = nullptr)
{
    auto primes = find_aux_primes(fd, e, n, nprimes);
    std::vector<TruncatedPolynomial> alphas;
    for (const auto& P : primes) alphas.push_back(eta_image(fd, n, P, e, o));
    auto [I, r] = accumulate_ideal(level_context(fd, n, e), alphas, 6);
    if (rep) *rep = r;
    return I;
}

} // namespace

TEST_SUITE_BEGIN("annihilator");

TEST_CASE("auxiliary primes: congruence, primality, order")
{
    auto fd = validate_discriminant(61629);
    for (unsigned e : {2u, 4u}) {
        auto ps = find_aux_primes(fd, e, 0, 10);
        REQUIRE(ps.size() == 10);
        uint64_t last = 0;
        for (const auto& P : ps) {
            CHECK(is_prime_u64(P.r));
            CHECK(P.M == pow3(e) * fd.fprime);
            CHECK(P.r % P.M == 1);
            CHECK(P.r > last);
            last = P.r;
            // g is a primitive root: g^((r-1)/q) != 1 for the prime q = 3
            CHECK(powmod(P.g, (P.r - 1) / 3, P.r) != 1);
        }
    }
}

TEST_CASE("chi is a surjective homomorphism onto Z/3^e")
{
    auto fd = validate_discriminant(8);
    unsigned e = 3;
    auto ps = find_aux_primes(fd, e, 0, 3);
    for (const auto& P : ps) {
        uint64_t m = pow3(e);
        CHECK(chi(1, P) == 0);
        // g^((r-1)/3^e) = chi_base, so the primitive root has discrete log 1
        CHECK(chi(P.g, P) == 1);
        // multiplicativity on a sample grid
        for (uint64_t x = 2; x < 40; ++x)
            for (uint64_t y = 3; y < 40; y += 7) {
                if (x % P.r == 0 || y % P.r == 0) continue;
                CHECK(chi(mulmod(x, y, P.r), P) == (chi(x, P) + chi(y, P)) % m);
            }
        // cubes land in 3 Z/3^e
        CHECK(chi(powmod(5, 3, P.r), P) % 3 == 0);
    }
}

TEST_CASE("eta images: augmentation vanishes in the f = 1 mod 3 case")
{
    auto fd = validate_discriminant(13);
    unsigned n = 1, e = 3;
    auto ps = find_aux_primes(fd, e, n, 4);
    for (const auto& P : ps) {
        auto a = eta_image(fd, n, P, e);
        CHECK(a.ctx.variant == Variant::omega_prime);
        CHECK(a.coeff.size() == pow3(n) - 1);
    }
    auto fe = validate_discriminant(8);
    auto qs = find_aux_primes(fe, e, n, 4);
    for (const auto& P : qs) {
        auto a = eta_image(fe, n, P, e);
        CHECK(a.ctx.variant == Variant::omega);
        CHECK(a.coeff.size() == pow3(n));
    }
}

TEST_CASE("accumulated ideal is independent of the auxiliary primes used")
{
    auto fd = validate_discriminant(61629);
    unsigned n = 1, e = 4;
    auto ps = find_aux_primes(fd, e, n, 30);
    REQUIRE(ps.size() == 30);
    std::vector<TruncatedPolynomial> first, second;
    for (size_t i = 0; i < ps.size(); ++i)
        (i % 2 ? second : first).push_back(eta_image(fd, n, ps[i], e));
    auto ctx = level_context(fd, n, e);
    auto [I1, r1] = accumulate_ideal(ctx, first, 5);
    auto [I2, r2] = accumulate_ideal(ctx, second, 5);
    CHECK(r1.saturated);
    CHECK(r2.saturated);
    CHECK(I1 == I2);
}

TEST_CASE("prefix of the prime list yields a sub-ideal; full run is deterministic")
{
    auto fd = validate_discriminant(29);
    unsigned n = 1, e = 3;
    auto ps = find_aux_primes(fd, e, n, 20);
    std::vector<TruncatedPolynomial> alphas;
    for (const auto& P : ps) alphas.push_back(eta_image(fd, n, P, e));
    auto ctx = level_context(fd, n, e);
    auto [full, rf] = accumulate_ideal(ctx, alphas, 8);
    std::vector<TruncatedPolynomial> prefix(alphas.begin(), alphas.begin() + 4);
    auto [part, rp] = accumulate_ideal(ctx, prefix, 8);
    for (const auto& g : part.generators_symmetric())
        CHECK(full.contains(P(ctx, g)));
    auto [again, ra] = accumulate_ideal(ctx, alphas, 8);
    CHECK(again == full);
    CHECK(ra.primes_consumed == rf.primes_consumed);
}

TEST_CASE("the two orientations produce involution-related ideals")
{
    for (uint64_t f : {61629ull, 29ull, 13ull}) {
        auto fd = validate_discriminant(f);
        unsigned n = 1, e = 4;
        auto A = accumulate(fd, n, e, 25, Orientation::gamma);
        auto B = accumulate(fd, n, e, 25, Orientation::gamma_inverse);
        CHECK(A.involution() == B);
        CHECK(A.log3_index() == B.log3_index());
    }
}

TEST_CASE("level-0 saturated order equals the 3-part of the class number")
{
    // desk-scale spot check of the cardinality equality used by the driver
    for (uint64_t f : {5ull, 8ull, 12ull, 29ull, 60ull, 257ull, 321ull, 473ull, 1016ull}) {
        auto fd = validate_discriminant(f);
        REQUIRE(fd.residue3 != 1);
        SaturationReport rep;
        auto I = accumulate(fd, 0, 3, 30, Orientation::gamma_inverse, &rep);
        CHECK(rep.saturated);
        CHECK(I.log3_index() == class_group_3part(fd).h3);
    }
}

TEST_CASE("frozen level-1 annihilator ideals of published fields")
{
    // f = 61629: C_1 = Lambda/(T^3, 3), order 27
    auto fd = validate_discriminant(61629);
    auto I = accumulate(fd, 1, 3, 30, Orientation::gamma_inverse);
    auto ctx = level_context(fd, 1, 3);
    CHECK(I == TruncatedLambdaIdeal::from_generators(
                   ctx, {P(ctx, {0, 0, 0, 1}), P(ctx, {3})}));
    // f = 60513 stabilizes at level 2 with J = (T^3+3, 3T, 9); the level-1
    // annihilator must be the image of that module one level down
    auto fe = validate_discriminant(60513);
    auto J = accumulate(fe, 1, 4, 30, Orientation::gamma_inverse);
    auto c2 = level_context(fe, 2, 4);
    auto G2 = TruncatedLambdaIdeal::from_generators(
        c2, {P(c2, {3, 0, 0, 1}), P(c2, {0, 3}),
             P(c2, {9})});
    CHECK(J == G2.reduce_to_level(1));
}

TEST_SUITE_END();
