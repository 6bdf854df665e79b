#include "lambda0/annihilator.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace lambda0 {

static uint64_t primitive_root(uint64_t r)
{
    auto fac = prime_factors_u64(r - 1);
    for (uint64_t g = 2;; ++g) {
        bool ok = true;
        for (uint64_t p : fac) {
            if (powmod(g, (r - 1) / p, r) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
}

std::vector<AuxiliaryPrime> find_aux_primes(const FundamentalDiscriminant& fd, unsigned e,
                                            unsigned n, unsigned count, uint64_t cap)
{
    if (e < n + 1) throw std::invalid_argument("find_aux_primes: need e >= n + 1");
    uint64_t M = pow3(e) * fd.fprime;
    std::vector<AuxiliaryPrime> out;
    for (uint64_t k = 1; k <= cap && out.size() < count; ++k) {
        uint64_t r = k * M + 1;
        if (!is_prime_u64(r)) continue;
        AuxiliaryPrime P;
        P.r = r;
        P.M = M;
        P.e = e;
        P.g = primitive_root(r);
        P.chi_base = powmod(P.g, (r - 1) / pow3(e), r);
        out.push_back(P);
    }
    if (out.size() < count)
        throw std::runtime_error("find_aux_primes: search horizon exceeded");
    return out;
}

uint64_t chi(uint64_t x, const AuxiliaryPrime& P)
{
    const uint64_t r = P.r, q = pow3(P.e);
    if (x % r == 0) throw std::invalid_argument("chi: zero residue");
    uint64_t y = powmod(x, (r - 1) / q, r);
    // digit peeling in the cyclic group <chi_base> of order 3^e
    uint64_t z = powmod(P.chi_base, q / 3, r); // cube root of unity
    uint64_t z2 = mulmod(z, z, r);
    uint64_t t = 0;
    uint64_t ginv = powmod(P.chi_base, r - 2, r);
    for (unsigned i = 0; i < P.e; ++i) {
        uint64_t cur = mulmod(y, powmod(ginv, t, r), r);
        uint64_t h = powmod(cur, q / pow3(i + 1), r);
        uint64_t d;
        if (h == 1)
            d = 0;
        else if (h == z)
            d = 1;
        else if (h == z2)
            d = 2;
        else
            throw std::logic_error("chi: residue outside the character image");
        t += d * pow3(i);
    }
    return t % q;
}

TruncatedPolynomial eta_image(const FundamentalDiscriminant& fd, unsigned n,
                              const AuxiliaryPrime& P, unsigned e, Orientation orient)
{
    if (P.e != e || P.M != pow3(e) * fd.fprime)
        throw std::invalid_argument("eta_image: prime incompatible with (f, e)");
    if (e < n + 1) throw std::invalid_argument("eta_image: need e >= n + 1");

    const uint64_t r = P.r;
    const uint64_t t3 = pow3(n + 1);
    const uint64_t m = t3 * fd.fprime;
    const size_t nn = pow3(n);
    const uint64_t w = powmod(P.g, (r - 1) / m, r);
    assert(w != 1);

    // quadratic character table, indexed by residue mod f (0 = not coprime)
    std::vector<int8_t> chi_f(fd.f);
    for (uint64_t a = 0; a < fd.f; ++a)
        chi_f[a] = static_cast<int8_t>(kronecker(static_cast<long long>(fd.f),
                                                 static_cast<long long>(a)));

    // 3-part coset index: x == +-c^j (mod 3^{n+1}), c = 4 or 4^{-1}
    uint64_t c = 4 % t3;
    if (orient == Orientation::gamma_inverse) c = invmod(c, t3);
    std::vector<int32_t> dlog(t3, -1);
    {
        uint64_t p = 1;
        for (size_t j = 0; j < nn; ++j) {
            dlog[p] = static_cast<int32_t>(j);
            dlog[t3 - p] = static_cast<int32_t>(j);
            p = mulmod(p, c, t3);
        }
    }

    // single pass over x = 1..m-1 with an incremental power of w:
    // bucket[s][j] accumulates prod (1 - w^x) over the coset (chi_f = (-1)^s,
    // 3-part index j); no per-factor exponentiation
    std::vector<uint64_t> bucket[2];
    bucket[0].assign(nn, 1);
    bucket[1].assign(nn, 1);
    uint64_t wpow = 1;
    for (uint64_t x = 1; x < m; ++x) {
        wpow = mulmod(wpow, w, r);
        if (x % 3 == 0) continue;
        int8_t s = chi_f[x % fd.f];
        if (s == 0) continue;
        int32_t j = dlog[x % t3];
        assert(j >= 0);
        uint64_t factor = (r + 1 - wpow) % r;
        assert(factor != 0);
        auto& b = bucket[s == 1 ? 0 : 1][static_cast<size_t>(j)];
        b = mulmod(b, factor, r);
    }

    // u_j = (numerator coset, chi_f = -1) / (denominator coset, chi_f = +1);
    // alpha_r = sum_j chi(u_j) (1+T)^{-j} in the omega_n ring, then reduced
    LevelContext octx{e, n, Variant::omega};
    const uint64_t mod3e = pow3(e);
    auto pows = one_plus_T_powers(octx, nn);
    std::vector<uint64_t> alpha(nn, 0);
    for (size_t j = 0; j < nn; ++j) {
        uint64_t u = mulmod(bucket[1][j], invmod(bucket[0][j], r), r);
        uint64_t cj = chi(u, P);
        if (cj == 0) continue;
        const auto& pw = pows[(nn - j) % nn];
        for (size_t i = 0; i < nn; ++i)
            alpha[i] = (alpha[i] + mulmod(cj, pw[i], mod3e)) % mod3e;
    }

    LevelContext ctx = level_context(fd, n, e);
    if (ctx.variant == Variant::omega) return {ctx, std::move(alpha)};
    // f == 1 (mod 3): the norm of eta is 1, so alpha has augmentation 0 and
    // lies in T * (group ring); the coordinate on the omega'-ring is alpha/T
    // (ker N is a free rank-1 module over Z[G]/(N) via multiplication by T)
    if (alpha[0] != 0)
        throw std::logic_error("eta_image: nonzero augmentation in the norm-1 case");
    return {ctx, std::vector<uint64_t>(alpha.begin() + 1, alpha.end())};
}

std::pair<TruncatedLambdaIdeal, SaturationReport>
accumulate_ideal(const LevelContext& ctx, const std::vector<TruncatedPolynomial>& alphas,
                 unsigned stability_window)
{
    TruncatedLambdaIdeal I(ctx);
    SaturationReport rep;
    for (const auto& a : alphas) {
        auto before = I.basis();
        I.add_generator(a);
        ++rep.primes_consumed;
        if (I.basis() == before)
            ++rep.stable_count;
        else
            rep.stable_count = 0;
        if (rep.stable_count >= stability_window) {
            rep.saturated = true;
            break;
        }
    }
    return {std::move(I), rep};
}

} // namespace lambda0
