#include "lambda0/lambda_ring.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace lambda0 {

std::vector<mpz_class> omega_exact(unsigned n, Variant variant)
{
    // (1+T)^{3^n} by iterated cubing
    std::vector<mpz_class> p{1, 1};
    for (unsigned i = 0; i < n; ++i) {
        std::vector<mpz_class> sq(2 * p.size() - 1, 0);
        for (size_t a = 0; a < p.size(); ++a)
            for (size_t b = 0; b < p.size(); ++b)
                sq[a + b] += p[a] * p[b];
        std::vector<mpz_class> cu(p.size() + sq.size() - 1, 0);
        for (size_t a = 0; a < sq.size(); ++a)
            for (size_t b = 0; b < p.size(); ++b)
                cu[a + b] += sq[a] * p[b];
        p = std::move(cu);
    }
    p[0] -= 1;
    if (variant == Variant::omega_prime) p.erase(p.begin());
    return p;
}

std::vector<uint64_t> omega_coeffs_mod(unsigned n, Variant variant, uint64_t mod3e)
{
    static std::mutex mtx;
    static std::map<std::tuple<unsigned, int, uint64_t>, std::vector<uint64_t>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_tuple(n, variant == Variant::omega ? 0 : 1, mod3e);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<uint64_t> p{1 % mod3e, 1 % mod3e};
    for (unsigned i = 0; i < n; ++i) {
        std::vector<uint64_t> sq(2 * p.size() - 1, 0);
        for (size_t a = 0; a < p.size(); ++a)
            for (size_t b = 0; b < p.size(); ++b)
                sq[a + b] = (sq[a + b] + mulmod(p[a], p[b], mod3e)) % mod3e;
        std::vector<uint64_t> cu(p.size() + sq.size() - 1, 0);
        for (size_t a = 0; a < sq.size(); ++a)
            for (size_t b = 0; b < p.size(); ++b)
                cu[a + b] = (cu[a + b] + mulmod(sq[a], p[b], mod3e)) % mod3e;
        p = std::move(cu);
    }
    p[0] = (p[0] + mod3e - 1 % mod3e) % mod3e;
    if (variant == Variant::omega_prime) p.erase(p.begin());
    cache[key] = p;
    return p;
}

std::vector<uint64_t> poly_rem_monic(std::vector<uint64_t> f, const std::vector<uint64_t>& g,
                                     uint64_t mod3e)
{
    if (g.empty() || g.back() != 1 % mod3e)
        throw std::invalid_argument("poly_rem_monic: divisor not monic");
    size_t dg = g.size() - 1;
    if (dg == 0) return {};
    while (f.size() > dg) {
        uint64_t c = f.back();
        f.pop_back();
        if (c == 0) continue;
        size_t off = f.size() - dg;
        for (size_t i = 0; i < dg; ++i) {
            uint64_t s = mulmod(c, g[i], mod3e);
            f[off + i] = (f[off + i] + mod3e - s) % mod3e;
        }
    }
    f.resize(dg, 0);
    return f;
}

TruncatedPolynomial poly_in_context(const LevelContext& ctx, const std::vector<int64_t>& coeffs)
{
    uint64_t m = ctx.modulus();
    std::vector<uint64_t> f(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) {
        int64_t c = coeffs[i] % static_cast<int64_t>(m);
        if (c < 0) c += static_cast<int64_t>(m);
        f[i] = static_cast<uint64_t>(c);
    }
    auto g = omega_coeffs_mod(ctx.n, ctx.variant, m);
    g.back() = 1; // monic lift
    return {ctx, poly_rem_monic(std::move(f), g, m)};
}

TruncatedPolynomial poly_in_context(const LevelContext& ctx, const std::vector<mpz_class>& coeffs)
{
    uint64_t m = ctx.modulus();
    std::vector<uint64_t> f(coeffs.size());
    mpz_class t;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        t = coeffs[i] % static_cast<unsigned long>(m);
        if (t < 0) t += static_cast<unsigned long>(m);
        f[i] = t.get_ui();
    }
    auto g = omega_coeffs_mod(ctx.n, ctx.variant, m);
    g.back() = 1;
    return {ctx, poly_rem_monic(std::move(f), g, m)};
}

void mul_by_T(const LevelContext& ctx, std::vector<uint64_t>& coeff)
{
    size_t d = ctx.deg();
    if (d == 0) return;
    uint64_t m = ctx.modulus();
    auto g = omega_coeffs_mod(ctx.n, ctx.variant, m);
    uint64_t top = coeff[d - 1];
    for (size_t i = d - 1; i > 0; --i) coeff[i] = coeff[i - 1];
    coeff[0] = 0;
    if (top) {
        for (size_t i = 0; i < d; ++i) {
            uint64_t s = mulmod(top, g[i], m);
            coeff[i] = (coeff[i] + m - s) % m;
        }
    }
}

TruncatedPolynomial poly_mul(const TruncatedPolynomial& a, const TruncatedPolynomial& b)
{
    if (!(a.ctx == b.ctx)) throw std::invalid_argument("poly_mul: context mismatch");
    const LevelContext& ctx = a.ctx;
    size_t d = ctx.deg();
    uint64_t m = ctx.modulus();
    if (d == 0) return {ctx, {}};
    std::vector<uint64_t> prod(2 * d - 1, 0);
    for (size_t i = 0; i < d; ++i) {
        if (a.coeff[i] == 0) continue;
        for (size_t j = 0; j < d; ++j)
            prod[i + j] = (prod[i + j] + mulmod(a.coeff[i], b.coeff[j], m)) % m;
    }
    auto g = omega_coeffs_mod(ctx.n, ctx.variant, m);
    g.back() = 1;
    return {ctx, poly_rem_monic(std::move(prod), g, m)};
}

std::vector<std::vector<uint64_t>> one_plus_T_powers(const LevelContext& ctx, size_t count)
{
    size_t d = ctx.deg();
    uint64_t m = ctx.modulus();
    std::vector<std::vector<uint64_t>> pows;
    pows.reserve(count);
    std::vector<uint64_t> cur(d, 0);
    if (d > 0) cur[0] = 1 % m;
    for (size_t i = 0; i < count; ++i) {
        pows.push_back(cur);
        // multiply by (1+T)
        std::vector<uint64_t> shifted = cur;
        mul_by_T(ctx, shifted);
        for (size_t j = 0; j < d; ++j) cur[j] = (cur[j] + shifted[j]) % m;
    }
    return pows;
}

TruncatedPolynomial involute(const TruncatedPolynomial& p)
{
    const LevelContext& ctx = p.ctx;
    size_t d = ctx.deg();
    uint64_t m = ctx.modulus();
    if (d == 0) return p;
    size_t q = pow3(ctx.n);
    // (1+T)^{-1} = (1+T)^{3^n - 1} in both quotient rings
    auto pows = one_plus_T_powers(ctx, q);
    TruncatedPolynomial s{ctx, pows[q - 1]};
    s.coeff[0] = (s.coeff[0] + m - 1 % m) % m;
    // Horner
    TruncatedPolynomial acc{ctx, std::vector<uint64_t>(d, 0)};
    for (size_t i = d; i-- > 0;) {
        acc = poly_mul(acc, s);
        acc.coeff[0] = (acc.coeff[0] + p.coeff[i]) % m;
    }
    return acc;
}

} // namespace lambda0
