#include "lambda0/util.hpp"

#include <algorithm>
#include <cmath>

namespace lambda0 {

uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m)
{
    if (m == 1) return 0;
    uint64_t r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

uint64_t gcd_u64(uint64_t a, uint64_t b)
{
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

uint64_t invmod(uint64_t a, uint64_t m)
{
    int64_t t = 0, newt = 1;
    uint64_t r = m, newr = a % m;
    while (newr != 0) {
        uint64_t q = r / newr;
        int64_t tmpt = t - static_cast<int64_t>(q) * newt;
        t = newt;
        newt = tmpt;
        uint64_t tmpr = r - q * newr;
        r = newr;
        newr = tmpr;
    }
    if (r != 1) throw std::invalid_argument("invmod: not invertible");
    return t < 0 ? static_cast<uint64_t>(t + static_cast<int64_t>(m)) : static_cast<uint64_t>(t);
}

uint64_t isqrt_u64(uint64_t n)
{
    if (n == 0) return 0;
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

static bool miller_rabin(uint64_t n, uint64_t a)
{
    if (a % n == 0) return true;
    uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

bool is_prime_u64(uint64_t n)
{
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    // this witness set is deterministic below 2^64
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (!miller_rabin(n, a)) return false;
    }
    return true;
}

static uint64_t pollard_rho(uint64_t n)
{
    if (n % 2 == 0) return 2;
    for (uint64_t c = 1;; ++c) {
        uint64_t x = 2, y = 2, d = 1;
        auto f = [&](uint64_t v) { return (mulmod(v, v, n) + c) % n; };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

static void factor_rec(uint64_t n, std::vector<uint64_t>& out)
{
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    uint64_t d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

std::vector<uint64_t> prime_factors_u64(uint64_t n)
{
    std::vector<uint64_t> out;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull}) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) factor_rec(n, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_squarefree_u64(uint64_t n)
{
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return false;
        }
    }
    return true;
}

int kronecker(long long a, long long n)
{
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0) return 0;
    int v = 0;
    while ((n & 1) == 0) { n >>= 1; ++v; }
    int k = 1;
    if (v & 1) {
        long long a8 = ((a % 8) + 8) % 8;
        if (a8 == 3 || a8 == 5) k = -1;
    }
    if (n < 0) {
        n = -n;
        if (a < 0) k = -k;
    }
    // now n odd, n > 0; quadratic reciprocity loop
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        v = 0;
        while ((a & 1) == 0) { a >>= 1; ++v; }
        if (v & 1) {
            long long n8 = n % 8;
            if (n8 == 3 || n8 == 5) k = -k;
        }
        if ((a % 4) == 3 && (n % 4) == 3) k = -k;
        long long t = n % a;
        n = a;
        a = t;
    }
    return n == 1 ? k : 0;
}

} // namespace lambda0
