#include "lambda0/quadfield.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <set>

namespace lambda0 {

bool is_fundamental_discriminant(uint64_t f)
{
    if (f < 2) return false;
    uint64_t s = isqrt_u64(f);
    if (s * s == f) return false;
    if (f % 4 == 1) return is_squarefree_u64(f);
    if (f % 4 == 0) {
        uint64_t d = f / 4;
        return (d % 4 == 2 || d % 4 == 3) && is_squarefree_u64(d);
    }
    return false;
}

FundamentalDiscriminant validate_discriminant(uint64_t f)
{
    if (!is_fundamental_discriminant(f))
        throw std::invalid_argument("not a real quadratic fundamental discriminant: " +
                                    std::to_string(f));
    FundamentalDiscriminant fd;
    fd.f = f;
    fd.residue3 = static_cast<unsigned>(f % 3);
    fd.fprime = fd.residue3 == 0 ? f / 3 : f;
    return fd;
}

/* ---- fundamental unit: continued fraction of (b0 + sqrt(f)) / 2 ---- */

QuadraticUnit fundamental_unit(uint64_t f)
{
    long long D = static_cast<long long>(f);
    long long s = static_cast<long long>(isqrt_u64(f));
    long long b0 = s;
    if ((b0 ^ D) & 1) --b0; // b0 = largest integer <= sqrt(f) with b0 == f (mod 2)

    long long P = b0, Q = 2;
    mpz_class qm2 = 1, qm1 = 0; // convergent denominators q_{-2}, q_{-1}
    unsigned ell = 0;
    while (true) {
        long long a = (P + s) / Q; // floor((P + sqrt(D)) / Q), Q > 0 throughout
        mpz_class qn = mpz_class(static_cast<long>(a)) * qm1 + qm2;
        qm2 = qm1;
        qm1 = qn;
        ++ell;
        P = a * Q - P;
        Q = (D - P * P) / Q;
        if (P == b0 && Q == 2) break;
    }
    // after ell partial quotients qm1 = q_{ell-1}, qm2 = q_{ell-2}; the
    // automorphism matrix of the purely periodic surd gives the unit
    QuadraticUnit u;
    u.y = qm1;
    u.x = qm1 * static_cast<long>(b0) + 2 * qm2;
    u.norm = (ell % 2) ? -1 : 1;
    u.period = ell;
    assert(u.x * u.x - mpz_class(f) * u.y * u.y == 4 * u.norm);
    return u;
}

QuadraticUnit unit_mul(const QuadraticUnit& a, const QuadraticUnit& b, uint64_t f)
{
    QuadraticUnit r;
    r.x = (a.x * b.x + mpz_class(f) * a.y * b.y) / 2;
    r.y = (a.x * b.y + a.y * b.x) / 2;
    r.norm = a.norm * b.norm;
    return r;
}

/* ---- reduced indefinite binary quadratic forms ---- */

bool form_is_reduced(const QuadForm& F, long long s)
{
    long long aa = llabs(F.a);
    return F.b > 0 && F.b <= s && F.b + 2 * aa >= s + 1 && 2 * aa - F.b <= s;
}

QuadForm form_rho(const QuadForm& F, long long D, long long s)
{
    long long t = 2 * llabs(F.c);
    long long b2;
    if (llabs(F.c) > s) {
        // normalization step: b2 == -b (mod t) in (-|c|, |c|]
        b2 = (-F.b) % t;
        if (b2 > t / 2) b2 -= t;
        if (b2 <= -t / 2) b2 += t;
    } else {
        // b2 == -b (mod t) in (s - t, s]
        b2 = s - (((s + F.b) % t + t) % t);
    }
    long long c2 = (b2 * b2 - D) / (4 * F.c);
    return {F.c, b2, c2};
}

QuadForm form_reduce(QuadForm F, long long D, long long s)
{
    for (int it = 0; it < 10000; ++it) {
        if (form_is_reduced(F, s)) return F;
        F = form_rho(F, D, s);
    }
    throw std::logic_error("form_reduce: no convergence");
}

static void egcd_ll(long long a, long long b, long long& g, long long& u, long long& v)
{
    if (b == 0) {
        g = llabs(a);
        u = a < 0 ? -1 : 1;
        v = 0;
        return;
    }
    long long g1, u1, v1;
    egcd_ll(b, a % b, g1, u1, v1);
    g = g1;
    u = v1;
    v = u1 - (a / b) * v1;
}

QuadForm form_compose(const QuadForm& F1, const QuadForm& F2, long long D, long long s)
{
    long long a1 = F1.a, b1 = F1.b;
    assert(a1 > 0);
    // find a form equivalent to F2 whose leading coefficient is prime to a1
    long long x = 0, y = 0, a2p = 0;
    bool found = false;
    for (long long bound = 1; bound <= 64 && !found; ++bound) {
        for (long long yy = 0; yy <= bound && !found; ++yy) {
            for (long long xx = -bound; xx <= bound && !found; ++xx) {
                if (std::max(llabs(xx), yy) != bound) continue;
                if (std::gcd(llabs(xx), yy) != 1) continue;
                long long val = F2.a * xx * xx + F2.b * xx * yy + F2.c * yy * yy;
                if (val == 0) continue;
                if (std::gcd(llabs(val), a1) == 1) {
                    x = xx;
                    y = yy;
                    a2p = val;
                    found = true;
                }
            }
        }
    }
    if (!found) throw std::logic_error("form_compose: no coprime representative found");

    // complete (x, y) to a unimodular matrix [[x, z], [y, w]]
    long long g, u, v;
    egcd_ll(x, y, g, u, v); // x u + y v = 1
    long long w = u, z = -v;
    long long b2p = 2 * (F2.a * x * z + F2.c * y * w) + F2.b * (x * w + y * z);

    // concordant triple (a1, b1) and (a2p, b2p): CRT for the middle coefficient
    long long m2 = llabs(a2p);
    long long half = ((b2p - b1) / 2 % m2 + m2) % m2;
    long long k = m2 == 1 ? 0
                          : static_cast<long long>(mulmod(
                                static_cast<uint64_t>(half),
                                invmod(static_cast<uint64_t>((a1 % m2 + m2) % m2),
                                       static_cast<uint64_t>(m2)),
                                static_cast<uint64_t>(m2)));
    long long a3 = a1 * a2p;
    long long B = b1 + 2 * a1 * k;
    B = ((B % (2 * llabs(a3))) + 2 * llabs(a3)) % (2 * llabs(a3));
    __int128 num = static_cast<__int128>(B) * B - D;
    assert(num % (4 * static_cast<__int128>(a3)) == 0);
    long long c3 = static_cast<long long>(num / (4 * static_cast<__int128>(a3)));
    return form_reduce({a3, B, c3}, D, s);
}

NarrowClassGroup narrow_class_group(uint64_t f)
{
    NarrowClassGroup G;
    G.D = static_cast<long long>(f);
    G.s = static_cast<long long>(isqrt_u64(f));
    const long long D = G.D, s = G.s;

    std::set<QuadForm> forms;
    for (long long b = (D % 2) ? 1 : 2; b <= s; b += 2) {
        long long N = (D - b * b) / 4; // = -a c > 0
        for (long long d = 1; d * d <= N; ++d) {
            if (N % d) continue;
            for (long long a : {d, N / d}) {
                long long c = -(N / a);
                if (!form_is_reduced({a, b, c}, s)) continue;
                if (std::gcd(std::gcd(a, b), llabs(c)) != 1) continue;
                forms.insert({a, b, c});
                forms.insert({-a, b, -c});
            }
        }
    }

    G.sorted_.assign(forms.begin(), forms.end());
    G.cls_of_.assign(G.sorted_.size(), -1);
    std::map<QuadForm, int> index;
    for (size_t i = 0; i < G.sorted_.size(); ++i) index[G.sorted_[i]] = static_cast<int>(i);

    for (size_t i = 0; i < G.sorted_.size(); ++i) {
        if (G.cls_of_[i] >= 0) continue;
        int id = static_cast<int>(G.cycles.size());
        std::vector<QuadForm> cyc;
        QuadForm F = G.sorted_[i];
        do {
            auto it = index.find(F);
            assert(it != index.end());
            G.cls_of_[it->second] = id;
            cyc.push_back(F);
            F = form_rho(F, D, s);
        } while (!(F == G.sorted_[i]));
        // representative: smallest form with positive leading coefficient
        QuadForm rep{0, 0, 0};
        for (const auto& g : cyc)
            if (g.a > 0 && (rep.a == 0 || g < rep)) rep = g;
        G.reps.push_back(rep);
        G.cycles.push_back(std::move(cyc));
    }

    long long bp = s;
    if ((bp ^ D) & 1) --bp;
    QuadForm principal = form_reduce({1, bp, (bp * bp - D) / 4}, D, s);
    G.identity = G.cls(principal);
    return G;
}

int NarrowClassGroup::cls(const QuadForm& reduced) const
{
    auto it = std::lower_bound(sorted_.begin(), sorted_.end(), reduced);
    if (it == sorted_.end() || !(*it == reduced))
        throw std::logic_error("narrow_class_group: form not in reduced set");
    return cls_of_[it - sorted_.begin()];
}

int NarrowClassGroup::mul(int i, int j) const
{
    return cls(form_compose(reps[i], reps[j], D, s));
}

int NarrowClassGroup::pow_cls(int i, uint64_t k) const
{
    int r = identity, base = i;
    while (k) {
        if (k & 1) r = mul(r, base);
        base = mul(base, base);
        k >>= 1;
    }
    return r;
}

ClassGroupData class_group_3part(const FundamentalDiscriminant& fd)
{
    NarrowClassGroup G = narrow_class_group(fd.f);
    ClassGroupData out;
    out.h_narrow = G.order();
    out.unit_norm = fundamental_unit(fd.f).norm;
    out.h = out.unit_norm == -1 ? out.h_narrow : out.h_narrow / 2;
    out.h3 = val3(out.h_narrow); // 3-parts of narrow and wide groups agree

    uint64_t q = out.h_narrow / pow3(out.h3);
    std::set<int> sylow;
    for (size_t i = 0; i < G.order(); ++i) sylow.insert(G.pow_cls(static_cast<int>(i), q));

    // counts of elements killed by 3^k determine the cyclic decomposition
    std::vector<unsigned> m(out.h3 + 1, 0); // m[k] = log3 #{x : x^{3^k} = 1}
    for (int x : sylow) {
        unsigned k = 0;
        int y = x;
        while (y != G.identity) {
            y = G.pow_cls(y, 3);
            ++k;
        }
        for (unsigned j = k; j <= out.h3; ++j) ++m[j]; // provisional: raw counts
    }
    for (unsigned k = 0; k <= out.h3; ++k) m[k] = val3(m[k] ? m[k] : 1);
    std::vector<unsigned> d;
    for (unsigned k = 1; k <= out.h3; ++k) d.push_back(m[k] - m[k - 1]);
    for (unsigned i = 1; !d.empty() && i <= d[0]; ++i) {
        unsigned lam = 0;
        for (unsigned dk : d)
            if (dk >= i) ++lam;
        out.sylow3.push_back(lam);
    }
    return out;
}

/* ---- 3-adic logarithm ---- */

unsigned padic_log3_valuation(const FundamentalDiscriminant& fd, const QuadraticUnit& u,
                              unsigned e)
{
    if (fd.residue3 != 1)
        throw std::invalid_argument("padic_log3_valuation: needs f == 1 (mod 3)");
    unsigned E = e + 4, E2 = E + 4;
    mpz_class W = 1, ME = 1;
    for (unsigned i = 0; i < E2; ++i) W *= 3;
    for (unsigned i = 0; i < E; ++i) ME *= 3;

    // Hensel lift of sqrt(f), branch == 1 (mod 3): fixes the completion
    mpz_class sq = 1, mod = 3;
    for (unsigned k = 2; k <= E2; ++k) {
        mod *= 3;
        mpz_class r = ((sq * sq - fd.f) % mod + mod) % mod;
        if (r != 0) {
            mpz_class step = mod / 3;
            mpz_class t = (r / step) % 3;
            // solve t + 2*sq*c == 0 (mod 3)
            mpz_class inv2s;
            mpz_class two_s = 2 * sq % 3;
            inv2s = two_s == 1 ? 1 : 2;
            mpz_class c = ((3 - t) * inv2s) % 3;
            sq = (sq + c * step) % mod;
        }
    }

    mpz_class inv2;
    mpz_class two = 2;
    if (mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), W.get_mpz_t()) == 0)
        throw std::logic_error("padic_log3_valuation: internal");
    mpz_class alpha = (((u.x + u.y * sq) % W + W) % W) * inv2 % W;
    if (alpha % 3 == 0) throw std::invalid_argument("padic_log3_valuation: not a unit at 3");
    mpz_class w = alpha * alpha % W; // == 1 (mod 3) since alpha is a unit mod 3
    mpz_class z = (w - 1) % W;

    // log(w) = sum (-1)^{k+1} z^k / k; v_3(log u) = v_3(log w) (log u = log w / 2)
    mpz_class L = 0, zk = 1;
    unsigned K = e + 4;
    for (unsigned k = 1; k <= K; ++k) {
        zk = zk * z % W;
        unsigned t = 0;
        uint64_t kk = k;
        while (kk % 3 == 0) { kk /= 3; ++t; }
        mpz_class term = zk;
        for (unsigned i = 0; i < t; ++i) {
            assert(term % 3 == 0);
            term /= 3;
        }
        mpz_class ik, kz = kk;
        mpz_invert(ik.get_mpz_t(), kz.get_mpz_t(), W.get_mpz_t());
        term = term * ik % W;
        L = k % 2 ? mpz_class((L + term) % W) : mpz_class((L - term + W) % W);
    }
    L %= ME;
    if (L == 0) throw precision_error("padic_log3_valuation: valuation >= precision bound");
    unsigned v = 0;
    while (L % 3 == 0) { L /= 3; ++v; }
    if (v >= e) throw precision_error("padic_log3_valuation: valuation >= precision bound");
    return v;
}

} // namespace lambda0
