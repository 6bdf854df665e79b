#include "lambda0/gras.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include <mpfr.h>

namespace lambda0 {

static void set_precision_bits(unsigned bits)
{
    real::default_precision(static_cast<unsigned>(bits * 0.3011) + 4);
}

static real const_pi()
{
    real p;
    mpfr_const_pi(p.backend().data(), MPFR_RNDN);
    return p;
}

static real to_real(const mpz_class& z)
{
    real r;
    mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
    return r;
}

static double log2_of(const real& x)
{
    if (x <= 0) return -1e18;
    real l;
    mpfr_log2(l.backend().data(), x.backend().data(), MPFR_RNDN);
    return l.convert_to<double>();
}

RealEmbeddingSheet embed_eta(const FundamentalDiscriminant& fd, unsigned n, unsigned bits,
                             Orientation orient)
{
    set_precision_bits(bits);
    const uint64_t t3 = pow3(n + 1);
    const uint64_t m = t3 * fd.fprime;
    const size_t nn = pow3(n);

    std::vector<int8_t> chi_f(fd.f);
    for (uint64_t a = 0; a < fd.f; ++a)
        chi_f[a] = static_cast<int8_t>(kronecker(static_cast<long long>(fd.f),
                                                 static_cast<long long>(a)));

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

    // L[s][j] = sum of log(2 sin(pi x / m)) = log |1 - zeta^x| over the coset
    // with chi_f(x) = (-1)^s and x = +-c^j (mod 3^{n+1})
    const real pi = const_pi();
    const real step = pi / static_cast<unsigned long>(m);
    std::vector<real> L[2];
    L[0].assign(nn, real(0));
    L[1].assign(nn, real(0));
    // x and m - x give the same log-sine and land in the same coset
    // (the character is even and -1 fixes the +-c^j labels), so sum the
    // lower half and double
    for (uint64_t x = 1; 2 * x < m; ++x) {
        if (x % 3 == 0) continue;
        int8_t s = chi_f[x % fd.f];
        if (s == 0) continue;
        int32_t j = dlog[x % t3];
        assert(j >= 0);
        real val = log(2 * sin(step * static_cast<unsigned long>(x)));
        L[s == 1 ? 0 : 1][static_cast<size_t>(j)] += val;
    }
    for (int s = 0; s < 2; ++s)
        for (size_t j = 0; j < nn; ++j) L[s][j] *= 2;

    RealEmbeddingSheet sheet;
    sheet.f = fd.f;
    sheet.n = n;
    sheet.bits = bits;
    sheet.orient = orient;
    sheet.err_log2 = -static_cast<double>(bits) + 3 + std::log2(static_cast<double>(m)) +
                     std::log2(std::log2(static_cast<double>(m)) + 2);

    // the full product of 1 - zeta^x over primitive x is 1 (m is divisible by
    // two distinct primes), so the log sums must cancel
    real total = 0;
    for (int s = 0; s < 2; ++s)
        for (size_t j = 0; j < nn; ++j) total += L[s][j];
    if (abs(total).convert_to<double>() > std::exp2(sheet.err_log2 + 2) &&
        abs(total).convert_to<double>() > 1e-300)
        throw precision_error("embed_eta: unit-norm sanity check failed");

    // eta = xi^{sigma - 1} where xi is the coset product at the identity
    sheet.V[0].resize(nn);
    sheet.V[1].resize(nn);
    for (size_t j = 0; j < nn; ++j) {
        sheet.V[0][j] = L[1][j] - L[0][j];
        sheet.V[1][j] = L[0][j] - L[1][j];
    }
    return sheet;
}

/* ---- exact arithmetic in Z[theta, rho], theta = zeta + zeta^{-1} for a
 * primitive 3^{n+1}-th root zeta, rho = (f + sqrt f)/2 ---- */

namespace {

struct ExactRing {
    size_t nn = 1;                // [Q(theta) : Q] = 3^n
    uint64_t f = 0;
    mpz_class cterm;              // rho^2 = f rho - cterm
    std::vector<mpz_class> mp;    // monic minimal polynomial of theta
};

using Elt = std::vector<mpz_class>;  // coeff[i + nn*l] of theta^i rho^l

ExactRing make_ring(uint64_t f, unsigned n)
{
    ExactRing R;
    R.nn = pow3(n);
    R.f = f;
    R.cterm = mpz_class(static_cast<unsigned long>(f)) *
              (mpz_class(static_cast<unsigned long>(f)) - 1) / 4;
    // Chebyshev-style recurrence: V_0 = 2, V_1 = x, V_{k+1} = x V_k - V_{k-1};
    // V_{3^n}(theta) = zeta^{3^n} + zeta^{-3^n} = -1, so minpoly = V_{3^n} + 1
    std::vector<mpz_class> vm1{2}, v{0, 1};
    for (size_t k = 1; k < R.nn; ++k) {
        std::vector<mpz_class> nx(v.size() + 1);
        for (size_t i = 0; i < v.size(); ++i) nx[i + 1] = v[i];
        for (size_t i = 0; i < vm1.size(); ++i) nx[i] -= vm1[i];
        vm1 = std::move(v);
        v = std::move(nx);
    }
    v[0] += 1;
    R.mp = std::move(v);
    assert(R.mp.size() == R.nn + 1 && R.mp[R.nn] == 1);
    return R;
}

Elt ring_mul(const ExactRing& R, const Elt& a, const Elt& b)
{
    const size_t nn = R.nn;
    const size_t w = 2 * nn - 1;
    std::vector<std::vector<mpz_class>> tmp(3, std::vector<mpz_class>(w));
    for (size_t la = 0; la < 2; ++la)
        for (size_t lb = 0; lb < 2; ++lb)
            for (size_t i = 0; i < nn; ++i) {
                if (a[i + nn * la] == 0) continue;
                for (size_t j = 0; j < nn; ++j)
                    tmp[la + lb][i + j] += a[i + nn * la] * b[j + nn * lb];
            }
    for (size_t d = 0; d < w; ++d) {
        if (tmp[2][d] == 0) continue;
        tmp[1][d] += static_cast<unsigned long>(R.f) * tmp[2][d];
        tmp[0][d] -= R.cterm * tmp[2][d];
    }
    for (size_t l = 0; l < 2; ++l)
        for (size_t d = w; d-- > nn;) {
            if (tmp[l][d] == 0) continue;
            mpz_class q = tmp[l][d];
            for (size_t t = 0; t <= nn; ++t) tmp[l][d - nn + t] -= q * R.mp[t];
            assert(tmp[l][d] == 0);
        }
    Elt out(2 * nn);
    for (size_t l = 0; l < 2; ++l)
        for (size_t i = 0; i < nn; ++i) out[i + nn * l] = tmp[l][i];
    return out;
}

Elt ring_pow3k(const ExactRing& R, Elt x, unsigned k)
{
    for (unsigned i = 0; i < k; ++i) x = ring_mul(R, ring_mul(R, x, x), x);
    return x;
}

real ring_eval(const ExactRing& R, const Elt& a, const real& th, const real& rh)
{
    const size_t nn = R.nn;
    real p0 = 0, p1 = 0;
    for (size_t i = nn; i-- > 0;) {
        p0 = p0 * th + to_real(a[i]);
        p1 = p1 * th + to_real(a[i + nn]);
    }
    return p0 + p1 * rh;
}

double max_coeff_log2(const Elt& a)
{
    double m = 0;
    for (const auto& c : a) {
        size_t b = mpz_sizeinbase(c.get_mpz_t(), 2);
        m = std::max(m, static_cast<double>(b));
    }
    return m;
}

/* Gaussian elimination with partial pivoting; A and b are consumed */
bool solve_linear(std::vector<std::vector<real>> A, std::vector<real> b, std::vector<real>& x)
{
    const size_t d = A.size();
    for (size_t col = 0; col < d; ++col) {
        size_t p = col;
        for (size_t i = col + 1; i < d; ++i)
            if (abs(A[i][col]) > abs(A[p][col])) p = i;
        if (A[p][col] == 0) return false;
        std::swap(A[p], A[col]);
        std::swap(b[p], b[col]);
        for (size_t i = col + 1; i < d; ++i) {
            if (A[i][col] == 0) continue;
            real fac = A[i][col] / A[col][col];
            for (size_t j = col; j < d; ++j) A[i][j] -= fac * A[col][j];
            b[i] -= fac * b[col];
        }
    }
    x.assign(d, real(0));
    for (size_t i = d; i-- > 0;) {
        real s = b[i];
        for (size_t j = i + 1; j < d; ++j) s -= A[i][j] * x[j];
        x[i] = s / A[i][i];
    }
    return true;
}

} // namespace

PowerCertificate is_power(const FundamentalDiscriminant& fd, RealEmbeddingSheet& sheet,
                          std::vector<int64_t> g, unsigned k, const GrasConfig& cfg)
{
    const size_t nn = pow3(sheet.n);
    const size_t d = 2 * nn;
    if (g.size() != nn) throw std::invalid_argument("is_power: exponent length mismatch");
    if (k == 0) throw std::invalid_argument("is_power: k must be positive");

    PowerCertificate cert;
    cert.k = k;
    // shifting the exponent by a multiple of 3^k changes eta^g by an exact
    // 3^k-th power, so reduce to the symmetric range first
    const int64_t q3k = static_cast<int64_t>(pow3(k));
    for (auto& gj : g) {
        gj = ((gj % q3k) + q3k) % q3k;
        if (gj > q3k / 2) gj -= q3k;
    }
    cert.g = g;
    bool allzero = true;
    double gsum = 0;
    for (int64_t gj : g) {
        if (gj != 0) allzero = false;
        gsum += static_cast<double>(gj < 0 ? -gj : gj);
    }
    if (allzero) {
        cert.verdict = PowerVerdict::certified_yes;
        cert.margin = 1e9;
        cert.bits_used = sheet.bits;
        return cert;
    }

    const ExactRing R = make_ring(fd.f, sheet.n);
    const uint64_t t3 = pow3(sheet.n + 1);
    uint64_t c = 4 % t3;
    if (sheet.orient == Orientation::gamma_inverse) c = invmod(c, t3);
    const double ln2_3k = 0.6931471805599453 * static_cast<double>(pow3(k));

    unsigned bits = std::max(cfg.bits_start, sheet.bits);
    for (;;) {
        if (sheet.bits < bits) sheet = embed_eta(fd, sheet.n, bits, sheet.orient);
        set_precision_bits(bits);

        // conjugate logs of eta^g and of its positive/negative parts,
        // embedding index t = s0*nn + j0
        std::vector<real> Lg(d, real(0)), Lp(d, real(0)), Lm(d, real(0));
        for (size_t s0 = 0; s0 < 2; ++s0)
            for (size_t j0 = 0; j0 < nn; ++j0) {
                size_t t = s0 * nn + j0;
                for (size_t j = 0; j < nn; ++j) {
                    if (g[j] == 0) continue;
                    const real& v = sheet.V[s0][(j0 + j) % nn];
                    Lg[t] += static_cast<long>(g[j]) * v;
                    if (g[j] > 0)
                        Lp[t] += static_cast<long>(g[j]) * v;
                    else
                        Lm[t] += static_cast<long>(-g[j]) * v;
                }
            }

        double maxLg = 0;
        for (const auto& v : Lg) maxLg = std::max(maxLg, abs(v).convert_to<double>());
        double maxLpm = 0;
        for (size_t t = 0; t < d; ++t)
            maxLpm = std::max({maxLpm, abs(Lp[t]).convert_to<double>(),
                               abs(Lm[t]).convert_to<double>()});

        // precision demands: resolve candidate coordinates (size ~ exp(maxLg/3^k))
        // against the integer lattice, and keep the sheet error well below the
        // norm-gap threshold for the largest denominator tried
        const double d_log2 =
            1.585 * static_cast<double>(cfg.denom_pow3_max) * static_cast<double>(pow3(k));
        double errLg_log2 = sheet.err_log2 + std::log2(gsum + 1) + 1;
        unsigned need = static_cast<unsigned>(maxLg / ln2_3k) + 192;
        if (errLg_log2 > -(64 + d_log2))
            need = std::max(need, sheet.bits + static_cast<unsigned>(errLg_log2 + 64 + d_log2) + 16);
        if (bits < need) {
            if (need > cfg.bits_max) break;
            bits = need;
            continue;
        }
        errLg_log2 = sheet.err_log2 + std::log2(gsum + 1) + 1;

        // sanity: the norm of eta^g is +-1, so the logs cancel
        real lsum = 0;
        for (const auto& v : Lg) lsum += v;
        if (abs(lsum).convert_to<double>() >
            std::exp2(errLg_log2 + 4) * static_cast<double>(d) + 1e-280)
            throw precision_error("is_power: conjugate log sum check failed");

        // embedding matrix of the basis theta^i rho^l
        std::vector<real> theta(nn), rho(2);
        {
            const real pi = const_pi();
            uint64_t cp = 1;
            for (size_t j0 = 0; j0 < nn; ++j0) {
                theta[j0] = 2 * cos(2 * pi * static_cast<unsigned long>(cp) /
                                    static_cast<unsigned long>(t3));
                cp = mulmod(cp, c, t3);
            }
            real sq = sqrt(real(static_cast<unsigned long>(fd.f)));
            rho[0] = (static_cast<unsigned long>(fd.f) + sq) / 2;
            rho[1] = (static_cast<unsigned long>(fd.f) - sq) / 2;
        }
        std::vector<std::vector<real>> A(d, std::vector<real>(d));
        for (size_t s0 = 0; s0 < 2; ++s0)
            for (size_t j0 = 0; j0 < nn; ++j0) {
                size_t t = s0 * nn + j0;
                real tp = 1;
                for (size_t i = 0; i < nn; ++i) {
                    A[t][i] = tp;
                    A[t][i + nn] = tp * rho[s0];
                    tp *= theta[j0];
                }
            }

        // solve-amplification proxy: image of the all-ones vector
        double amp = 1;
        {
            std::vector<real> y, ones(d, real(1));
            if (solve_linear(A, ones, y))
                for (const auto& v : y) amp = std::max(amp, abs(v).convert_to<double>());
        }

        bool all_no = true;
        double worst_ratio = 1e300;
        for (unsigned dd = 0; dd <= cfg.denom_pow3_max; ++dd) {
            std::vector<real> b(d);
            real Dr = static_cast<unsigned long>(pow3(dd));
            for (size_t t = 0; t < d; ++t) b[t] = Dr * exp(Lg[t] / q3k);
            double maxb = 0;
            for (const auto& v : b) maxb = std::max(maxb, abs(v).convert_to<double>());

            std::vector<real> x;
            if (!solve_linear(A, b, x)) throw std::logic_error("is_power: singular embedding matrix");
            // one refinement step; the correction size estimates the solver error
            std::vector<real> resid(d);
            for (size_t t = 0; t < d; ++t) {
                real s = b[t];
                for (size_t i = 0; i < d; ++i) s -= A[t][i] * x[i];
                resid[t] = s;
            }
            std::vector<real> dx;
            double corr = 0;
            if (solve_linear(A, resid, dx)) {
                for (size_t i = 0; i < d; ++i) {
                    x[i] += dx[i];
                    corr = std::max(corr, abs(dx[i]).convert_to<double>());
                }
            }
            double err_est = 4 * corr +
                             amp * maxb * (std::exp2(errLg_log2) / static_cast<double>(q3k) +
                                           std::exp2(-static_cast<double>(bits) + 8));

            std::vector<mpz_class> X(d);
            double margin = 0;
            for (size_t i = 0; i < d; ++i) {
                mpfr_get_z(X[i].get_mpz_t(), x[i].backend().data(), MPFR_RNDN);
                real diff = x[i] - to_real(X[i]);
                margin = std::max(margin, abs(diff).convert_to<double>());
            }
            double tol = 65536.0 * std::max(err_est, 1e-30);
            worst_ratio = std::min(worst_ratio, margin / tol);
            if (margin > tol && tol < 0.001) continue;  // certified non-integral for this D
            all_no = false;

            if (margin < 0.25 && err_est < std::exp2(-20)) {
                // exact attempt: X^{3^k} * eta^{g-} must equal D^{3^k} * eta^{g+};
                // the difference is an algebraic integer, so a norm below 1 is 0
                Elt P = ring_pow3k(R, X, k);
                mpz_class Dpow;
                mpz_ui_pow_ui(Dpow.get_mpz_t(), 3, static_cast<unsigned long>(dd) *
                                                       static_cast<unsigned long>(q3k));
                unsigned eval_bits = static_cast<unsigned>(std::max<double>(
                    bits, max_coeff_log2(P) + maxLpm / 0.6931 + d_log2 + 128));
                if (eval_bits > cfg.bits_max) break;
                set_precision_bits(eval_bits);
                // re-derive logs at evaluation precision is unnecessary: only
                // relative accuracy of exp matters and Lg carries errLg already
                const real pi = const_pi();
                real sq = sqrt(real(static_cast<unsigned long>(fd.f)));
                real rho_hi[2] = {(static_cast<unsigned long>(fd.f) + sq) / 2,
                                  (static_cast<unsigned long>(fd.f) - sq) / 2};
                double sum = 0;
                bool ok = true;
                uint64_t cp = 1;
                std::vector<real> theta_all(nn);
                for (size_t j0 = 0; j0 < nn; ++j0) {
                    theta_all[j0] = 2 * cos(2 * pi * static_cast<unsigned long>(cp) /
                                            static_cast<unsigned long>(t3));
                    cp = mulmod(cp, c, t3);
                }
                double maxP_log2 = max_coeff_log2(P) + std::log2(static_cast<double>(d)) + 4;
                for (size_t s0 = 0; s0 < 2 && ok; ++s0)
                    for (size_t j0 = 0; j0 < nn && ok; ++j0) {
                        size_t t = s0 * nn + j0;
                        real Pv = ring_eval(R, P, theta_all[j0], rho_hi[s0]);
                        real Em = exp(Lm[t]), Ep = exp(Lp[t]);
                        real W = Pv * Em - to_real(Dpow) * Ep;
                        // error: relative sheet error on both terms plus the
                        // Horner evaluation error amplified by Em
                        double term_log2 = std::max(log2_of(abs(Pv * Em)),
                                                    log2_of(to_real(Dpow) * Ep));
                        double err_log2 = std::max(
                            term_log2 + std::max(errLg_log2,
                                                 -static_cast<double>(eval_bits) + 10),
                            maxP_log2 + log2_of(Em) - static_cast<double>(eval_bits) + 10);
                        double w_log2 = std::max(log2_of(abs(W)), err_log2);
                        sum += w_log2;
                    }
                set_precision_bits(bits);
                if (ok && sum < -16) {
                    cert.verdict = PowerVerdict::certified_yes;
                    cert.denom_pow3 = dd;
                    cert.margin = -sum;
                    cert.bits_used = eval_bits;
                    return cert;
                }
            }
        }

        if (all_no) {
            cert.verdict = PowerVerdict::certified_no;
            cert.margin = worst_ratio;
            cert.bits_used = bits;
            return cert;
        }
        if (bits >= cfg.bits_max) break;
        bits = std::min(cfg.bits_max, bits * 2);
    }
    cert.verdict = PowerVerdict::inconclusive;
    cert.bits_used = bits;
    return cert;
}

/* ---- annihilator of the accumulated ideal modulo (3^v, omega) ---- */

namespace {

/* diagonalize A by unimodular row/column operations, accumulating the
 * column operations in V; then A_orig w = 0 iff w = V z with diag(A) z = 0 */
void snf_diagonalize(std::vector<std::vector<mpz_class>>& A,
                     std::vector<std::vector<mpz_class>>& V)
{
    const size_t Rn = A.size(), Cn = A[0].size();
    V.assign(Cn, std::vector<mpz_class>(Cn));
    for (size_t i = 0; i < Cn; ++i) V[i][i] = 1;

    for (size_t t = 0; t < std::min(Rn, Cn); ++t) {
        for (;;) {
            size_t bi = Rn, bj = Cn;
            for (size_t i = t; i < Rn; ++i)
                for (size_t j = t; j < Cn; ++j) {
                    if (A[i][j] == 0) continue;
                    if (bi == Rn || cmp(abs(A[i][j]), abs(A[bi][bj])) < 0) {
                        bi = i;
                        bj = j;
                    }
                }
            if (bi == Rn) return;  // all remaining entries zero
            std::swap(A[bi], A[t]);
            if (bj != t)
                for (size_t i = 0; i < Rn; ++i) std::swap(A[i][bj], A[i][t]);
            if (bj != t)
                for (size_t i = 0; i < Cn; ++i) std::swap(V[i][bj], V[i][t]);

            bool clean = true;
            for (size_t i = t + 1; i < Rn; ++i) {
                if (A[i][t] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), A[i][t].get_mpz_t(), A[t][t].get_mpz_t());
                for (size_t j = t; j < Cn; ++j) A[i][j] -= q * A[t][j];
                if (A[i][t] != 0) clean = false;
            }
            for (size_t j = t + 1; j < Cn; ++j) {
                if (A[t][j] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), A[t][j].get_mpz_t(), A[t][t].get_mpz_t());
                for (size_t i = 0; i < Rn; ++i) A[i][j] -= q * A[i][t];
                for (size_t i = 0; i < Cn; ++i) V[i][j] -= q * V[i][t];
                if (A[t][j] != 0) clean = false;
            }
            if (clean) break;
        }
    }
}

unsigned val3_mpz(const mpz_class& z, unsigned cap)
{
    mpz_class t = z;
    unsigned v = 0;
    while (v < cap && t != 0 && mpz_divisible_ui_p(t.get_mpz_t(), 3)) {
        t /= 3;
        ++v;
    }
    return v;
}

std::vector<int64_t> tpoly_to_gamma(const std::vector<uint64_t>& g, size_t nn, uint64_t q)
{
    std::vector<uint64_t> acc(nn, 0), powT(nn, 0);
    powT[0] = 1 % q;
    for (size_t i = 0; i < g.size(); ++i) {
        uint64_t gi = g[i] % q;
        if (gi)
            for (size_t j = 0; j < nn; ++j) acc[j] = (acc[j] + gi * powT[j]) % q;
        // powT *= (gamma - 1), cyclic shift minus identity
        std::vector<uint64_t> nx(nn);
        for (size_t j = 0; j < nn; ++j) nx[j] = (powT[(j + nn - 1) % nn] + q - powT[j]) % q;
        powT = std::move(nx);
    }
    std::vector<int64_t> out(nn);
    for (size_t j = 0; j < nn; ++j) {
        int64_t v = static_cast<int64_t>(acc[j]);
        if (v > static_cast<int64_t>(q / 2)) v -= static_cast<int64_t>(q);
        out[j] = v;
    }
    return out;
}

} // namespace

VerifyReport verify_ideal(const FundamentalDiscriminant& fd, const TruncatedLambdaIdeal& U,
                          const GrasConfig& cfg)
{
    VerifyReport rep;
    const LevelContext& uctx = U.context();
    const unsigned n = uctx.n;
    rep.v = U.constant_valuation();

    if (U.is_unit_ideal()) {
        rep.verdict = VerifyVerdict::verified;
        rep.note = "unit ideal, trivial quotient";
        return rep;
    }
    if (n > cfg.level_cap) {
        rep.verdict = VerifyVerdict::inconclusive;
        rep.note = "level above the exact-algebra cap";
        return rep;
    }

    const unsigned v = rep.v;
    const size_t d = uctx.deg();
    const size_t nn = pow3(n);
    const uint64_t mod = pow3(v);
    const LevelContext vctx{v, n, uctx.variant};

    // equations w * g == 0 in (Z/3^v)[T]/(omega) for every basis row g of U
    std::vector<std::vector<mpz_class>> A;
    for (const auto& row : U.basis()) {
        std::vector<uint64_t> g(d);
        bool nz = false;
        for (size_t i = 0; i < d; ++i) {
            g[i] = row[i] % mod;
            if (g[i]) nz = true;
        }
        if (!nz) continue;
        size_t base = A.size();
        A.resize(base + d, std::vector<mpz_class>(d));
        std::vector<uint64_t> sh = g;
        for (size_t t = 0; t < d; ++t) {
            for (size_t i = 0; i < d; ++i) A[base + i][t] = static_cast<unsigned long>(sh[i]);
            mul_by_T(vctx, sh);
        }
    }
    if (A.empty()) A.assign(1, std::vector<mpz_class>(d));

    std::vector<std::vector<mpz_class>> V;
    snf_diagonalize(A, V);

    // kernel of the original system mod 3^v: scaled columns of V
    std::vector<std::vector<uint64_t>> kergens;
    for (size_t i = 0; i < d; ++i) {
        mpz_class di = (i < A.size()) ? A[i][i] : mpz_class(0);
        uint64_t mult = 1;
        if (di != 0) {
            unsigned a = val3_mpz(di, v);
            mult = pow3(a >= v ? 0 : v - a);
        }
        std::vector<uint64_t> w(d);
        bool nz = false;
        for (size_t r = 0; r < d; ++r) {
            mpz_class c = (V[r][i] * static_cast<unsigned long>(mult)) % static_cast<unsigned long>(mod);
            if (c < 0) c += static_cast<unsigned long>(mod);
            w[r] = c.get_ui();
            if (w[r]) nz = true;
        }
        if (nz) kergens.push_back(std::move(w));
    }

    // keep only ideal generators: sort by 3-content (strongest first), drop
    // anything already inside the ideal of the kept ones
    auto content = [&](const std::vector<uint64_t>& w) {
        unsigned s = v;
        for (uint64_t c : w)
            if (c) s = std::min(s, static_cast<unsigned>(val3(c)));
        return s;
    };
    std::stable_sort(kergens.begin(), kergens.end(),
                     [&](const auto& a2, const auto& b2) { return content(a2) < content(b2); });
    TruncatedLambdaIdeal W(vctx);
    std::vector<std::vector<uint64_t>> kept;
    for (auto& w : kergens) {
        TruncatedPolynomial p{vctx, w};
        if (W.contains(p)) continue;
        W.add_generator(p);
        kept.push_back(w);
    }

    RealEmbeddingSheet sheet = embed_eta(fd, n, cfg.bits_start, cfg.orient);
    bool any_no = false, any_open = false;
    for (const auto& w : kept) {
        unsigned s = content(w);
        unsigned k = v - s;
        uint64_t q = pow3(k);
        std::vector<uint64_t> gp(d);
        for (size_t i = 0; i < d; ++i) gp[i] = (w[i] / pow3(s)) % q;
        std::vector<int64_t> gg = tpoly_to_gamma(gp, nn, q);
        PowerCertificate cert = is_power(fd, sheet, gg, k, cfg);
        if (cert.verdict == PowerVerdict::certified_no) any_no = true;
        if (cert.verdict == PowerVerdict::inconclusive) any_open = true;
        rep.tests.push_back(std::move(cert));
    }

    if (any_no) {
        rep.verdict = VerifyVerdict::refuted;
        rep.note = "a predicted unit power relation fails; the accumulated ideal "
                   "is not saturated";
    } else if (any_open) {
        rep.verdict = VerifyVerdict::inconclusive;
        rep.note = "power test hit the precision cap";
    } else {
        rep.verdict = VerifyVerdict::verified;
    }
    return rep;
}

} // namespace lambda0
