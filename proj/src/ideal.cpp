#include "lambda0/ideal.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace lambda0 {

TruncatedLambdaIdeal::TruncatedLambdaIdeal(LevelContext ctx)
    : ctx_(ctx), pivot_of_col_(ctx.deg(), -1)
{
}

TruncatedLambdaIdeal TruncatedLambdaIdeal::from_generators(
    const LevelContext& ctx, const std::vector<TruncatedPolynomial>& gens)
{
    TruncatedLambdaIdeal I(ctx);
    for (const auto& g : gens) {
        if (!(g.ctx == ctx))
            throw std::invalid_argument("ideal: generator context mismatch");
        I.add_generator(g);
    }
    return I;
}

void TruncatedLambdaIdeal::add_generator(const TruncatedPolynomial& p)
{
    size_t d = ctx_.deg();
    if (d == 0) return;
    std::vector<uint64_t> row = p.coeff;
    insert(row);
    for (size_t i = 1; i < d; ++i) {
        mul_by_T(ctx_, row);
        insert(row);
    }
    finalize();
}

void TruncatedLambdaIdeal::insert(std::vector<uint64_t> first)
{
    const size_t d = ctx_.deg();
    const uint64_t m = ctx_.modulus();
    const unsigned e = ctx_.e;

    std::vector<std::vector<uint64_t>> pending;
    pending.push_back(std::move(first));

    while (!pending.empty()) {
        std::vector<uint64_t> row = std::move(pending.back());
        pending.pop_back();

        for (size_t j = 0; j < d; ++j) {
            uint64_t x = row[j];
            if (x == 0) continue;
            unsigned v = val3(x);
            int ri = pivot_of_col_[j];
            if (ri >= 0) {
                unsigned vj = pivot_val_[ri];
                if (v >= vj) {
                    uint64_t q = x / pow3(vj);
                    const auto& b = rows_[ri];
                    for (size_t t = j; t < d; ++t) {
                        if (b[t]) row[t] = (row[t] + m - mulmod(q, b[t], m)) % m;
                    }
                    assert(row[j] == 0);
                } else {
                    // incoming row has the better pivot: swap it in
                    uint64_t u = x / pow3(v);
                    uint64_t uinv = invmod(u, m);
                    for (size_t t = j; t < d; ++t) row[t] = mulmod(row[t], uinv, m);
                    std::swap(rows_[ri], row);
                    pivot_val_[ri] = v;
                    if (v > 0) {
                        std::vector<uint64_t> cl(d, 0);
                        uint64_t s = pow3(e - v);
                        for (size_t t = j; t < d; ++t) cl[t] = mulmod(s, rows_[ri][t], m);
                        pending.push_back(std::move(cl));
                    }
                    // reduce the displaced row against the new pivot
                    uint64_t q = row[j] / pow3(v);
                    const auto& b = rows_[ri];
                    for (size_t t = j; t < d; ++t) {
                        if (b[t]) row[t] = (row[t] + m - mulmod(q, b[t], m)) % m;
                    }
                    assert(row[j] == 0);
                }
            } else {
                uint64_t u = x / pow3(v);
                uint64_t uinv = invmod(u, m);
                for (size_t t = j; t < d; ++t) row[t] = mulmod(row[t], uinv, m);
                pivot_of_col_[j] = static_cast<int>(rows_.size());
                pivot_val_.push_back(v);
                pivot_col_.push_back(static_cast<unsigned>(j));
                rows_.push_back(row);
                if (v > 0) {
                    std::vector<uint64_t> cl(d, 0);
                    uint64_t s = pow3(e - v);
                    for (size_t t = j; t < d; ++t) cl[t] = mulmod(s, row[t], m);
                    pending.push_back(std::move(cl));
                }
                break;
            }
        }
    }
}

void TruncatedLambdaIdeal::finalize()
{
    const size_t d = ctx_.deg();
    const uint64_t m = ctx_.modulus();
    // sort rows by pivot column
    std::vector<size_t> order(rows_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return pivot_col_[a] < pivot_col_[b]; });
    std::vector<std::vector<uint64_t>> rows;
    std::vector<unsigned> vals, cols;
    for (size_t i : order) {
        rows.push_back(std::move(rows_[i]));
        vals.push_back(pivot_val_[i]);
        cols.push_back(pivot_col_[i]);
    }
    rows_ = std::move(rows);
    pivot_val_ = std::move(vals);
    pivot_col_ = std::move(cols);
    std::fill(pivot_of_col_.begin(), pivot_of_col_.end(), -1);
    for (size_t i = 0; i < rows_.size(); ++i) pivot_of_col_[pivot_col_[i]] = static_cast<int>(i);

    // back-reduction: entries at later pivot columns reduced mod the pivot
    for (size_t i = 0; i < rows_.size(); ++i) {
        for (size_t l = i + 1; l < rows_.size(); ++l) {
            size_t jl = pivot_col_[l];
            uint64_t q = rows_[i][jl] / pow3(pivot_val_[l]);
            if (q == 0) continue;
            const auto& b = rows_[l];
            for (size_t t = jl; t < d; ++t) {
                if (b[t]) rows_[i][t] = (rows_[i][t] + m - mulmod(q, b[t], m)) % m;
            }
        }
    }
}

std::vector<uint64_t> TruncatedLambdaIdeal::reduce(std::vector<uint64_t> v) const
{
    const size_t d = ctx_.deg();
    const uint64_t m = ctx_.modulus();
    v.resize(d, 0);
    for (size_t j = 0; j < d; ++j) {
        if (v[j] == 0) continue;
        int ri = pivot_of_col_[j];
        if (ri < 0) continue;
        uint64_t q = v[j] / pow3(pivot_val_[ri]);
        if (q == 0) continue;
        const auto& b = rows_[ri];
        for (size_t t = j; t < d; ++t) {
            if (b[t]) v[t] = (v[t] + m - mulmod(q, b[t], m)) % m;
        }
    }
    return v;
}

bool TruncatedLambdaIdeal::contains(const TruncatedPolynomial& p) const
{
    if (!(p.ctx == ctx_)) throw std::invalid_argument("ideal: context mismatch");
    auto r = reduce(p.coeff);
    return std::all_of(r.begin(), r.end(), [](uint64_t x) { return x == 0; });
}

unsigned TruncatedLambdaIdeal::log3_index() const
{
    unsigned span = 0;
    for (unsigned v : pivot_val_) span += ctx_.e - v;
    return ctx_.e * static_cast<unsigned>(ctx_.deg()) - span;
}

unsigned TruncatedLambdaIdeal::tk_invariant() const
{
    size_t k = ctx_.deg();
    for (const auto& row : rows_) {
        for (size_t j = 0; j < k; ++j) {
            if (row[j] % 3 != 0) {
                k = j;
                break;
            }
        }
    }
    return static_cast<unsigned>(k);
}

unsigned TruncatedLambdaIdeal::quotient_exponent_log3() const
{
    const size_t d = ctx_.deg();
    std::vector<std::vector<uint64_t>> w(d);
    for (size_t j = 0; j < d; ++j) {
        std::vector<uint64_t> ej(d, 0);
        ej[j] = 1;
        w[j] = reduce(std::move(ej));
    }
    for (unsigned t = 0;; ++t) {
        bool all_zero = true;
        for (size_t j = 0; j < d && all_zero; ++j)
            for (uint64_t x : w[j])
                if (x) {
                    all_zero = false;
                    break;
                }
        if (all_zero) return t;
        if (t >= ctx_.e) return ctx_.e;  // unreachable: 3^e = 0
        for (size_t j = 0; j < d; ++j) {
            for (uint64_t& x : w[j]) x = x * 3 % ctx_.modulus();
            w[j] = reduce(std::move(w[j]));
        }
    }
}

unsigned TruncatedLambdaIdeal::constant_valuation() const
{
    const size_t d = ctx_.deg();
    if (d == 0) return 0;
    for (unsigned v = 0; v < ctx_.e; ++v) {
        std::vector<uint64_t> c(d, 0);
        c[0] = pow3(v);
        auto r = reduce(std::move(c));
        if (std::all_of(r.begin(), r.end(), [](uint64_t x) { return x == 0; })) return v;
    }
    return ctx_.e;
}

TruncatedLambdaIdeal TruncatedLambdaIdeal::reduce_to_level(unsigned m) const
{
    if (m > ctx_.n) throw std::invalid_argument("reduce_to_level: target above current level");
    LevelContext tctx{ctx_.e, m, ctx_.variant};
    auto g = omega_coeffs_mod(m, ctx_.variant, ctx_.modulus());
    g.back() = 1;
    std::vector<TruncatedPolynomial> gens;
    for (const auto& row : rows_)
        gens.push_back({tctx, poly_rem_monic(row, g, ctx_.modulus())});
    return from_generators(tctx, gens);
}

TruncatedLambdaIdeal TruncatedLambdaIdeal::involution() const
{
    std::vector<TruncatedPolynomial> gens;
    for (const auto& row : rows_) gens.push_back(involute({ctx_, row}));
    return from_generators(ctx_, gens);
}

std::vector<std::vector<int64_t>> TruncatedLambdaIdeal::generators_symmetric() const
{
    const uint64_t m = ctx_.modulus();
    std::vector<std::vector<int64_t>> out;
    for (const auto& row : rows_) {
        std::vector<int64_t> r(row.size());
        for (size_t i = 0; i < row.size(); ++i)
            r[i] = row[i] > m / 2 ? static_cast<int64_t>(row[i]) - static_cast<int64_t>(m)
                                  : static_cast<int64_t>(row[i]);
        while (!r.empty() && r.back() == 0) r.pop_back();
        out.push_back(std::move(r));
    }
    return out;
}

unsigned quotient_order(const TruncatedLambdaIdeal& I)
{
    return I.log3_index();
}

unsigned order_of_one_plus_T(const TruncatedLambdaIdeal& I)
{
    const LevelContext& ctx = I.context();
    for (unsigned j = 0; j < ctx.n; ++j) {
        auto w = omega_coeffs_mod(j, ctx.variant, ctx.modulus());
        auto r = I.reduce(w);
        if (std::all_of(r.begin(), r.end(), [](uint64_t x) { return x == 0; })) return j;
    }
    return ctx.n;  // omega_n == 0 in this ring
}

bool stabilization_check(const TruncatedLambdaIdeal& I_n, const TruncatedLambdaIdeal& I_n1)
{
    const LevelContext &a = I_n.context(), &b = I_n1.context();
    if (a.e != b.e || a.variant != b.variant || b.n != a.n + 1)
        throw std::invalid_argument("stabilization_check: contexts not consecutive");
    if (I_n.log3_index() != I_n1.log3_index()) return false;
    return I_n1.reduce_to_level(a.n) == I_n;
}

} // namespace lambda0
