#ifndef LAMBDA0_IDEAL_HPP
#define LAMBDA0_IDEAL_HPP

#include <optional>
#include <vector>

#include "lambda0/lambda_ring.hpp"

namespace lambda0 {

/* An ideal of (Z/3^e)[T]/(omega_n), i.e. the image of J + (3^e, omega_n).
 * Stored as the unique reduced Howell basis of its T-stable coefficient
 * row span: pivots are powers of 3 on strictly increasing columns, every
 * other row is reduced mod the pivot at each pivot column, and for each
 * pivot 3^v the closure row 3^{e-v} * row is in the span of the rest. */
class TruncatedLambdaIdeal {
public:
    explicit TruncatedLambdaIdeal(LevelContext ctx);

    static TruncatedLambdaIdeal from_generators(const LevelContext& ctx,
                                                const std::vector<TruncatedPolynomial>& gens);

    const LevelContext& context() const { return ctx_; }
    const std::vector<std::vector<uint64_t>>& basis() const { return rows_; }

    /* #quotient = 3^{log3_index}; always recomputed from the basis */
    unsigned log3_index() const;

    /* smallest k with T^k in I + (3); k = deg means only via omega */
    unsigned tk_invariant() const;

    /* smallest t with 3^t * (whole ring) contained in I */
    unsigned quotient_exponent_log3() const;

    /* smallest v with the constant 3^v in I (v <= e) */
    unsigned constant_valuation() const;

    /* normal form of a coefficient vector modulo the basis */
    std::vector<uint64_t> reduce(std::vector<uint64_t> v) const;

    bool contains(const TruncatedPolynomial& p) const;
    bool is_unit_ideal() const { return log3_index() == 0; }

    /* add a generator (with its T-span) and recanonicalize */
    void add_generator(const TruncatedPolynomial& p);

    /* image under the quotient map to level m < n (reduction mod omega_m) */
    TruncatedLambdaIdeal reduce_to_level(unsigned m) const;

    /* image under T -> (1+T)^{-1} - 1 */
    TruncatedLambdaIdeal involution() const;

    /* basis rows as integer polynomials, coefficients lifted to the
     * symmetric range (-3^e/2, 3^e/2] */
    std::vector<std::vector<int64_t>> generators_symmetric() const;

    bool operator==(const TruncatedLambdaIdeal& o) const
    {
        return ctx_ == o.ctx_ && rows_ == o.rows_;
    }

private:
    void insert(std::vector<uint64_t> row);
    void finalize();

    LevelContext ctx_;
    std::vector<std::vector<uint64_t>> rows_;  // canonical, sorted by pivot column
    std::vector<int> pivot_of_col_;            // column -> row index or -1
    std::vector<unsigned> pivot_val_;          // per row, valuation of pivot
    std::vector<unsigned> pivot_col_;          // per row, pivot column
};

unsigned quotient_order(const TruncatedLambdaIdeal& I);

/* level of stabilization: smallest j with omega_j (resp. omega'_j) in I.
 * Returns ctx.n if no smaller level works (callers must treat that as
 * "at least n" unless certified otherwise). */
unsigned order_of_one_plus_T(const TruncatedLambdaIdeal& I);

/* image of I_{n+1} at level n equals I_n and the quotient orders agree */
bool stabilization_check(const TruncatedLambdaIdeal& I_n, const TruncatedLambdaIdeal& I_n1);

struct FinitenessWitness {
    unsigned m = 0, n = 0;  // levels, n >= m
    unsigned a = 0, b = 0;  // #C_m >= 3^a, #C_n <= 3^b
};

inline bool finiteness_lemma(const FinitenessWitness& w)
{
    if (w.n < w.m || w.b < w.a) throw std::invalid_argument("finiteness_lemma: bad witness");
    return w.b - w.a < w.n - w.m;
}

} // namespace lambda0

#endif
