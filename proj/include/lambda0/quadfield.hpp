#ifndef LAMBDA0_QUADFIELD_HPP
#define LAMBDA0_QUADFIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "lambda0/util.hpp"

namespace lambda0 {

struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FundamentalDiscriminant {
    uint64_t f = 0;
    unsigned residue3 = 0;  // f mod 3
    uint64_t fprime = 0;    // f/3 when 3 | f, else f

    uint64_t cyclotomic_conductor(unsigned n) const { return pow3(n + 1) * fprime; }
};

/* throws std::invalid_argument unless f > 1 is a fundamental discriminant
 * of a real quadratic field */
FundamentalDiscriminant validate_discriminant(uint64_t f);
bool is_fundamental_discriminant(uint64_t f);

/* fundamental unit (x + y sqrt(f)) / 2 > 1, exact integers */
struct QuadraticUnit {
    mpz_class x, y;
    int norm = 1;        // x^2 - f y^2 = 4 * norm
    unsigned period = 0; // continued-fraction period used to find it
};

QuadraticUnit fundamental_unit(uint64_t f);
QuadraticUnit unit_mul(const QuadraticUnit& a, const QuadraticUnit& b, uint64_t f);

struct ClassGroupData {
    uint64_t h_narrow = 1;
    uint64_t h = 1;                // wide class number
    int unit_norm = 1;             // norm of the fundamental unit
    unsigned h3 = 0;               // v_3(h)
    std::vector<unsigned> sylow3;  // cyclic factors of the 3-Sylow, log_3 orders, descending
};

/* class group of discriminant f via cycles of reduced indefinite binary
 * quadratic forms under Gauss composition; wide group obtained from the
 * narrow one through the norm of the fundamental unit */
ClassGroupData class_group_3part(const FundamentalDiscriminant& fd);

/* v_3 of the 3-adic logarithm of the unit u = (x + y sqrt(f))/2, evaluated
 * in the completion at the prime above 3 fixed by the Hensel lift of
 * sqrt(f) that is congruent to 1 mod 3.  Requires f == 1 (mod 3).  Throws
 * precision_error when the valuation is >= e (raise e and retry). */
unsigned padic_log3_valuation(const FundamentalDiscriminant& fd, const QuadraticUnit& u,
                              unsigned e);

/* --- exposed for tests: reduced indefinite forms and composition --- */
struct QuadForm {
    long long a = 0, b = 0, c = 0;
    auto operator<=>(const QuadForm&) const = default;
};

struct NarrowClassGroup {
    long long D = 0, s = 0;          // discriminant and isqrt(D)
    std::vector<QuadForm> reps;      // one positive-leading reduced form per class
    std::vector<std::vector<QuadForm>> cycles;
    int identity = 0;

    size_t order() const { return reps.size(); }
    int cls(const QuadForm& reduced) const;
    int mul(int i, int j) const;
    int pow_cls(int i, uint64_t k) const;

private:
    friend NarrowClassGroup narrow_class_group(uint64_t f);
    std::vector<QuadForm> sorted_;  // all reduced forms, sorted
    std::vector<int> cls_of_;       // parallel to sorted_
};

NarrowClassGroup narrow_class_group(uint64_t f);
bool form_is_reduced(const QuadForm& F, long long s);
QuadForm form_reduce(QuadForm F, long long D, long long s);
QuadForm form_rho(const QuadForm& F, long long D, long long s);
QuadForm form_compose(const QuadForm& F1, const QuadForm& F2, long long D, long long s);

} // namespace lambda0

#endif
