#ifndef LAMBDA0_TEST_HELPERS_HPP
#define LAMBDA0_TEST_HELPERS_HPP

#include <cstdint>
#include <vector>

#include "lambda0/lambda_ring.hpp"

/* poly_in_context has int64 and mpz overloads; braced literals are ambiguous */
inline lambda0::TruncatedPolynomial P(const lambda0::LevelContext& ctx,
                                      const std::vector<int64_t>& coeffs)
{
    return lambda0::poly_in_context(ctx, coeffs);
}

#endif
