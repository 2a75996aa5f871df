#pragma once

#include <cstdint>

#include "rrlab/arith.hpp"

namespace rrlab {

/// S_m(n) = 1^m + 2^m + ... + (n-1)^m, exactly; S_m(1) = 0.
inline Integer power_sum(std::int64_t m, std::int64_t n) {
  if (m < 1) throw PreconditionError("power_sum: exponent must be >= 1");
  if (n < 1) throw PreconditionError("power_sum: bound must be >= 1");
  Integer acc = 0;
  for (std::int64_t x = 1; x < n; ++x)
    acc += int_pow(Integer(x), static_cast<unsigned>(m));
  return acc;
}

/// S_m(n) mod M, streaming every term so intermediates stay below M^2.
inline Residue power_sum_mod(std::int64_t m, std::int64_t n, const Integer& M) {
  if (m < 1) throw PreconditionError("power_sum_mod: exponent must be >= 1");
  if (n < 1) throw PreconditionError("power_sum_mod: bound must be >= 1");
  if (M < 1) throw PreconditionError("power_sum_mod: modulus must be >= 1");
  Integer acc = 0;
  for (std::int64_t x = 1; x < n; ++x)
    acc = (acc + mod_pow(Integer(x), Integer(m), M)) % M;
  return Residue(acc, M);
}

}  // namespace rrlab
