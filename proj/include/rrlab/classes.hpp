#pragma once

#include <cstdint>

#include "rrlab/arith.hpp"
#include "rrlab/fpd.hpp"

namespace rrlab {

/// coeff * u^k in Z[u]/(n u), where u generates H^2 of the cyclic group of
/// order n; the class lives in degree 2k.
struct CohomologyClass {
  int degree_index = 1;  // k
  Residue coeff;
};

/// e_k restricted to the cyclic subgroup:
/// coeff = sum_i (n/alpha_i) * (beta_i^*)^k mod n, where beta_i^* inverts
/// beta_i mod alpha_i. Any lift of beta_i^* gives the same class because
/// (n/alpha_i) * alpha_i = n.
inline CohomologyClass morita_mumford_class(const FixedPointData& d, int k) {
  if (k < 1) throw PreconditionError("morita_mumford_class: index must be >= 1");
  const Integer n = d.order;
  Integer acc = 0;
  for (const BranchPoint& bp : d.branch) {
    const Integer beta_star = mod_inverse(bp.beta, bp.alpha);
    acc = (acc + Integer(d.order / bp.alpha) * mod_pow(beta_star, k, n)) % n;
  }
  return CohomologyClass{k, Residue(acc, n)};
}

/// (-1)^k sum_{j=1}^{n-1} n_j j^k mod n for a given multiplicity vector.
inline Integer newton_coeff_from_multiplicities(const MultiplicityVector& mult, int k) {
  const Integer n = mult.order;
  Integer acc = 0;
  for (std::int64_t j = 1; j < mult.order; ++j)
    acc += Integer(mult.values[static_cast<std::size_t>(j)]) *
           int_pow(Integer(j), static_cast<unsigned>(k));
  if (k % 2 != 0) acc = -acc;
  return mod_floor(acc, n);
}

/// s_k restricted to the cyclic subgroup, computed from the multiplicities of
/// the datum's representation on holomorphic 1-forms.
inline CohomologyClass newton_class(const FixedPointData& d, int k) {
  if (k < 1) throw PreconditionError("newton_class: index must be >= 1");
  const MultiplicityVector mult = multiplicities(d);
  return CohomologyClass{k, Residue(newton_coeff_from_multiplicities(mult, k), Integer(d.order))};
}

}  // namespace rrlab
