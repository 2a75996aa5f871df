#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rrlab {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numer(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denom(const Rational& r) { return boost::multiprecision::denominator(r); }

/// True iff r reduces to an integer.
inline bool is_integral(const Rational& r) { return denom(r) == 1; }

struct NonInvertibleError : std::domain_error {
  NonInvertibleError(const Integer& a, const Integer& m)
      : std::domain_error("no inverse of " + a.str() + " modulo " + m.str() +
                          ": arguments are not coprime") {}
};

struct NotLocalizedError : std::domain_error {
  using std::domain_error::domain_error;
};

struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct BoundError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

/// Floor division, exact for either sign of a; b must be positive.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if (a % b != 0 && (a < 0) != (b < 0)) --q;
  return q;
}

/// Canonical representative of a modulo m in [0, m); m >= 1.
inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

inline Integer int_pow(Integer base, unsigned e) {
  return boost::multiprecision::pow(base, e);
}

/// a^e mod m by square-and-multiply; a^0 = 1 mod m.
inline Integer mod_pow(const Integer& a, const Integer& e, const Integer& m) {
  if (m < 1) throw PreconditionError("mod_pow: modulus must be >= 1");
  if (e < 0) throw PreconditionError("mod_pow: exponent must be >= 0");
  Integer base = mod_floor(a, m);
  Integer exp = e;
  Integer acc = mod_floor(1, m);
  while (exp > 0) {
    if (boost::multiprecision::bit_test(exp, 0)) acc = acc * base % m;
    base = base * base % m;
    exp >>= 1;
  }
  return acc;
}

/// The unique b in [0, m) with a*b = 1 (mod m); m = 1 yields 0.
/// Throws NonInvertibleError when gcd(a, m) != 1.
inline Integer mod_inverse(const Integer& a, const Integer& m) {
  if (m < 1) throw PreconditionError("mod_inverse: modulus must be >= 1");
  if (m == 1) return 0;
  Integer r0 = m, r1 = mod_floor(a, m);
  Integer t0 = 0, t1 = 1;
  while (r1 != 0) {
    Integer q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    t0 -= q * t1;
    std::swap(t0, t1);
  }
  if (r0 != 1) throw NonInvertibleError(a, m);
  return mod_floor(t0, m);
}

/// A residue class value mod modulus, canonicalized to [0, modulus).
struct Residue {
  Integer value;
  Integer modulus;

  Residue() : value(0), modulus(1) {}
  Residue(const Integer& v, const Integer& m) : value(), modulus(m) {
    if (m < 1) throw PreconditionError("Residue: modulus must be >= 1");
    value = mod_floor(v, m);
  }

  friend bool operator==(const Residue&, const Residue&) = default;
};

/// r = s (mod N) in Z_(N): N divides the numerator of the reduced difference.
/// Both operands must have denominator coprime to N.
inline bool congruent_localized(const Rational& r, const Rational& s, const Integer& N) {
  if (N < 1) throw PreconditionError("congruent_localized: modulus must be >= 1");
  if (gcd(denom(r), N) != 1)
    throw NotLocalizedError("lhs denominator " + denom(r).str() +
                            " shares a factor with modulus " + N.str());
  if (gcd(denom(s), N) != 1)
    throw NotLocalizedError("rhs denominator " + denom(s).str() +
                            " shares a factor with modulus " + N.str());
  Rational d = r - s;
  return numer(d) % N == 0;
}

/// Evaluate an element of Z_(N) mod N: numerator * denominator^{-1}.
inline Residue rational_to_residue(const Rational& r, const Integer& N) {
  if (N < 1) throw PreconditionError("rational_to_residue: modulus must be >= 1");
  Integer inv = mod_inverse(denom(r), N);
  return Residue(mod_floor(numer(r), N) * inv, N);
}

inline bool is_prime(const Integer& n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (Integer d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

inline bool is_prime_power(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      return n == 1;
    }
  }
  return true;  // n itself prime
}

inline std::vector<std::int64_t> primes_upto(std::int64_t limit) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p <= limit; ++p)
    if (is_prime(Integer(p))) out.push_back(p);
  return out;
}

}  // namespace rrlab
