#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "rrlab/arith.hpp"

namespace rrlab {

/// One branch-point orbit: local rotation number beta/alpha with
/// 2 <= alpha, 1 <= beta < alpha, gcd(alpha, beta) = 1 and alpha | n.
struct BranchPoint {
  std::int64_t alpha = 0;
  std::int64_t beta = 0;
  friend auto operator<=>(const BranchPoint&, const BranchPoint&) = default;
};

struct ValidationError : std::invalid_argument {
  enum class Reason {
    field_range,       // g, n, alpha or beta outside its range
    alpha_divides,     // some alpha does not divide n
    beta_coprime,      // some gcd(beta, alpha) != 1
    sum_not_integral,  // sum of beta_i/alpha_i is not an integer
    orbit_genus,       // Riemann-Hurwitz gives a non-integral or negative h
  };
  Reason reason;
  ValidationError(Reason r, const std::string& msg) : std::invalid_argument(msg), reason(r) {}
};

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// <g, n | beta_1/alpha_1, ..., beta_q/alpha_q> with the orbit genus h derived
/// from the Riemann-Hurwitz equation. Immutable once validated; the branch
/// list is kept sorted by (alpha, beta).
struct FixedPointData {
  std::int64_t genus = 2;
  std::int64_t order = 1;
  std::int64_t orbit_genus = 2;
  std::vector<BranchPoint> branch;

  std::size_t q() const { return branch.size(); }

  /// Canonical text form: "g,n;b1/a1,b2/a2,..." (empty branch: "g,n;").
  std::string to_string() const {
    std::string out = std::to_string(genus) + "," + std::to_string(order) + ";";
    for (std::size_t i = 0; i < branch.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(branch[i].beta) + "/" + std::to_string(branch[i].alpha);
    }
    return out;
  }

  friend bool operator==(const FixedPointData&, const FixedPointData&) = default;
};

/// Deterministic order used by enumerate: orbit genus, then branch list.
inline bool data_less(const FixedPointData& a, const FixedPointData& b) {
  if (a.orbit_genus != b.orbit_genus) return a.orbit_genus < b.orbit_genus;
  return a.branch < b.branch;
}

/// Check every invariant, solve Riemann-Hurwitz for the orbit genus and
/// return the canonicalized datum.
inline FixedPointData validate(std::int64_t g, std::int64_t n, std::vector<BranchPoint> branch) {
  if (g < 2)
    throw ValidationError(ValidationError::Reason::field_range,
                          "genus must be >= 2, got " + std::to_string(g));
  if (n < 1)
    throw ValidationError(ValidationError::Reason::field_range,
                          "order must be >= 1, got " + std::to_string(n));
  Integer weighted = 0;  // sum of beta_i * (n/alpha_i); integral sum test mod n
  std::int64_t ramification = 0;  // sum of (n - n/alpha_i)
  for (const BranchPoint& bp : branch) {
    if (bp.alpha < 2 || bp.beta < 1 || bp.beta >= bp.alpha)
      throw ValidationError(ValidationError::Reason::field_range,
                            "branch entry " + std::to_string(bp.beta) + "/" +
                                std::to_string(bp.alpha) +
                                " outside range (need 2 <= alpha, 1 <= beta < alpha)");
    if (n % bp.alpha != 0)
      throw ValidationError(ValidationError::Reason::alpha_divides,
                            "alpha = " + std::to_string(bp.alpha) + " does not divide order " +
                                std::to_string(n));
    if (std::gcd(bp.alpha, bp.beta) != 1)
      throw ValidationError(ValidationError::Reason::beta_coprime,
                            "beta = " + std::to_string(bp.beta) + " is not prime to alpha = " +
                                std::to_string(bp.alpha));
    weighted += Integer(bp.beta) * (n / bp.alpha);
    ramification += n - n / bp.alpha;
  }
  if (weighted % n != 0)
    throw ValidationError(ValidationError::Reason::sum_not_integral,
                          "branch rotation numbers do not sum to an integer");
  // 2g - 2 = n(2h - 2) + ramification
  const std::int64_t rest = 2 * g - 2 - ramification;
  if (rest % (2 * n) != 0)
    throw ValidationError(ValidationError::Reason::orbit_genus,
                          "Riemann-Hurwitz gives a non-integral orbit genus");
  const std::int64_t h = rest / (2 * n) + 1;
  if (h < 0)
    throw ValidationError(ValidationError::Reason::orbit_genus,
                          "Riemann-Hurwitz gives a negative orbit genus");
  std::sort(branch.begin(), branch.end());
  return FixedPointData{g, n, h, std::move(branch)};
}

/// Parse the textual grammar "g,n;b1/a1,b2/a2,..." (ASCII, no spaces) and
/// validate the result. Grammar failures raise ParseError; a well-formed but
/// inadmissible datum raises ValidationError.
inline FixedPointData parse_fpd(std::string_view text) {
  const char* p = text.data();
  const char* end = text.data() + text.size();
  auto read_int = [&](const char* what) {
    std::int64_t value = 0;
    auto [next, ec] = std::from_chars(p, end, value);
    if (ec != std::errc() || next == p)
      throw ParseError(std::string("expected ") + what + " in fixed point datum at offset " +
                       std::to_string(p - text.data()));
    p = next;
    return value;
  };
  auto expect = [&](char c) {
    if (p == end || *p != c)
      throw ParseError(std::string("expected '") + c + "' in fixed point datum at offset " +
                       std::to_string(p - text.data()));
    ++p;
  };
  const std::int64_t g = read_int("genus");
  expect(',');
  const std::int64_t n = read_int("order");
  expect(';');
  std::vector<BranchPoint> branch;
  if (p != end) {
    for (;;) {
      const std::int64_t beta = read_int("beta");
      expect('/');
      const std::int64_t alpha = read_int("alpha");
      branch.push_back(BranchPoint{alpha, beta});
      if (p == end) break;
      expect(',');
    }
  }
  return validate(g, n, std::move(branch));
}

/// Datum of the inverse mapping class: each beta goes to alpha - beta.
inline FixedPointData invert(const FixedPointData& d) {
  std::vector<BranchPoint> branch = d.branch;
  for (BranchPoint& bp : branch) bp.beta = bp.alpha - bp.beta;
  FixedPointData out = validate(d.genus, d.order, std::move(branch));
  return out;
}

struct EnumerationLimits {
  std::int64_t max_order = 512;
};

/// Every canonical datum with the given genus and order, exactly once, in
/// the deterministic order of data_less.
inline std::vector<FixedPointData> enumerate_data(std::int64_t g, std::int64_t n,
                                                  const EnumerationLimits& limits = {}) {
  if (g < 2) throw PreconditionError("enumerate_data: genus must be >= 2");
  if (n < 1) throw PreconditionError("enumerate_data: order must be >= 1");
  if (n > limits.max_order)
    throw BoundError("enumerate_data: order " + std::to_string(n) +
                     " exceeds the configured bound " + std::to_string(limits.max_order));

  struct Candidate {
    BranchPoint bp;
    std::int64_t weight;       // n - n/alpha
    std::int64_t beta_scaled;  // beta * (n/alpha)
  };
  std::vector<Candidate> cands;
  for (std::int64_t alpha = 2; alpha <= n; ++alpha) {
    if (n % alpha != 0) continue;
    for (std::int64_t beta = 1; beta < alpha; ++beta)
      if (std::gcd(alpha, beta) == 1)
        cands.push_back(Candidate{{alpha, beta}, n - n / alpha, beta * (n / alpha)});
  }

  std::vector<FixedPointData> out;
  std::vector<BranchPoint> stack;
  for (std::int64_t h = 0;; ++h) {
    const std::int64_t target = 2 * g - 2 - n * (2 * h - 2);
    if (target < 0) break;
    if (target == 0) {
      out.push_back(FixedPointData{g, n, h, {}});
      continue;
    }
    // Non-decreasing sequences of candidates with ramification weights
    // summing to target and scaled rotation numbers summing to 0 mod n.
    auto dfs = [&](auto&& self, std::size_t from, std::int64_t rem, std::int64_t scaled) -> void {
      if (rem == 0) {
        if (scaled % n == 0) out.push_back(FixedPointData{g, n, h, stack});
        return;
      }
      for (std::size_t i = from; i < cands.size(); ++i) {
        if (cands[i].weight > rem) continue;
        stack.push_back(cands[i].bp);
        self(self, i, rem - cands[i].weight, (scaled + cands[i].beta_scaled) % n);
        stack.pop_back();
      }
    };
    dfs(dfs, 0, target, 0);
  }
  std::sort(out.begin(), out.end(), data_less);
  return out;
}

/// Multiplicities n_0, ..., n_{n-1} of the characters in the induced
/// representation on holomorphic 1-forms, as a function of the datum.
struct MultiplicityVector {
  std::int64_t order = 1;
  std::vector<std::int64_t> values;  // values[0] = orbit genus
};

/// Direct evaluation: n_0 = h and, for 1 <= j < n,
/// n_j = h - 1 + q - sum_i { frac(j b_i/a_i) or 1 when j b_i/a_i is integral },
/// carried out in exact rationals.
inline MultiplicityVector multiplicities(const FixedPointData& d) {
  MultiplicityVector out{d.order, {}};
  out.values.reserve(static_cast<std::size_t>(d.order));
  out.values.push_back(d.orbit_genus);
  for (std::int64_t j = 1; j < d.order; ++j) {
    Rational sum = 0;
    for (const BranchPoint& bp : d.branch) {
      const Rational r(Integer(j) * bp.beta, Integer(bp.alpha));
      sum += r - Integer((j * bp.beta) / bp.alpha);
      if (is_integral(r)) sum += 1;
    }
    if (!is_integral(sum))
      throw std::logic_error("multiplicities: non-integral character sum for datum " +
                             d.to_string());
    out.values.push_back(d.orbit_genus - 1 + static_cast<std::int64_t>(d.q()) -
                         numer(sum).convert_to<std::int64_t>());
  }
  return out;
}

/// The unique lambda in [1, alpha] with lambda = j*beta (mod alpha).
inline std::int64_t lambda_value(const BranchPoint& bp, std::int64_t j) {
  return (j * bp.beta - 1) % bp.alpha + 1;
}

/// Branch points regrouped by the divisor l = n/alpha (orbit length of the
/// underlying points). Divisors l of n with l < n appear even when empty.
struct OrbitGroup {
  std::int64_t divisor = 1;  // l
  std::vector<BranchPoint> points;
};

struct OrbitGrouping {
  std::int64_t order = 1;
  std::vector<OrbitGroup> groups;  // ascending by divisor

  std::int64_t count(std::int64_t divisor) const {  // y_l
    for (const OrbitGroup& grp : groups)
      if (grp.divisor == divisor) return static_cast<std::int64_t>(grp.points.size());
    return 0;
  }
};

inline OrbitGrouping orbit_grouping(const FixedPointData& d) {
  OrbitGrouping out{d.order, {}};
  for (std::int64_t l = 1; l < d.order; ++l) {
    if (d.order % l != 0) continue;
    OrbitGroup grp{l, {}};
    for (const BranchPoint& bp : d.branch)
      if (bp.alpha == d.order / l) grp.points.push_back(bp);
    out.groups.push_back(std::move(grp));
  }
  return out;
}

/// Multiplicities via the orbit grouping: n_j = h - 1 + sum_l y_l
/// - (1/n) sum_l sum_m l * lambda_{mlj}, an integer-only route independent of
/// the rational evaluation above.
inline MultiplicityVector multiplicities_fk(const FixedPointData& d) {
  const OrbitGrouping grouping = orbit_grouping(d);
  MultiplicityVector out{d.order, {}};
  out.values.reserve(static_cast<std::size_t>(d.order));
  out.values.push_back(d.orbit_genus);
  std::int64_t total_points = 0;
  for (const OrbitGroup& grp : grouping.groups)
    total_points += static_cast<std::int64_t>(grp.points.size());
  for (std::int64_t j = 1; j < d.order; ++j) {
    std::int64_t weighted = 0;
    for (const OrbitGroup& grp : grouping.groups)
      for (const BranchPoint& bp : grp.points) weighted += grp.divisor * lambda_value(bp, j);
    if (weighted % d.order != 0)
      throw std::logic_error("multiplicities_fk: weighted lambda sum not divisible by order");
    out.values.push_back(d.orbit_genus - 1 + total_points - weighted / d.order);
  }
  return out;
}

}  // namespace rrlab
