#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "rrlab/arith.hpp"
#include "rrlab/bernoulli.hpp"
#include "rrlab/classes.hpp"
#include "rrlab/fpd.hpp"
#include "rrlab/powersum.hpp"

namespace rrlab {

/// Outcome of one congruence check. holds is equivalent to lhs == rhs; both
/// residues are canonical mod the same modulus, and witness records every
/// input of the case as text.
struct VerificationResult {
  std::string check;
  std::string witness;
  Integer modulus = 1;
  Residue lhs;
  Residue rhs;
  bool holds = false;
};

inline VerificationResult make_result(std::string check, std::string witness, const Integer& M,
                                      const Integer& lhs, const Integer& rhs) {
  VerificationResult out;
  out.check = std::move(check);
  out.witness = std::move(witness);
  out.modulus = M;
  out.lhs = Residue(lhs, M);
  out.rhs = Residue(rhs, M);
  out.holds = out.lhs == out.rhs;
  return out;
}

/// N'_{2k} e_{2k-1} = D'_{2k} s_{2k-1} in H^{4k-2} of the cyclic subgroup,
/// checked as residues mod the order of the datum.
inline VerificationResult verify_main(const FixedPointData& d, int k, const BernoulliTable& table) {
  if (k < 1) throw PreconditionError("verify_main: index must be >= 1");
  const RRConstants rc = table.rr_constants(k);
  const Integer n = d.order;
  const CohomologyClass e = morita_mumford_class(d, 2 * k - 1);
  const CohomologyClass s = newton_class(d, 2 * k - 1);
  return make_result("main", "data=" + d.to_string() + " k=" + std::to_string(k), n,
                     rc.n2k_prime * e.coeff.value, rc.d2k_prime * s.coeff.value);
}

namespace detail {

inline void check_voronoi_inputs(const char* who, std::int64_t p, int a, int b, std::int64_t c,
                                 int k) {
  if (!is_prime(Integer(p)))
    throw PreconditionError(std::string(who) + ": p = " + std::to_string(p) + " is not prime");
  if (a < 0 || b < 0) throw PreconditionError(std::string(who) + ": exponents must be >= 0");
  if (k < 1) throw PreconditionError(std::string(who) + ": index must be >= 1");
  if (c % p == 0)
    throw PreconditionError(std::string(who) + ": c = " + std::to_string(c) +
                            " is divisible by p = " + std::to_string(p));
}

/// sum_{s=lo}^{hi-1} s^e [s c / pa] mod M, streamed.
inline Integer floor_weighted_power_sum_mod(const Integer& lo, const Integer& hi, unsigned e,
                                            const Integer& c, const Integer& pa,
                                            const Integer& M) {
  Integer acc = 0;
  for (Integer s = lo; s < hi; ++s)
    acc = (acc + mod_pow(s, e, M) * mod_floor(floor_div(s * c, pa), M)) % M;
  return acc;
}

}  // namespace detail

/// Generalized Voronoi congruence mod p^{a+b}:
/// N'_{2k} p^b (c^{2k}-1) = D'_{2k} c^{2k-1} sum_{s<p^{a+b}} s^{2k-1} [sc/p^a].
inline VerificationResult verify_voronoi(std::int64_t p, int a, int b, std::int64_t c, int k,
                                         const BernoulliTable& table) {
  detail::check_voronoi_inputs("verify_voronoi", p, a, b, c, k);
  const RRConstants rc = table.rr_constants(k);
  const Integer pa = int_pow(Integer(p), static_cast<unsigned>(a));
  const Integer M = int_pow(Integer(p), static_cast<unsigned>(a + b));
  const Integer lhs =
      rc.n2k_prime * int_pow(Integer(p), static_cast<unsigned>(b)) *
      (int_pow(Integer(c), static_cast<unsigned>(2 * k)) - 1);
  const Integer sum = detail::floor_weighted_power_sum_mod(
      0, M, static_cast<unsigned>(2 * k - 1), Integer(c), pa, M);
  const Integer rhs = rc.d2k_prime * mod_pow(Integer(c), Integer(2 * k - 1), M) % M * sum;
  return make_result("voronoi",
                     "p=" + std::to_string(p) + " a=" + std::to_string(a) +
                         " b=" + std::to_string(b) + " c=" + std::to_string(c) +
                         " k=" + std::to_string(k),
                     M, lhs, rhs);
}

enum class PorubskyEq { por1, por2 };

inline const char* to_string(PorubskyEq eq) { return eq == PorubskyEq::por1 ? "por1" : "por2"; }

/// Localized congruences mod N for an integer c prime to N:
///   por1: (c^{2k}-1) B_{2k}/2k + correction = c^{2k-1} sum_x x^{2k-1}[cx/N]
///   por2: (c^{2k}-1) B_{2k}/2k            = same right-hand side,
/// where por2 additionally requires N odd or N(c-1) = 0 mod 8, and the por1
/// correction is ((c^{2k}-c^{2k-1})/2)((2k-1)/2) B_{2k-2} N^2 for k >= 2. For
/// k = 1 that expression degenerates: the factor N^2 B_0 must be read as a
/// single N, giving (c^2-c)N/4; the N^2 B_0 form is false for even N.
inline VerificationResult verify_porubsky(std::int64_t N, std::int64_t c, int k, PorubskyEq eq,
                                          const BernoulliTable& table) {
  if (N < 1) throw PreconditionError("verify_porubsky: modulus must be >= 1");
  if (k < 1) throw PreconditionError("verify_porubsky: index must be >= 1");
  if (std::gcd(c, N) != 1)
    throw PreconditionError("verify_porubsky: c = " + std::to_string(c) +
                            " is not prime to N = " + std::to_string(N));
  if (eq == PorubskyEq::por2 && N % 2 == 0 && (N * (c - 1)) % 8 != 0)
    throw PreconditionError("verify_porubsky: side condition fails for por2 (N even and N(c-1) "
                            "not divisible by 8)");
  const Integer NN(N);
  const Integer c2k = int_pow(Integer(c), static_cast<unsigned>(2 * k));
  const Integer c2k1 = int_pow(Integer(c), static_cast<unsigned>(2 * k - 1));
  const Rational leading = Rational(c2k - 1) * table.bernoulli(k) / (2 * k);
  if (gcd(denom(leading), NN) != 1)
    throw NotLocalizedError("(c^2k - 1) B_2k / 2k has denominator " + denom(leading).str() +
                            " sharing a factor with N = " + NN.str());
  Rational lhs_rat = leading;
  if (eq == PorubskyEq::por1) {
    Rational correction = Rational(c2k - c2k1, 2) * Rational(2 * k - 1, 2);
    correction *= k == 1 ? Rational(NN) : table.bernoulli(k - 1) * NN * NN;
    if (gcd(denom(correction), NN) != 1)
      throw NotLocalizedError("correction term has denominator " + denom(correction).str() +
                              " sharing a factor with N = " + NN.str());
    lhs_rat += correction;
  }
  Integer sum = 0;
  for (std::int64_t x = 1; x < N; ++x)
    sum += int_pow(Integer(x), static_cast<unsigned>(2 * k - 1)) * ((c * x) / N);
  const Rational rhs_rat = Rational(c2k1 * sum);

  VerificationResult out;
  out.check = std::string("porubsky-") + to_string(eq);
  out.witness = "N=" + std::to_string(N) + " c=" + std::to_string(c) +
                " k=" + std::to_string(k) + " eq=" + to_string(eq);
  out.modulus = NN;
  out.lhs = rational_to_residue(lhs_rat, NN);
  out.rhs = rational_to_residue(rhs_rat, NN);
  out.holds = congruent_localized(lhs_rat, rhs_rat, NN);
  return out;
}

/// The two vanishing lemmas and their combination, all mod p^{a+b}:
///   vanish1:      D' sum_{j<p^b} sum_{s<p^a} j (s + j p^a)^{2k-1} = 0
///   vanish2:      D' sum_{j,s} (s + j p^a)^{2k-1} [sc/p^a]
///                   = D' p^b sum_{s<p^a} s^{2k-1} [sc/p^a]
///   intermediate: D' p^b sum_{s<p^a} s^{2k-1} [sc/p^a]
///                   = D' sum_{s<p^{a+b}} s^{2k-1} [sc/p^a]
/// holds is the conjunction; lhs/rhs report the first failing pair (the
/// intermediate pair when everything holds) and witness names each verdict.
inline VerificationResult verify_vanishing_lemmas(std::int64_t p, int a, int b, std::int64_t c,
                                                  int k, const BernoulliTable& table) {
  detail::check_voronoi_inputs("verify_vanishing_lemmas", p, a, b, c, k);
  if (a < 1) throw PreconditionError("verify_vanishing_lemmas: a must be >= 1");
  const RRConstants rc = table.rr_constants(k);
  const Integer dp = rc.d2k_prime;
  const Integer pa = int_pow(Integer(p), static_cast<unsigned>(a));
  const Integer pb = int_pow(Integer(p), static_cast<unsigned>(b));
  const Integer M = pa * pb;
  const unsigned e = static_cast<unsigned>(2 * k - 1);

  Integer double_weighted = 0;  // sum j (s + j p^a)^{2k-1}
  Integer double_floor = 0;     // sum (s + j p^a)^{2k-1} [sc/p^a]
  for (Integer j = 0; j < pb; ++j)
    for (Integer s = 0; s < pa; ++s) {
      const Integer base = mod_pow(s + j * pa, e, M);
      double_weighted = (double_weighted + j % M * base) % M;
      double_floor = (double_floor + base * mod_floor(floor_div(s * c, pa), M)) % M;
    }
  const Integer single_floor =
      detail::floor_weighted_power_sum_mod(0, pa, e, Integer(c), pa, M);
  const Integer full_floor = detail::floor_weighted_power_sum_mod(0, M, e, Integer(c), pa, M);

  const Integer v1 = dp * double_weighted % M;
  const Integer v2_lhs = dp * double_floor % M;
  const Integer v2_rhs = dp * pb % M * single_floor % M;
  const Integer ic_rhs = dp * full_floor % M;
  const bool ok1 = v1 == 0;
  const bool ok2 = v2_lhs == v2_rhs;
  const bool ok3 = v2_rhs == ic_rhs;

  Integer lhs = v2_rhs, rhs = ic_rhs;
  if (!ok1) {
    lhs = v1;
    rhs = 0;
  } else if (!ok2) {
    lhs = v2_lhs;
    rhs = v2_rhs;
  }
  VerificationResult out = make_result(
      "vanishing",
      "p=" + std::to_string(p) + " a=" + std::to_string(a) + " b=" + std::to_string(b) +
          " c=" + std::to_string(c) + " k=" + std::to_string(k) +
          " vanish1=" + (ok1 ? "ok" : "fail") + " vanish2=" + (ok2 ? "ok" : "fail") +
          " intermediate=" + (ok3 ? "ok" : "fail"),
      M, lhs, rhs);
  out.holds = ok1 && ok2 && ok3;
  return out;
}

/// Per-branch-point reduction mod p^{a+b}: with c* c = 1 (mod p^{a+b}),
/// N' p^b ((c*)^{2k-1} - c) = -D' sum_{j<p^{a+b}} j^{2k-1} [jc/p^a].
inline VerificationResult verify_presum(std::int64_t p, int a, int b, std::int64_t c, int k,
                                        const BernoulliTable& table) {
  detail::check_voronoi_inputs("verify_presum", p, a, b, c, k);
  if (a < 1) throw PreconditionError("verify_presum: a must be >= 1");
  const RRConstants rc = table.rr_constants(k);
  const Integer pa = int_pow(Integer(p), static_cast<unsigned>(a));
  const Integer M = int_pow(Integer(p), static_cast<unsigned>(a + b));
  const Integer c_star = mod_inverse(Integer(c), M);
  const Integer lhs = rc.n2k_prime * int_pow(Integer(p), static_cast<unsigned>(b)) *
                      (int_pow(c_star, static_cast<unsigned>(2 * k - 1)) - c);
  const Integer sum = detail::floor_weighted_power_sum_mod(
      0, M, static_cast<unsigned>(2 * k - 1), Integer(c), pa, M);
  const Integer rhs = -rc.d2k_prime * sum;
  return make_result("presum",
                     "p=" + std::to_string(p) + " a=" + std::to_string(a) +
                         " b=" + std::to_string(b) + " c=" + std::to_string(c) +
                         " k=" + std::to_string(k),
                     M, lhs, rhs);
}

/// Aggregate reduction for a prime-power datum: the multiplicity form of the
/// Newton side equals its floor-sum form mod n,
/// -D' sum_j n_j j^{2k-1} = -D' sum_i sum_j j^{2k-1} [j beta_i / alpha_i].
inline VerificationResult verify_newton_reduction(const FixedPointData& d, int k,
                                                  const BernoulliTable& table) {
  if (k < 1) throw PreconditionError("verify_newton_reduction: index must be >= 1");
  if (!is_prime_power(d.order))
    throw PreconditionError("verify_newton_reduction: order " + std::to_string(d.order) +
                            " is not a prime power");
  const RRConstants rc = table.rr_constants(k);
  const Integer n = d.order;
  const unsigned e = static_cast<unsigned>(2 * k - 1);
  const MultiplicityVector mult = multiplicities(d);
  Integer mult_side = 0;
  for (std::int64_t j = 1; j < d.order; ++j)
    mult_side = (mult_side +
                 mod_floor(Integer(mult.values[static_cast<std::size_t>(j)]), n) *
                     mod_pow(Integer(j), e, n)) %
                n;
  Integer floor_side = 0;
  for (const BranchPoint& bp : d.branch)
    floor_side =
        (floor_side + detail::floor_weighted_power_sum_mod(1, n, e, Integer(bp.beta),
                                                           Integer(bp.alpha), n)) %
        n;
  return make_result("newton2", "data=" + d.to_string() + " k=" + std::to_string(k), n,
                     -rc.d2k_prime * mult_side, -rc.d2k_prime * floor_side);
}

/// Inclusive integer range; empty when hi < lo.
struct Range {
  std::int64_t lo = 0;
  std::int64_t hi = -1;
  bool empty() const { return hi < lo; }
};

struct SweepOptions {
  int jobs = 1;
  EnumerationLimits limits{};
};

/// Deterministic record of a sweep: all case results in canonical order,
/// failing cases repeated in failures, cases whose terms fell outside the
/// localization counted in skipped.
struct SweepReport {
  std::string check;
  std::string ranges;
  std::size_t total = 0;
  std::vector<VerificationResult> results;
  std::vector<VerificationResult> failures;
  std::size_t skipped = 0;
  double elapsed_seconds = 0;
};

namespace detail {

/// Apply fn to every case, preserving case order in the output regardless of
/// the worker count; fn returns nullopt for diagnostic skips.
template <typename Case, typename Fn>
inline std::vector<std::optional<VerificationResult>> run_cases(const std::vector<Case>& cases,
                                                                Fn fn, int jobs) {
  std::vector<std::optional<VerificationResult>> results(cases.size());
  if (jobs < 2 || cases.size() < 2) {
    for (std::size_t i = 0; i < cases.size(); ++i) results[i] = fn(cases[i]);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cases.size()) return;
      try {
        results[i] = fn(cases[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int count = std::min<std::int64_t>(jobs, static_cast<std::int64_t>(cases.size()));
  pool.reserve(static_cast<std::size_t>(count));
  for (int t = 0; t < count; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return results;
}

template <typename Case, typename Fn>
inline SweepReport run_sweep(std::string check, std::string ranges,
                             const std::vector<Case>& cases, Fn fn, int jobs) {
  const auto start = std::chrono::steady_clock::now();
  SweepReport report;
  report.check = std::move(check);
  report.ranges = std::move(ranges);
  report.total = cases.size();
  auto outcomes = run_cases(cases, fn, jobs);
  for (auto& outcome : outcomes) {
    if (!outcome) {
      ++report.skipped;
      continue;
    }
    if (!outcome->holds) report.failures.push_back(*outcome);
    report.results.push_back(std::move(*outcome));
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

inline std::string range_text(const char* name, const Range& r) {
  return std::string(name) + "=" + std::to_string(r.lo) + ".." + std::to_string(r.hi);
}

}  // namespace detail

/// verify_main over every enumerated datum in the genus/order ranges and
/// every k in the index range.
inline SweepReport sweep_main(Range genus, Range order, Range index, bool prime_powers_only,
                              const BernoulliTable& table, const SweepOptions& opts = {}) {
  struct Case {
    FixedPointData data;
    int k;
  };
  std::vector<Case> cases;
  if (!genus.empty() && !order.empty() && !index.empty()) {
    if (order.hi > opts.limits.max_order)
      throw BoundError("sweep_main: order bound " + std::to_string(order.hi) +
                       " exceeds the configured limit " + std::to_string(opts.limits.max_order));
    table.ensure(static_cast<int>(index.hi));
    for (std::int64_t g = std::max<std::int64_t>(genus.lo, 2); g <= genus.hi; ++g)
      for (std::int64_t n = std::max<std::int64_t>(order.lo, 1); n <= order.hi; ++n) {
        if (prime_powers_only && !is_prime_power(n)) continue;
        for (FixedPointData& d : enumerate_data(g, n, opts.limits))
          for (std::int64_t k = std::max<std::int64_t>(index.lo, 1); k <= index.hi; ++k)
            cases.push_back(Case{d, static_cast<int>(k)});
      }
  }
  return detail::run_sweep(
      "main",
      detail::range_text("g", genus) + " " + detail::range_text("n", order) + " " +
          detail::range_text("k", index) + (prime_powers_only ? " prime-powers-only" : ""),
      cases,
      [&table](const Case& c) -> std::optional<VerificationResult> {
        return verify_main(c.data, c.k, table);
      },
      opts.jobs);
}

/// verify_voronoi over primes p <= p_max, a+b <= ab_max, 1 <= c <= c_max with
/// gcd(c, p) = 1, 1 <= k <= k_max.
inline SweepReport sweep_voronoi(std::int64_t p_max, int ab_max, std::int64_t c_max, int k_max,
                                 const BernoulliTable& table, const SweepOptions& opts = {}) {
  struct Case {
    std::int64_t p;
    int a, b;
    std::int64_t c;
    int k;
  };
  std::vector<Case> cases;
  if (k_max >= 1) table.ensure(k_max);
  for (std::int64_t p : primes_upto(p_max))
    for (int a = 0; a <= ab_max; ++a)
      for (int b = 0; a + b <= ab_max; ++b)
        for (std::int64_t c = 1; c <= c_max; ++c) {
          if (c % p == 0) continue;
          for (int k = 1; k <= k_max; ++k) cases.push_back(Case{p, a, b, c, k});
        }
  return detail::run_sweep(
      "voronoi",
      "p<=" + std::to_string(p_max) + " a+b<=" + std::to_string(ab_max) +
          " c<=" + std::to_string(c_max) + " k<=" + std::to_string(k_max),
      cases,
      [&table](const Case& c) -> std::optional<VerificationResult> {
        return verify_voronoi(c.p, c.a, c.b, c.c, c.k, table);
      },
      opts.jobs);
}

/// verify_porubsky over 1 <= N <= n_max, 1 <= c <= c_max with gcd(c, N) = 1,
/// 1 <= k <= k_max, restricted to cases satisfying the por2 side condition
/// when eq = por2; cases whose terms fall outside Z_(N) are skipped and
/// counted, not failed.
inline SweepReport sweep_porubsky(std::int64_t n_max, std::int64_t c_max, int k_max,
                                  PorubskyEq eq, const BernoulliTable& table,
                                  const SweepOptions& opts = {}) {
  struct Case {
    std::int64_t N, c;
    int k;
  };
  std::vector<Case> cases;
  if (k_max >= 1) table.ensure(k_max);
  for (std::int64_t N = 1; N <= n_max; ++N)
    for (std::int64_t c = 1; c <= c_max; ++c) {
      if (std::gcd(c, N) != 1) continue;
      if (eq == PorubskyEq::por2 && N % 2 == 0 && (N * (c - 1)) % 8 != 0) continue;
      for (int k = 1; k <= k_max; ++k) cases.push_back(Case{N, c, k});
    }
  return detail::run_sweep(
      std::string("porubsky-") + to_string(eq),
      "N<=" + std::to_string(n_max) + " c<=" + std::to_string(c_max) +
          " k<=" + std::to_string(k_max) + " eq=" + to_string(eq),
      cases,
      [&table, eq](const Case& c) -> std::optional<VerificationResult> {
        try {
          return verify_porubsky(c.N, c.c, c.k, eq, table);
        } catch (const NotLocalizedError&) {
          return std::nullopt;
        }
      },
      opts.jobs);
}

}  // namespace rrlab
