#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "rrlab/arith.hpp"

namespace rrlab {

struct CacheError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The reduced constants attached to B_{2k}: B_{2k} = n2k/d2k and
/// B_{2k}/2k = n2k_prime/d2k_prime, both fractions reduced, denominators > 0.
struct RRConstants {
  int k = 0;
  Integer n2k, d2k;
  Integer n2k_prime, d2k_prime;
};

/// Memoized table of even-index Bernoulli numbers under the convention
/// z/(e^z-1) + z/2 = 1 + sum_{k>=1} B_{2k} z^{2k}/(2k)!, so B_2 = 1/6,
/// B_4 = -1/30, B_6 = 1/42, B_8 = -1/30, B_10 = 5/66.
///
/// Entries are computed bottom-up from the defining recurrence
/// sum_{j=0}^{m} C(m+1,j) B_j = 0 over exact rationals and never change once
/// computed. All public methods are safe to call concurrently; results equal
/// those of a single-threaded run.
class BernoulliTable {
 public:
  BernoulliTable() = default;
  BernoulliTable(const BernoulliTable&) = delete;
  BernoulliTable& operator=(const BernoulliTable&) = delete;

  /// B_{2k}, k >= 1.
  Rational bernoulli(int k) const {
    if (k < 1) throw PreconditionError("bernoulli: index must be >= 1");
    std::lock_guard<std::mutex> lock(mu_);
    extend_locked(2 * k);
    return all_[static_cast<std::size_t>(2 * k)];
  }

  RRConstants rr_constants(int k) const {
    Rational b = bernoulli(k);
    Rational bp = b / (2 * k);
    return RRConstants{k, numer(b), denom(b), numer(bp), denom(bp)};
  }

  /// Largest k with a computed entry (0 when empty).
  int max_index() const {
    std::lock_guard<std::mutex> lock(mu_);
    return all_.empty() ? 0 : static_cast<int>((all_.size() - 1) / 2);
  }

  /// Precompute entries through B_{2k}.
  void ensure(int k) const {
    if (k < 1) return;
    std::lock_guard<std::mutex> lock(mu_);
    extend_locked(2 * k);
  }

  /// Write all computed entries, one line per entry: 2k<TAB>N<TAB>D.
  void save_file(const std::string& path) const {
    std::lock_guard<std::mutex> lock(mu_);
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw CacheError("cannot open cache file for writing: " + path);
    for (std::size_t m = 2; m < all_.size(); m += 2) {
      const Rational& b = all_[m];
      out << m << '\t' << numer(b) << '\t' << denom(b) << '\n';
    }
    if (!out) throw CacheError("failed writing cache file: " + path);
  }

  /// Load entries from a cache file, validating every line against the
  /// defining recurrence before trusting it. Lines must be ascending and
  /// contiguous (2, 4, 6, ...). Throws CacheError on any corrupt entry.
  void load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CacheError("cannot open cache file: " + path);
    std::vector<Rational> staged{Rational(1), Rational(-1, 2)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      std::istringstream row(line);
      std::string f0, f1, f2, extra;
      if (!(row >> f0 >> f1 >> f2) || (row >> extra))
        throw CacheError(cache_diag(path, lineno, "expected three fields"));
      Integer m, num, den;
      try {
        m = Integer(f0);
        num = Integer(f1);
        den = Integer(f2);
      } catch (const std::exception&) {
        throw CacheError(cache_diag(path, lineno, "non-numeric field"));
      }
      if (m != Integer(staged.size()) || m % 2 != 0)
        throw CacheError(cache_diag(path, lineno, "index " + m.str() +
                                                      " out of order (expected " +
                                                      std::to_string(staged.size()) + ")"));
      if (den <= 0 || gcd(num < 0 ? Integer(-num) : num, den) != 1)
        throw CacheError(cache_diag(path, lineno, "entry is not a reduced fraction"));
      Rational candidate(num, den);
      // Recurrence check: sum_{j=0}^{m} C(m+1,j) B_j = 0 with the candidate as B_m.
      Rational acc = candidate * Integer(m + 1);
      Integer binom = 1;
      for (std::size_t j = 0; j < staged.size(); ++j) {
        acc += Rational(binom) * staged[j];
        binom = binom * (m + 1 - j) / (j + 1);
      }
      if (acc != 0)
        throw CacheError(cache_diag(path, lineno, "value fails the Bernoulli recurrence"));
      staged.push_back(candidate);
      staged.push_back(Rational(0));  // odd index above 1
    }
    if (staged.size() > 2) staged.pop_back();  // no trailing odd slot
    std::lock_guard<std::mutex> lock(mu_);
    if (staged.size() > all_.size()) all_ = std::move(staged);
  }

 private:
  static std::string cache_diag(const std::string& path, std::size_t lineno,
                                const std::string& what) {
    return "bernoulli cache " + path + " line " + std::to_string(lineno) + ": " + what;
  }

  // Extend all_ through index m. all_ holds B_0, B_1, B_2, ... with
  // B_1 = -1/2 (the +z/2 convention exposes only even indices).
  void extend_locked(int m) const {
    if (all_.empty()) {
      all_.push_back(Rational(1));
      all_.push_back(Rational(-1, 2));
    }
    while (static_cast<int>(all_.size()) <= m) {
      const std::size_t mm = all_.size();
      if (mm % 2 == 1) {
        all_.push_back(Rational(0));
        continue;
      }
      Rational acc = 0;
      Integer binom = 1;  // C(mm+1, 0)
      for (std::size_t j = 0; j < mm; ++j) {
        acc += Rational(binom) * all_[j];
        binom = binom * (mm + 1 - j) / (j + 1);
      }
      all_.push_back(-acc / Integer(mm + 1));
    }
  }

  mutable std::mutex mu_;
  mutable std::vector<Rational> all_;
};

/// Product of all primes p with (p-1) | 2k: the independent route to D_{2k}.
inline Integer von_staudt_clausen_denominator(int k) {
  if (k < 1) throw PreconditionError("von_staudt_clausen_denominator: index must be >= 1");
  Integer out = 1;
  for (std::int64_t p : primes_upto(2 * static_cast<std::int64_t>(k) + 1))
    if ((2 * k) % (p - 1) == 0) out *= p;
  return out;
}

}  // namespace rrlab
