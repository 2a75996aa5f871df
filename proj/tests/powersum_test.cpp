#include <gtest/gtest.h>

#include <random>

#include "rrlab/bernoulli.hpp"
#include "rrlab/powersum.hpp"

using namespace rrlab;

TEST(PowerSum, SpecValues) {
  EXPECT_EQ(power_sum(1, 5), 10);
  EXPECT_EQ(power_sum(3, 5), 100);  // 1 + 8 + 27 + 64
  EXPECT_EQ(power_sum(9, 1), 0);
  EXPECT_THROW(power_sum(0, 5), PreconditionError);
}

TEST(PowerSumMod, SpecValues) {
  EXPECT_EQ(power_sum_mod(3, 5, 7), Residue(2, 7));  // 100 mod 7
  EXPECT_EQ(power_sum_mod(4, 1, 11), Residue(0, 11));
  EXPECT_EQ(power_sum_mod(2, 3, 3), Residue(2, 3));  // 1 + 4 = 5
}

TEST(PowerSumMod, AgreesWithExactSum) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::int64_t> ms(1, 9);
  std::uniform_int_distribution<std::int64_t> ns(1, 200);
  std::uniform_int_distribution<std::int64_t> mods(1, 5000);
  for (int i = 0; i < 400; ++i) {
    const std::int64_t m = ms(rng), n = ns(rng), M = mods(rng);
    EXPECT_EQ(power_sum_mod(m, n, M), Residue(power_sum(m, n), M));
  }
}

// 2 S_{2m-1}(n) = 0 and D_{2m} S_{2m}(n) = 0 (mod n).
TEST(PowerSum, CongSumLemma) {
  BernoulliTable table;
  table.ensure(6);
  for (std::int64_t n = 1; n <= 80; ++n)
    for (int m = 1; m <= 6; ++m) {
      EXPECT_EQ(2 * power_sum_mod(2 * m - 1, n, n).value % n, 0) << n << " " << m;
      EXPECT_EQ(table.rr_constants(m).d2k * power_sum_mod(2 * m, n, n).value % n, 0)
          << n << " " << m;
    }
}

// Odd l: 2 S_l(p^b) = 0; even l: p S_l(p^b) = 0 (mod p^b).
TEST(PowerSum, SummationModPrimePowerLemma) {
  for (std::int64_t p : {2, 3, 5})
    for (int b = 1; b <= 3; ++b) {
      Integer pb = int_pow(Integer(p), static_cast<unsigned>(b));
      const std::int64_t bound = pb.convert_to<std::int64_t>();
      for (std::int64_t l = 1; l <= 8; ++l) {
        const Integer s = power_sum_mod(l, bound, pb).value;
        if (l % 2 == 1)
          EXPECT_EQ(2 * s % pb, 0) << p << " " << b << " " << l;
        else
          EXPECT_EQ(p * s % pb, 0) << p << " " << b << " " << l;
      }
    }
}
