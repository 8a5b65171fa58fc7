#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rankzipf/enumeration.hpp"
#include "rankzipf/pascal_simplex.hpp"
#include "rankzipf/suites.hpp"

using namespace rankzipf;

TEST(QTilde, Examples) {
  const auto pair = build_alphabet(std::vector<double>{0.5, 0.5});
  EXPECT_EQ(q_tilde(pair, -1.0), 0);
  EXPECT_EQ(q_tilde(pair, 0.0), 1);
  EXPECT_EQ(q_tilde(pair, 3 * std::log(2.0)), 15);
  const auto tri = build_alphabet(std::vector<double>{0.5, 0.3, 0.2});
  EXPECT_EQ(q_tilde(tri, 0.0), 1);
  EXPECT_EQ(q_tilde(tri, 0.69), 1);
  EXPECT_EQ(q_tilde(tri, 0.7), 2);
}

TEST(QTilde, UniformPairClosedForm) {
  const auto pair = build_alphabet(std::vector<double>{0.5, 0.5});
  for (int m = 0; m < 80; ++m) {
    const BigInt expected = (BigInt(1) << (m + 1)) - 1;
    EXPECT_EQ(q_tilde(pair, m * std::log(2.0)), expected);
    EXPECT_EQ(q_tilde(pair, (m + 0.5) * std::log(2.0)), expected);
  }
}

TEST(QTildeProperty, MatchesStreamCumulativeCount) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 5; ++t) {
    const auto a = build_alphabet(random_distribution(rng(), 2 + t % 3));
    const auto w = letter_weights(a);
    std::uniform_real_distribution<double> u(0.0, 14.0);
    for (int s = 0; s < 20; ++s) {
      const double z = u(rng);
      Enumerator e(w);
      BigInt total = 0;
      for (;;) {
        const auto c = e.next();
        if (!weight_within(c.weight, z)) break;
        total = c.last_rank;
      }
      ASSERT_EQ(q_tilde(w, z), total) << "z=" << z;
    }
  }
}

TEST(ClassTable, AgreesWithDirectCount) {
  const auto w = letter_weights(build_alphabet(std::vector<double>{0.5, 0.3, 0.2}));
  const auto table = ClassTable::collect(w, 25.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 25.0);
  for (int s = 0; s < 50; ++s) {
    const double z = u(rng);
    EXPECT_EQ(table.count_at(z), q_tilde(w, z));
  }
  EXPECT_TRUE(std::is_sorted(table.sorted_weights().begin(), table.sorted_weights().end()));
  EXPECT_THROW(table.count_at(26.0), std::out_of_range);
  EXPECT_THROW(ClassTable::collect(w, 25.0, 10), BudgetExceeded);
}

TEST(WeightTolerance, Definitions) {
  EXPECT_TRUE(weights_equal(1.0, 1.0 + 1e-13));
  EXPECT_FALSE(weights_equal(1.0, 1.0 + 1e-10));
  EXPECT_TRUE(weight_within(1.0 + 1e-13, 1.0));
  EXPECT_FALSE(weight_within(1.0 + 1e-10, 1.0));
}

TEST(ClassWeight, CompensatedSum) {
  const auto w = make_weights({std::log(2.0), std::log(3.0)});
  EXPECT_NEAR(class_weight(w, Composition{1000, 1000}), 1000 * std::log(6.0), 1e-10);
  EXPECT_EQ(class_weight(w, Composition{0, 0}), 0.0);
}

TEST(SimplexVolume, TwoLetters) {
  const auto w = make_weights({1.0, 2.0});
  EXPECT_NEAR(simplex_volume(w, 4.0), 4.0, 1e-12);
  EXPECT_EQ(simplex_volume(w, -1.0), 0.0);
}
