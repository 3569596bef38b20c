#include <gtest/gtest.h>

#include <numeric>

#include "lgcone/model.hpp"

using namespace lgcone;

namespace {

CorrelatorKey key(std::vector<int> heavy, std::vector<int> light = {},
                  Epsilon eps = Epsilon::infinity()) {
  CorrelatorKey k;
  for (int h : heavy) k.heavy.emplace_back(h, 0);
  k.light = std::move(light);
  k.epsilon = eps;
  return k;
}

// Narrow set straight from the definition, using integer arithmetic only.
std::vector<int> narrow_oracle(const std::vector<int>& w, int d) {
  std::vector<int> out;
  for (int k = 0; k < d; ++k) {
    bool ok = true;
    for (int wj : w)
      if ((wj * (k + 1)) % d == 0) ok = false;
    if (ok) out.push_back(k);
  }
  return out;
}

std::vector<std::pair<std::vector<int>, int>> all_models() {
  // Every Fermat weight system with N <= 3 and d <= 12.
  std::vector<std::pair<std::vector<int>, int>> out;
  for (int d = 2; d <= 12; ++d) {
    std::vector<int> divs;
    for (int w = 1; w <= d; ++w)
      if (d % w == 0) divs.push_back(w);
    for (int a : divs) {
      if (std::gcd(a, d) == 1) out.push_back({{a}, d});
      for (int b : divs) {
        if (b < a) continue;
        if (std::gcd(std::gcd(a, b), d) == 1) out.push_back({{a, b}, d});
        for (int c : divs)
          if (c >= b && std::gcd(std::gcd(std::gcd(a, b), c), d) == 1) out.push_back({{a, b, c}, d});
      }
    }
  }
  return out;
}

}  // namespace

TEST(BuildModel, ThreeSpin) {
  const LgModel m = build_model({1}, 3);
  EXPECT_EQ(m.charges(), std::vector<Rational>{make_rational(1, 3)});
  EXPECT_EQ(m.narrow(), (std::vector<int>{0, 1}));
}

TEST(BuildModel, Quintic) {
  const LgModel m = build_model({1, 1, 1, 1, 1}, 5);
  EXPECT_EQ(m.narrow(), (std::vector<int>{0, 1, 2, 3}));
  for (int k = 0; k < 4; ++k) EXPECT_EQ(m.state_degree(k), k);
  EXPECT_EQ(m.total_charge(), 1);
  EXPECT_EQ(m.name(), "W(1,1,1,1,1;5)");
}

TEST(BuildModel, WeightedSextic) {
  const LgModel m = build_model({2, 1}, 6);
  EXPECT_EQ(m.charges(), (std::vector<Rational>{make_rational(1, 3), make_rational(1, 6)}));
  EXPECT_EQ(m.narrow(), (std::vector<int>{0, 1, 3, 4}));
}

TEST(BuildModel, RejectsBadInput) {
  EXPECT_THROW(build_model({2}, 4), ModelError);      // gcd 2
  EXPECT_THROW(build_model({3, 1}, 5), ModelError);   // 3 does not divide 5
  EXPECT_THROW(build_model({1}, 1), ModelError);      // d < 2
  EXPECT_THROW(build_model({}, 5), ModelError);
  EXPECT_THROW(build_model({0, 1}, 5), ModelError);
  try {
    build_model({2, 2}, 4);
    FAIL();
  } catch (const ModelError& e) {
    EXPECT_NE(std::string(e.what()).find("gcd"), std::string::npos);
  }
  try {
    build_model({3, 1}, 5);
    FAIL();
  } catch (const ModelError& e) {
    EXPECT_NE(std::string(e.what()).find("Fermat"), std::string::npos);
  }
}

TEST(Pairing, Examples) {
  const LgModel m3 = build_model({1}, 3), m5 = build_model({1, 1, 1, 1, 1}, 5);
  EXPECT_EQ(m3.pairing(0, 1), 1);
  EXPECT_EQ(m5.pairing(1, 1), 0);
  EXPECT_EQ(m5.pairing(0, 3), 1);
  EXPECT_EQ(m5.pairing(1, 2), 1);
  EXPECT_THROW(m3.pairing(2, 0), ModelError);
}

TEST(GroupProduct, Examples) {
  const LgModel m5 = build_model({1, 1, 1, 1, 1}, 5), m3 = build_model({1}, 3);
  EXPECT_EQ(m5.group_product(1, 1), 2);
  int k = 0;
  for (int i = 0; i < 5; ++i) k = m5.group_product(k, 1);
  EXPECT_EQ(k, 0);
  EXPECT_EQ(m3.group_product(1, 1), 2);
  EXPECT_FALSE(m3.is_narrow(2));
}

TEST(ModuliNonempty, Examples) {
  const LgModel m3 = build_model({1}, 3), m5 = build_model({1, 1, 1, 1, 1}, 5);
  EXPECT_TRUE(moduli_nonempty(m3, key({0, 0, 1})));
  EXPECT_TRUE(moduli_nonempty(m5, key({1, 1, 1})));
  EXPECT_FALSE(moduli_nonempty(m5, key({1}, {1, 3}, Epsilon::of(make_rational(1, 4)))));
  EXPECT_TRUE(moduli_nonempty(m5, key({1, 1}, {1}, Epsilon::of(make_rational(1, 2)))));
}

TEST(WittenDegree, Examples) {
  const LgModel m3 = build_model({1}, 3), m5 = build_model({1, 1, 1, 1, 1}, 5);
  EXPECT_EQ(witten_degree(m5, key({1, 1, 1})), 0);
  EXPECT_EQ(witten_degree(m3, key({0, 0, 1})), 0);
  EXPECT_EQ(witten_degree(m5, key({1, 1, 2})), -1);
}

TEST(TriviallyZero, Examples) {
  const LgModel m3 = build_model({1}, 3), m5 = build_model({1, 1, 1, 1, 1}, 5);
  EXPECT_EQ(trivially_zero(m3, key({0, 2, 0})), Vanishing::broad_insertion);
  EXPECT_EQ(trivially_zero(m5, key({1, 1})), Vanishing::empty_moduli);
  EXPECT_EQ(trivially_zero(m5, key({1, 1, 2})), Vanishing::degree_mismatch);
  EXPECT_EQ(trivially_zero(m5, key({1, 1, 1})), Vanishing::none);
}

TEST(Epsilon, ParseAndCap) {
  EXPECT_EQ(Epsilon::parse("infinity").kind(), Epsilon::Kind::infinity);
  EXPECT_EQ(Epsilon::parse("zero").kind(), Epsilon::Kind::zero);
  EXPECT_EQ(Epsilon::parse("1/2").cap(), 2);
  EXPECT_EQ(Epsilon::parse("2/3").cap(), 2);
  EXPECT_EQ(Epsilon::parse("3/5").cap(), 2);
  EXPECT_EQ(Epsilon::parse("1/3").cap(), 3);
  EXPECT_EQ(Epsilon::parse("2").kind(), Epsilon::Kind::infinity);
  EXPECT_EQ(Epsilon::infinity().cap(), 1);
  EXPECT_THROW(Epsilon::parse("-1/2"), std::exception);
}

TEST(Properties, NarrowSetMatchesDefinitionAndIsSelfDual) {
  for (const auto& [w, d] : all_models()) {
    const LgModel m = build_model(w, d);
    EXPECT_EQ(m.narrow(), narrow_oracle(w, d)) << m.name();
    for (int k : m.narrow()) EXPECT_TRUE(m.is_narrow(m.dual(k))) << m.name() << " k=" << k;
  }
}

TEST(Properties, DegreeSymmetry) {
  for (const auto& [w, d] : all_models()) {
    const LgModel m = build_model(w, d);
    EXPECT_EQ(m.state_degree(0), 0);
    const Rational target = Rational(m.num_variables()) - 2 * m.total_charge();
    for (int k : m.narrow())
      EXPECT_EQ(m.state_degree(k) + m.state_degree(m.dual(k)), target) << m.name() << " k=" << k;
  }
}

TEST(Properties, PairingIsAPermutationMatrix) {
  for (const auto& [w, d] : all_models()) {
    const LgModel m = build_model(w, d);
    for (int i : m.narrow()) {
      int row = 0;
      for (int j : m.narrow()) {
        const Rational p = m.pairing(i, j);
        EXPECT_TRUE(p == 0 || p == 1);
        if (p == 1) ++row;
      }
      EXPECT_EQ(row, 1) << m.name() << " row " << i;
    }
  }
}

TEST(Properties, InfinityChamberHasNoLightPoints) {
  const Epsilon inf = Epsilon::infinity();
  for (int m = 0; m <= 8; ++m)
    for (int n = 1; n <= 8; ++n) EXPECT_FALSE(inf.stable(m, n));
  for (int m = 3; m <= 8; ++m) EXPECT_TRUE(inf.stable(m, 0));
}

TEST(Properties, ShrinkingEpsilonOnlyRemovesStableTypes) {
  const std::vector<Epsilon> chambers{Epsilon::of(1), Epsilon::of(make_rational(1, 2)),
                                      Epsilon::of(make_rational(1, 3)), Epsilon::of(make_rational(1, 7)),
                                      Epsilon::zero()};
  for (int m = 0; m <= 5; ++m)
    for (int n = 0; n <= 6; ++n)
      for (std::size_t i = 0; i + 1 < chambers.size(); ++i)
        if (chambers[i + 1].stable(m, n)) {
          EXPECT_TRUE(chambers[i].stable(m, n)) << m << ',' << n;
        }
}
