#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "khplumb/chain.hpp"
#include "khplumb/homology.hpp"
#include "support.hpp"

using namespace khplumb;
using namespace testing_support;

namespace {

EnhancedState at(const DiagramPtr& d, const char* word, const char* labels) { return enhance(resolve(d, word), labels); }

}  // namespace

TEST(Chain, MergeRules) {
  auto t = trefoil();
  // every A-arc of AAA joins its two circles
  for (int c = 0; c < 3; ++c) EXPECT_TRUE(d_at_crossing(at(t, "AAA", "11"), c, Ring::Z).is_zero());
  Chain d0 = d_at_crossing(at(t, "AAA", "01"), 0, Ring::Z);
  EXPECT_EQ(d0, Chain::of(at(t, "BAA", "1"), Ring::Z));
  Chain d00 = d_at_crossing(at(t, "AAA", "00"), 2, Ring::Z);
  EXPECT_EQ(d00, Chain::of(at(t, "AAB", "0"), Ring::Z));
}

TEST(Chain, SplitRulesAndSigns) {
  auto t = trefoil();
  ASSERT_EQ(resolve(t, "BAA").circle_count(), 1);
  ASSERT_EQ(resolve(t, "BBA").circle_count(), 2);
  Chain one = d_at_crossing(at(t, "BAA", "1"), 1, Ring::Z);
  EXPECT_EQ(one, Chain::of(at(t, "BBA", "11"), Ring::Z));
  Chain zero = d_at_crossing(at(t, "BAA", "0"), 1, Ring::Z);
  EXPECT_EQ(zero, Chain::of(at(t, "BBA", "10"), Ring::Z) + Chain::of(at(t, "BBA", "01"), Ring::Z));
  // the sign counts A-smoothings before the flipped crossing
  Chain later = differential(Chain::of(at(t, "AAB", "0"), Ring::Z));
  EXPECT_EQ(later.coefficient(at(t, "ABB", "10").key()), -1);
  EXPECT_EQ(later.coefficient(at(t, "ABB", "01").key()), -1);
  Chain full = differential(Chain::of(at(t, "AAA", "01"), Ring::Z));
  EXPECT_EQ(full, Chain::of(at(t, "BAA", "1"), Ring::Z) - Chain::of(at(t, "ABA", "1"), Ring::Z) +
                      Chain::of(at(t, "AAB", "1"), Ring::Z));
}

TEST(Chain, ArithmeticAndAugmentation) {
  auto t = trefoil();
  Chain x = Chain::of(at(t, "AAA", "01"), Ring::F2);
  EXPECT_TRUE((x + x).is_zero());
  Chain z = Chain::of(at(t, "AAA", "01"), Ring::Z) * 3 - Chain::of(at(t, "AAA", "10"), Ring::Z);
  EXPECT_EQ(augmentation(z), 2);
  EXPECT_EQ(augmentation(Chain::of(at(t, "AAA", "01"), Ring::F2) * 2), 0);
  EXPECT_EQ(z.grading(), (BiGrading{0, 3}));
  Chain mixed = z + Chain::of(at(t, "AAA", "11"), Ring::Z);
  EXPECT_FALSE(mixed.grading().has_value());
  EXPECT_THROW(x + z, std::invalid_argument);
}

TEST(Chain, DifferentialIsHomogeneousOfDegreeOneZero) {
  for (const auto& [name, d] : corpus_upto(6)) {
    for (const State& x : enumerate_states(d)) {
      for (const EnhancedState& X : enumerate_enhancements(x)) {
        Chain dx = differential(Chain::of(X, Ring::Z));
        if (dx.is_zero()) continue;
        BiGrading g = bigrading(X);
        ASSERT_TRUE(dx.grading().has_value()) << name;
        EXPECT_EQ(*dx.grading(), (BiGrading{g.i + 1, g.j})) << name << " " << x.word();
      }
    }
  }
}

TEST(Chain, DSquaredVanishesOnCorpus) {
  for (const auto& [name, d] : corpus_upto(8)) {
    for (const State& x : enumerate_states(d))
      for (const EnhancedState& X : enumerate_enhancements(x))
        for (Ring r : {Ring::F2, Ring::Z, Ring::Q})
          ASSERT_TRUE(differential(differential(Chain::of(X, r))).is_zero())
              << name << " " << x.word() << "/" << X.label_word() << " " << ring_name(r);
  }
}

// Reordering the crossing list only changes signs of terms.
TEST(Chain, CrossingOrderOnlyAffectsSigns) {
  std::mt19937_64 rng(7);
  for (const char* name : {"trefoil_rh.pd", "figure_eight.pd", "fig2.pd"}) {
    auto d = corpus(name);
    const int n = d->crossing_count();
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<int> perm(n);  // new position k holds old crossing perm[k]
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<Crossing> cs;
      for (int k = 0; k < n; ++k) cs.push_back(d->crossings()[perm[k]]);
      auto e = share(LinkDiagram(cs, d->free_loops(), d->reversed()));
      auto to_new = [&](Smoothing s) {
        Smoothing out = 0;
        for (int k = 0; k < n; ++k)
          if ((s >> perm[k]) & 1U) out |= Smoothing{1} << k;
        return out;
      };
      for (Smoothing s = 0; s < (Smoothing{1} << n); s += 7) {
        State x(d, s), y(e, to_new(s));
        ASSERT_EQ(x.circle_ids(), y.circle_ids());
        for (const EnhancedState& X : enumerate_enhancements(x)) {
          Chain dx = differential(Chain::of(X, Ring::Z));
          Chain dy = differential(Chain::of(EnhancedState(y, X.labels()), Ring::Z));
          ASSERT_EQ(dx.size(), dy.size());
          for (const auto& [k, c] : dx.terms()) {
            Scalar other = dy.coefficient({to_new(k.s), k.l});
            EXPECT_TRUE(other == c || other == -c) << name;
          }
          EXPECT_TRUE(differential(dy).is_zero());
        }
      }
    }
  }
}

TEST(Chain, NormalizedDifferentialSquaresToZero) {
  for (const auto& [name, d] : corpus_upto(6)) {
    if (d->edge_count() == 0) continue;
    const int p = d->edge_label(0);
    for (const State& x : enumerate_states(d)) {
      const int pc = x.circle_index(x.circle_of(p));
      for (const EnhancedState& X : enumerate_enhancements(x)) {
        const int side = X.label(pc);
        Chain c = Chain::of(X, Ring::Z);
        Chain dc = normalized_differential(c, p, side);
        EXPECT_TRUE(normalized_differential(dc, p, side).is_zero()) << name;
        EXPECT_EQ(normalized_j(X, side), bigrading(X).j + (side ? 1 : -1));
      }
    }
  }
}

TEST(Chain, NormalizedDifferentialRejectsWrongSide) {
  auto t = trefoil();
  EnhancedState X = at(t, "AAA", "01");
  const int p = X.state().circle_ids()[0];
  EXPECT_THROW(normalized_differential(Chain::of(X, Ring::Z), p, 1), std::invalid_argument);
  EXPECT_THROW(normalized_differential(Chain::of(X, Ring::Z), p, 2), std::invalid_argument);
}

TEST(Chain, ProjectKeepsBasis) {
  auto t = trefoil();
  Chain c = Chain::of(at(t, "AAA", "01"), Ring::Z) + Chain::of(at(t, "AAA", "10"), Ring::Z);
  std::set<EnhancedKey, KeyLess> basis{at(t, "AAA", "01").key()};
  EXPECT_EQ(project(c, basis), Chain::of(at(t, "AAA", "01"), Ring::Z));
}
