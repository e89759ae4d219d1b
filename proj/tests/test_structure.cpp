#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "khplumb/homology.hpp"
#include "khplumb/linalg.hpp"
#include "khplumb/structure.hpp"
#include "support.hpp"

using namespace khplumb;
using namespace testing_support;

namespace {

State corpus_state(const char* file, const char* word) { return resolve(corpus(file), word); }

// Chains supported on one state, as integer columns over a shared row index.
struct Columns {
  std::map<EnhancedKey, int, KeyLess> rows;
  IntMatrix m;
  void add_column(const Chain& c) {
    const int col = m.cols++;
    for (const auto& [k, v] : c.terms()) {
      auto [it, fresh] = rows.emplace(k, static_cast<int>(rows.size()));
      m.entries.push_back({it->second, col, static_cast<int>(v.get_num().get_si())});
    }
    m.rows = static_cast<int>(rows.size());
  }
};

// Zones adequate and labelled all-1 or with a single 0; over Z that zone must
// also be bipartite.
bool generic_labels(const EnhancedState& X, const ZoneDecomposition& z, Ring r) {
  for (const Zone& zone : z.a_zones) {
    for (int t : zone.crossings)
      if (z.graph.edges[t].is_loop()) return false;
    int zeros = 0;
    for (int c : zone.circles) zeros += X.label(c) == 0;
    if (zeros == 0) continue;
    if (zeros > 1 || (r != Ring::F2 && !zone.bipartite)) return false;
  }
  return true;
}

}  // namespace

TEST(Structure, TrefoilZones) {
  auto t = trefoil();
  ZoneDecomposition a = zone_decomposition(resolve(t, "AAA"));
  EXPECT_TRUE(a.homogeneously_adequate());
  ASSERT_EQ(a.a_zones.size(), 1U);
  EXPECT_EQ(a.a_zones[0].circles.size(), 2U);
  EXPECT_TRUE(a.a_zones[0].bipartite);
  EXPECT_TRUE(a.b_zones.empty());
  EXPECT_EQ(a.blocks.size(), 1U);
  ZoneDecomposition b = zone_decomposition(resolve(t, "BBB"));
  EXPECT_TRUE(b.homogeneously_adequate());
  ASSERT_EQ(b.b_zones.size(), 1U);
  EXPECT_EQ(b.b_zones[0].circles.size(), 3U);
  EXPECT_EQ(b.blocks.size(), 1U);  // a triangle
  EXPECT_TRUE(b.cut_circles.empty());
  ZoneDecomposition m = zone_decomposition(resolve(t, "AAB"));
  EXPECT_FALSE(m.adequate);
}

TEST(Structure, Fig2Zones) {
  ZoneDecomposition z = zone_decomposition(corpus_state("fig2.pd", "AAABBBAA"));
  EXPECT_TRUE(z.homogeneously_adequate());
  EXPECT_TRUE(z.connected);
  EXPECT_EQ(z.a_zones.size(), 2U);
  EXPECT_EQ(z.b_zones.size(), 1U);
  EXPECT_TRUE(z.a_zones_bipartite());
}

TEST(Structure, YFamilyHasOddAZone) {
  ZoneDecomposition z = zone_decomposition(corpus_state("yfamily.pd", "BBBAAAAA"));
  EXPECT_TRUE(z.homogeneously_adequate());
  EXPECT_FALSE(z.a_zones_bipartite());
  ZoneDecomposition x = zone_decomposition(corpus_state("xfamily.pd", "BBBAAAAA"));
  EXPECT_TRUE(x.homogeneously_adequate());
  EXPECT_TRUE(x.a_zones_bipartite());
}

// Blocks with cut circles form a forest with one tree per component of G_x.
TEST(Structure, BlockCutTree) {
  for (const auto& [name, d] : corpus_upto(8)) {
    for (const State& x : enumerate_states(d)) {
      ZoneDecomposition z = zone_decomposition(x);
      std::vector<int> seen(d->crossing_count(), 0);
      for (const auto& b : z.blocks)
        for (int t : b) ++seen[t];
      for (int c : seen) ASSERT_EQ(c, 1) << name << " " << x.word();
      // union-find over blocks and cut circles; any cycle would merge twice
      const int nb = static_cast<int>(z.blocks.size()), nv = z.graph.vertex_count;
      std::vector<int> parent(nb + nv);
      for (int k = 0; k < nb + nv; ++k) parent[k] = k;
      std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
      for (int k = 0; k < nb; ++k) {
        std::set<int> verts;
        for (int t : z.blocks[k]) {
          verts.insert(z.graph.edges[t].u);
          verts.insert(z.graph.edges[t].v);
        }
        for (int v : verts) {
          if (!std::binary_search(z.cut_circles.begin(), z.cut_circles.end(), v)) continue;
          const int a = find(k), b = find(nb + v);
          ASSERT_NE(a, b) << "block-cut graph has a cycle: " << name << " " << x.word();
          parent[a] = b;
        }
      }
      // homogeneous iff every block has a single arc kind
      bool homog = true;
      for (const auto& b : z.blocks)
        for (int t : b)
          if (z.graph.edges[t].kind != z.graph.edges[b.front()].kind) homog = false;
      EXPECT_EQ(homog, z.homogeneous);
    }
  }
}

TEST(Structure, EquivalenceClassesOfTrefoil) {
  auto t = trefoil();
  EnhancedState X = enhance(resolve(t, "AAA"), "01");
  EquivalenceClass a = equivalence_class(X, ArcKind::A);
  EXPECT_EQ(a.members.size(), 2U);
  EXPECT_TRUE(a.contains(enhance(resolve(t, "AAA"), "10").key()));
  EquivalenceClass b = equivalence_class(X, ArcKind::B);
  EXPECT_EQ(b.members.size(), 1U);
  EXPECT_THROW(equivalence_class(X, ArcKind::A, 1), CapExceeded);
}

TEST(Structure, ASignAndTrace) {
  auto t = trefoil();
  State x = resolve(t, "AAA");
  EXPECT_EQ(a_sign(enhance(x, "01"), enhance(x, "10")), -1);
  EXPECT_EQ(a_sign(enhance(x, "01"), enhance(x, "01")), 1);
  EXPECT_THROW(a_sign(enhance(x, "01"), enhance(x, "11")), SignUndefined);
  Chain tr = a_trace(enhance(x, "01"), Ring::Z);
  EXPECT_EQ(tr, Chain::of(enhance(x, "01"), Ring::Z) - Chain::of(enhance(x, "10"), Ring::Z));
  EXPECT_TRUE(trace_cycle_check(enhance(x, "01"), Ring::Z));
  EXPECT_TRUE(trace_cycle_check(enhance(x, "11"), Ring::Z));
  EXPECT_FALSE(trace_cycle_check(enhance(x, "00"), Ring::F2));
  // odd A-zone: zero labels have no sign
  State y = corpus_state("yfamily.pd", "BBBAAAAA");
  ZoneDecomposition z = zone_decomposition(y);
  EnhancedState allone(y, (LabelWord{1} << y.circle_count()) - 1);
  EXPECT_EQ(a_sign(allone, allone), 1);
  for (const Zone& zone : z.a_zones) {
    if (zone.bipartite) continue;
    EnhancedState w = allone.with_label(zone.circles[0], 0);
    EXPECT_THROW(a_sign(w, w), SignUndefined);
  }
}

TEST(Structure, ASignIsACocycle) {
  std::mt19937_64 rng(21);
  for (const auto& [name, d] : corpus_upto(8)) {
    for (const State& x : enumerate_states(d)) {
      if (rng() % 4) continue;
      for (const EnhancedState& X : enumerate_enhancements(x)) {
        EquivalenceClass cls = equivalence_class(X, ArcKind::A);
        if (cls.members.size() > 64) continue;
        try {
          for (int trial = 0; trial < 5; ++trial) {
            EnhancedState Y = EnhancedState(x, cls.members[rng() % cls.members.size()].l);
            EnhancedState W = EnhancedState(x, cls.members[rng() % cls.members.size()].l);
            EXPECT_EQ(a_sign(X, Y) * a_sign(Y, W), a_sign(X, W)) << name;
          }
        } catch (const SignUndefined&) {
        }
      }
    }
  }
}

// One A-class and one B-class meet in a single enhanced state.
TEST(Structure, Prop1OnCorpus) {
  for (const auto& [name, d] : corpus_upto(8)) {
    for (const State& x : enumerate_states(d)) {
      if (!zone_decomposition(x).homogeneous) continue;
      for (const EnhancedState& X : enumerate_enhancements(x)) {
        EquivalenceClass a = equivalence_class(X, ArcKind::A), b = equivalence_class(X, ArcKind::B);
        int common = 0;
        for (const auto& k : a.members) common += b.contains(k);
        ASSERT_EQ(common, 1) << name << " " << x.word() << "/" << X.label_word();
      }
    }
  }
}

// Single-state cycles are spanned by traces of generic enhancements.
TEST(Structure, SingleStateCyclesAreTraceSums) {
  int states_checked = 0;
  for (const auto& [name, d] : corpus_upto(6)) {
    for (const State& x : enumerate_states(d)) {
      if (x.circle_count() > 4) continue;
      ZoneDecomposition z = zone_decomposition(x);
      for (Ring r : {Ring::F2, Ring::Z}) {
        Columns dmat, traces;
        for (const EnhancedState& X : enumerate_enhancements(x)) {
          Chain dx = differential(Chain::of(X, r));
          dmat.add_column(dx);
          if (!generic_labels(X, z, r)) continue;
          Chain tr = a_trace(X, r);
          ASSERT_TRUE(differential(tr).is_zero()) << name << " " << x.word() << "/" << X.label_word();
          traces.add_column(tr);
        }
        const Ring rank_ring = r == Ring::F2 ? Ring::F2 : Ring::Q;
        const std::size_t kernel = (std::size_t{1} << x.circle_count()) - matrix_rank(dmat.m, rank_ring);
        EXPECT_EQ(matrix_rank(traces.m, rank_ring), kernel) << name << " " << x.word() << " " << ring_name(r);
        if (r == Ring::Z) {
          for (const mpz_class& f : invariant_factors(traces.m)) EXPECT_EQ(f, 1) << name << " " << x.word();
        }
      }
      ++states_checked;
    }
  }
  EXPECT_GT(states_checked, 50);
}
