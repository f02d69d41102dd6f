#include <gtest/gtest.h>

#include <set>

#include "qrep/subcat.hpp"
#include "support.hpp"

using namespace qrep;
using fx::a2;

namespace {

const FieldSpec F2 = FieldSpec::prime(2);

Representation S(std::size_t v, const QuiverPtr& q = a2()) { return Representation::simple(q, F2, v); }

Representation regular(long long x, long long y) { return fx::rep(quivers::kronecker(), F2, {1, 1}, {{{x}}, {{y}}}); }

ClosureResult brick_closure(const std::vector<Representation>& seeds, const QuiverPtr& q, std::size_t maxlen, Rng& rng) {
  return closure(seeds, q, F2, {maxlen, ClosureMode::Brick, 1'000'000}, rng);
}

ObjectUniverse a2_universe(Rng& rng) { return brick_closure({S(1), S(2)}, a2(), 2, rng).universe; }

bool contains(const std::vector<Representation>& list, const Representation& x, Rng& rng) {
  for (const auto& y : list)
    if (is_isomorphic(x, y, rng)) return true;
  return false;
}

// Every indecomposable of rep(A_n) over any field is an interval module.
std::vector<Representation> interval_modules(std::size_t n) {
  auto q = quivers::linear_a(n);
  std::vector<Representation> out;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i; j <= n; ++j) {
      DimVector d(n, 0);
      for (std::size_t k = i; k <= j; ++k) d[k - 1] = 1;
      std::vector<Matrix> mats;
      for (std::size_t k = 1; k < n; ++k) {
        Matrix m(F2, d[k], d[k - 1]);
        if (d[k] && d[k - 1]) m(0, 0) = Scalar::one(F2);
        mats.push_back(m);
      }
      out.emplace_back(q, F2, d, mats);
    }
  return out;
}

}  // namespace

TEST(HomOrthogonal, Examples) {
  EXPECT_TRUE(is_hom_orthogonal({S(1)}).orthogonal);
  EXPECT_TRUE(is_hom_orthogonal({S(1), S(2)}).orthogonal);
  OrthogonalityResult r = is_hom_orthogonal({S(1), fx::p1_a2(F2)});
  EXPECT_FALSE(r.orthogonal);
  ASSERT_TRUE(r.pair);
  EXPECT_EQ(r.pair->first, 1u);
  EXPECT_EQ(r.pair->second, 0u);
  EXPECT_TRUE(r.witness->commutes());
}

TEST(Closure, SimplesOfA2) {
  Rng rng(61);
  ClosureResult c = brick_closure({S(1), S(2)}, a2(), 2, rng);
  EXPECT_TRUE(c.universe.complete);
  EXPECT_EQ(c.universe.size(), 3u);
  EXPECT_TRUE(contains(c.universe.indecs, fx::p1_a2(F2), rng));
  EXPECT_EQ(c.audits.failed, 0u);
  EXPECT_GT(c.audits.audited, 0u);
  EXPECT_TRUE(c.violations.empty());
}

TEST(Closure, ProjectiveAlone) {
  Rng rng(62);
  ClosureResult c = brick_closure({fx::p1_a2(F2)}, a2(), 4, rng);
  EXPECT_EQ(c.universe.size(), 1u);
  EXPECT_TRUE(c.universe.complete);
}

TEST(Closure, KroneckerTubeIsTruncated) {
  Rng rng(63);
  Representation r = regular(1, 0);
  ClosureResult c = brick_closure({r}, quivers::kronecker(), 4, rng);
  EXPECT_EQ(c.universe.size(), 2u);
  EXPECT_FALSE(c.universe.complete);
  EXPECT_TRUE(c.truncated);
  EXPECT_FALSE(c.sampled);
  bool tube = false;
  for (const auto& x : c.universe.indecs) tube = tube || x.dims() == DimVector{2, 2};
  EXPECT_TRUE(tube);
  auto simples = relative_simples(c.universe, rng);
  ASSERT_EQ(simples.size(), 1u);
  EXPECT_TRUE(is_isomorphic(simples[0], r, rng));
}

TEST(Closure, RejectsInvalidSeeds) {
  Rng rng(64);
  EXPECT_THROW(brick_closure({S(1), fx::p1_a2(F2)}, a2(), 4, rng), std::invalid_argument);
  EXPECT_THROW(brick_closure({direct_sum({S(1), S(1)})}, a2(), 4, rng), std::invalid_argument);
}

TEST(Closure, ForkNeedsSumsAsSubobjects) {
  Rng rng(65);
  auto q = fx::quiver_from("vertices 3\narrow a 1 2\narrow b 1 3\n", "fork");
  ClosureResult c = brick_closure({S(1, q), S(2, q), S(3, q)}, q, 6, rng);
  EXPECT_TRUE(c.universe.complete);
  // Indecomposables of this A_3 orientation: six.
  EXPECT_EQ(c.universe.size(), 6u);
  bool p1 = false;
  for (const auto& x : c.universe.indecs) p1 = p1 || x.dims() == DimVector{1, 1, 1};
  EXPECT_TRUE(p1);
}

TEST(Closure, GenericModeAgreesOnA2) {
  Rng rng(66);
  ClosureResult g = closure({S(1), S(2)}, a2(), F2, {4, ClosureMode::Generic, 1'000'000}, rng);
  EXPECT_TRUE(g.universe.complete);
  EXPECT_EQ(g.universe.size(), 3u);
  EXPECT_EQ(g.audits.failed, 0u);
  ClosureResult p = closure({fx::p1_a2(F2)}, a2(), F2, {4, ClosureMode::Generic, 1'000'000}, rng);
  // Kernel and cokernel of P1 -> P1 (zero map) are P1 itself; nothing else appears.
  EXPECT_EQ(p.universe.size(), 1u);
}

TEST(SubcatProperty, ClosureIdempotent) {
  Rng rng(67);
  ObjectUniverse u = brick_closure({S(1, fx::a3()), S(3, fx::a3())}, fx::a3(), 6, rng).universe;
  ObjectUniverse all = brick_closure({S(1, fx::a3()), S(2, fx::a3()), S(3, fx::a3())}, fx::a3(), 6, rng).universe;
  for (const auto& base : {u, all}) {
    ClosureResult again = closure(base.indecs, base.quiver, F2, {6, ClosureMode::Generic, 1'000'000}, rng);
    EXPECT_TRUE(again.universe.complete);
    EXPECT_EQ(again.universe.size(), base.size());
  }
}

TEST(RelativeSimples, Examples) {
  Rng rng(68);
  ObjectUniverse u = a2_universe(rng);
  auto s = relative_simples(u, rng);
  EXPECT_TRUE(same_up_to_iso(s, {S(1), S(2)}, rng));
  ObjectUniverse p = brick_closure({fx::p1_a2(F2)}, a2(), 4, rng).universe;
  auto sp = relative_simples(p, rng);
  ASSERT_EQ(sp.size(), 1u);
}

TEST(Bijection, Examples) {
  Rng rng(69);
  EXPECT_TRUE(verify_bijection({{S(1), S(2)}}, a2(), F2, 4, 1'000'000, rng).pass);
  EXPECT_TRUE(verify_bijection({{fx::p1_a2(F2)}}, a2(), F2, 4, 1'000'000, rng).pass);
  BijectionReport k = verify_bijection({{regular(1, 0), regular(1, 1)}}, quivers::kronecker(), F2, 4, 1'000'000, rng);
  EXPECT_TRUE(k.pass);
  EXPECT_EQ(k.simples.size(), 2u);
}

TEST(Thick, Examples) {
  Rng rng(70);
  ObjectUniverse all = a2_universe(rng);
  EXPECT_TRUE(is_thick(all, 1'000'000, rng).thick);
  ObjectUniverse sp{a2(), F2, 2, {S(1), fx::p1_a2(F2)}, true};
  ThickVerdict v = is_thick(sp, 1'000'000, rng);
  EXPECT_FALSE(v.thick);
  ASSERT_TRUE(v.outsider);
  EXPECT_EQ(v.outsider->dims(), (DimVector{0, 1}));
  ASSERT_TRUE(v.witness);
  EXPECT_TRUE(v.witness->is_epi());
}

TEST(SubcatProperty, CompleteClosuresAreThick) {
  Rng rng(71);
  auto q = fx::a3();
  ObjectUniverse u = brick_closure({S(1, q), S(2, q), S(3, q)}, q, 6, rng).universe;
  for (const auto& bs : enumerate_brick_sets(u, rng)) {
    ClosureResult c = brick_closure(bs.bricks, q, 6, rng);
    ASSERT_TRUE(c.universe.complete);
    EXPECT_TRUE(is_thick(c.universe, 1'000'000, rng).thick);
    EXPECT_TRUE(same_up_to_iso(relative_simples(c.universe, rng), bs.bricks, rng));
  }
}

TEST(EnumerateBrickSets, Examples) {
  Rng rng(72);
  auto sets = enumerate_brick_sets(a2_universe(rng), rng);
  EXPECT_EQ(sets.size(), 5u);
  std::multiset<std::size_t> sizes;
  for (const auto& s : sets) sizes.insert(s.bricks.size());
  EXPECT_EQ(sizes, (std::multiset<std::size_t>{0, 1, 1, 1, 2}));
  ObjectUniverse one{a2(), F2, 2, {S(1)}, true};
  EXPECT_EQ(enumerate_brick_sets(one, rng).size(), 2u);
}

TEST(SubcatOracle, A3UniverseIsTheIntervalModules) {
  Rng rng(73);
  auto q = fx::a3();
  ObjectUniverse u = brick_closure({S(1, q), S(2, q), S(3, q)}, q, 6, rng).universe;
  EXPECT_TRUE(same_up_to_iso(u.indecs, interval_modules(3), rng));
}

TEST(SubcatProperty, BijectionCountsAgreeOnA3) {
  Rng rng(74);
  auto q = fx::a3();
  ObjectUniverse u = brick_closure({S(1, q), S(2, q), S(3, q)}, q, 6, rng).universe;
  auto sets = enumerate_brick_sets(u, rng);
  std::size_t thick = 0;
  for (std::uint32_t mask = 0; mask < (1u << u.size()); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < u.size(); ++k)
      if (mask >> k & 1) idx.push_back(k);
    if (is_thick(u.subset(idx), 1'000'000, rng).thick) ++thick;
  }
  std::set<std::uint32_t> closures;
  for (const auto& bs : sets) {
    ObjectUniverse c = brick_closure(bs.bricks, q, 6, rng).universe;
    std::uint32_t mask = 0;
    for (const auto& x : c.indecs) mask |= 1u << *u.find(x, rng);
    closures.insert(mask);
  }
  EXPECT_EQ(sets.size(), thick);
  EXPECT_EQ(closures.size(), sets.size());
}
