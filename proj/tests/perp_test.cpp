#include <gtest/gtest.h>

#include "qrep/perp.hpp"
#include "support.hpp"

using namespace qrep;

namespace {

const FieldSpec F2 = FieldSpec::prime(2);
const FieldSpec F5 = FieldSpec::prime(5);

QuiverPtr kron() { return quivers::kronecker(); }

Representation R(long long x, long long y, const FieldSpec& f) {
  return kronecker_regular({Scalar::from_int(f, x), Scalar::from_int(f, y)}, f);
}

}  // namespace

TEST(InAd, ZeroObjectIsMember) {
  PerpVerdict v = in_Ad(Representation::zero(kron(), F2), {1, 1}, 10, 0);
  EXPECT_EQ(v.status, PerpStatus::MemberWithWitness);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(v.samples, 1u);
}

TEST(InAd, RegularSimpleHasOtherPointAsWitness) {
  Representation r = R(1, 0, F5);
  PerpVerdict v = in_Ad(r, {1, 1}, 100, 42);
  ASSERT_EQ(v.status, PerpStatus::MemberWithWitness);
  const Representation& n = *v.witness;
  EXPECT_EQ(n.dims(), (DimVector{1, 1}));
  EXPECT_EQ(hom_dim(r, n), 0u);
  EXPECT_EQ(ext_dim(r, n), 0u);
  Rng rng(0);
  EXPECT_FALSE(is_isomorphic(r, n, rng));
}

TEST(InAd, EulerObstruction) {
  Representation p1 = indec_projectives(kron(), F2)[0];
  ASSERT_EQ(p1.dims(), (DimVector{1, 2}));
  EXPECT_EQ(euler_form(*kron(), p1.dims(), {1, 1}), 1);
  PerpVerdict v = in_Ad(p1, {1, 1}, 100, 0);
  EXPECT_EQ(v.status, PerpStatus::NoWitnessFound);
  EXPECT_EQ(v.reason, "euler obstruction");
  EXPECT_EQ(v.samples, 0u);
}

TEST(InAd, ObstructionIsSound) {
  Rng rng(5);
  for (auto q : {fx::a3(), kron(), fx::four_vertex()})
    for (auto f : {F2, FieldSpec::rationals()})
      for (int t = 0; t < 10; ++t) {
        DimVector dx = fx::random_dims(q->vertex_count(), 2, rng), d = fx::random_dims(q->vertex_count(), 2, rng);
        if (euler_form(*q, dx, d) == 0) continue;
        Representation x = random_rep(q, dx, f, rng);
        for (int k = 0; k < 50; ++k) {
          Representation n = random_rep(q, d, f, rng);
          EXPECT_FALSE(hom_dim(x, n) == 0 && ext_dim(x, n) == 0);
        }
      }
}

TEST(InAd, Deterministic) {
  Representation r = R(1, 1, F5);
  PerpVerdict a = in_Ad(r, {1, 1}, 50, 9), b = in_Ad(r, {1, 1}, 50, 9);
  EXPECT_EQ(a.status, b.status);
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_EQ(a.reason, b.reason);
  ASSERT_EQ(a.witness.has_value(), b.witness.has_value());
  if (a.witness) {
    EXPECT_EQ(*a.witness, *b.witness);
  }
}

TEST(InAd, WitnessCarriesBothCertificates) {
  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    Representation x = random_rep(kron(), fx::random_dims(2, 2, rng), F5, rng);
    PerpVerdict v = in_Ad(x, {1, 1}, 30, static_cast<std::uint64_t>(t));
    if (v.status != PerpStatus::MemberWithWitness) continue;
    EXPECT_EQ(v.witness->dims(), (DimVector{1, 1}));
    EXPECT_EQ(hom_dim(x, *v.witness), 0u);
    EXPECT_EQ(ext_dim(x, *v.witness), 0u);
  }
}

TEST(FindRigid, A2FindsP1) {
  auto v = find_rigid(fx::a2(), {1, 1}, F2, 100, 3);
  ASSERT_TRUE(v);
  Rng rng(0);
  EXPECT_TRUE(is_isomorphic(*v, fx::p1_a2(F2), rng));
  EXPECT_EQ(ext_dim(*v, *v), 0u);
}

TEST(FindRigid, KroneckerHasNoRigidOfDimOneOne) {
  for (auto f : {F2, F5, FieldSpec::rationals()}) EXPECT_FALSE(find_rigid(kron(), {1, 1}, f, 1000, 0).has_value());
}

TEST(FindRigid, ZeroDimension) {
  auto v = find_rigid(kron(), {0, 0}, F2, 0, 0);
  ASSERT_TRUE(v);
  EXPECT_TRUE(v->is_zero());
}

TEST(KroneckerRegular, Points) {
  Representation a = R(1, 0, F5);
  EXPECT_EQ(a.mat(0)(0, 0), Scalar::one(F5));
  EXPECT_TRUE(a.mat(1)(0, 0).is_zero());
  Representation b = R(0, 1, F5);
  EXPECT_TRUE(b.mat(0)(0, 0).is_zero());
  EXPECT_EQ(b.mat(1)(0, 0), Scalar::one(F5));
  EXPECT_EQ(R(2, 4, F5), R(1, 2, F5));  // [2:4] = [1:2]
  EXPECT_THROW(R(0, 0, F5), ZeroObjectError);
}

TEST(KroneckerRegular, ProjectiveLineCounts) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 101u}) EXPECT_EQ(projective_line(FieldSpec::prime(p)).size(), p + 1u);
  EXPECT_THROW(projective_line(FieldSpec::rationals()), std::invalid_argument);
}

TEST(KroneckerRegular, DistinctPointsAreOrthogonal) {
  Rng rng(1);
  for (auto f : {F2, F5}) {
    auto pts = projective_line(f);
    for (std::size_t a = 0; a < pts.size(); ++a)
      for (std::size_t b = 0; b < pts.size(); ++b) {
        Representation x = kronecker_regular(pts[a], f), y = kronecker_regular(pts[b], f);
        if (a == b) {
          EXPECT_EQ(hom_dim(x, y), 1u);
          EXPECT_EQ(ext_dim(x, y), 1u);
        } else {
          EXPECT_EQ(hom_dim(x, y), 0u);
          EXPECT_EQ(ext_dim(x, y), 0u);
          EXPECT_FALSE(is_isomorphic(x, y, rng));
        }
      }
  }
}

TEST(KroneckerReport, P2) {
  KroneckerReport r = kronecker_report(2, 4, 1000, 0);
  EXPECT_EQ(r.simples, 3u);
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
  EXPECT_TRUE(r.pass());
}

TEST(KroneckerReport, P5) {
  KroneckerReport r = kronecker_report(5, 4, 1000, 0);
  EXPECT_EQ(r.simples, 6u);
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
  EXPECT_TRUE(r.pass());
}
