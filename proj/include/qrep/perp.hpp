#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qrep/decomp.hpp"
#include "qrep/gen.hpp"
#include "qrep/homext.hpp"
#include "qrep/rep.hpp"
#include "qrep/subcat.hpp"

namespace qrep {

enum class PerpStatus { MemberWithWitness, NoWitnessFound };

/// Evidence for X in A(d): some N of dimension vector d with
/// Hom(X, N) = 0 = Ext^1(X, N). A missing witness is not a proof of
/// non-membership.
struct PerpVerdict {
  PerpStatus status = PerpStatus::NoWitnessFound;
  std::optional<Representation> witness;
  std::size_t samples = 0;  // draws actually made
  std::uint64_t seed = 0;
  std::string reason;
};

inline PerpVerdict in_Ad(const Representation& x, const DimVector& d, std::size_t samples, std::uint64_t seed) {
  PerpVerdict v;
  v.seed = seed;
  if (euler_form(x.quiver(), x.dims(), d) != 0) {
    v.reason = "euler obstruction";
    return v;
  }
  Rng rng(seed);
  for (std::size_t t = 0; t < samples; ++t) {
    Representation n = random_rep(x.quiver_ptr(), d, x.field(), rng);
    ++v.samples;
    // With <d_x, d> = 0, Hom vanishing forces Ext vanishing; both are checked.
    if (hom_dim(x, n) == 0 && ext_dim(x, n) == 0) {
      v.status = PerpStatus::MemberWithWitness;
      v.witness = n;
      v.reason = "witness at sample " + std::to_string(t);
      return v;
    }
  }
  v.reason = "no witness in " + std::to_string(samples) + " samples";
  return v;
}

/// First sampled V in rep(q, d) with Ext^1(V, V) = 0.
inline std::optional<Representation> find_rigid(const QuiverPtr& q, const DimVector& d, const FieldSpec& f,
                                                std::size_t samples, std::uint64_t seed) {
  Rng rng(seed);
  if (total(d) == 0) return Representation::zero(q, f);
  for (std::size_t t = 0; t < samples; ++t) {
    Representation v = random_rep(q, d, f, rng);
    if (ext_dim(v, v) == 0) return v;
  }
  return std::nullopt;
}

/// A point [x : y] of the projective line, normalized to [1 : y] or [0 : 1].
struct ProjectivePoint {
  Scalar x;
  Scalar y;

  static ProjectivePoint normalized(const Scalar& x, const Scalar& y) {
    if (x.is_zero() && y.is_zero()) throw ZeroObjectError("[0 : 0] is not a projective point");
    if (x.is_zero()) return {x, Scalar::one(y.field())};
    return {Scalar::one(x.field()), y / x};
  }

  std::string str() const { return "[" + x.str() + ":" + y.str() + "]"; }
};

/// All p + 1 normalized points of P^1(F_p).
inline std::vector<ProjectivePoint> projective_line(const FieldSpec& f) {
  if (!f.is_prime_field()) throw std::invalid_argument("projective_line needs a finite field");
  std::vector<ProjectivePoint> pts;
  for (std::uint32_t y = 0; y < f.p; ++y) pts.push_back({Scalar::one(f), Scalar::from_int(f, y)});
  pts.push_back({Scalar::zero(f), Scalar::one(f)});
  return pts;
}

/// R(1) = R(2) = k, arrow a acting by x and arrow b by y.
inline Representation kronecker_regular(const ProjectivePoint& pt, const FieldSpec& f,
                                        const QuiverPtr& q = quivers::kronecker()) {
  if (q->vertex_count() != 2 || q->arrows().size() != 2)
    throw MismatchError("kronecker_regular needs the Kronecker quiver");
  for (const auto& a : q->arrows())
    if (a.source != 1 || a.target != 2) throw MismatchError("kronecker_regular needs two arrows 1 -> 2");
  ProjectivePoint n = ProjectivePoint::normalized(pt.x, pt.y);
  Matrix a(f, 1, 1), b(f, 1, 1);
  a(0, 0) = n.x;
  b(0, 0) = n.y;
  return Representation(q, f, {1, 1}, {a, b});
}

struct KroneckerCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct KroneckerReport {
  std::uint32_t p = 0;
  std::size_t simples = 0;
  std::vector<KroneckerCheck> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
};

/// The regular simples of the Kronecker quiver over F_p and the properties
/// that make A((1,1)) a thick subcategory without a projective generator.
inline KroneckerReport kronecker_report(std::uint32_t p, std::size_t maxlen, std::size_t samples, std::uint64_t seed) {
  FieldSpec f = FieldSpec::prime(p);
  QuiverPtr q = quivers::kronecker();
  Rng rng(seed);
  KroneckerReport r;
  r.p = p;
  std::vector<Representation> regs;
  for (const auto& pt : projective_line(f)) regs.push_back(kronecker_regular(pt, f, q));
  r.simples = regs.size();
  r.checks.push_back({"count", regs.size() == p + 1u, std::to_string(regs.size()) + " normalized points"});

  bool distinct = true;
  for (std::size_t a = 0; a < regs.size(); ++a)
    for (std::size_t b = a + 1; b < regs.size(); ++b)
      if (is_isomorphic(regs[a], regs[b], rng)) distinct = false;
  r.checks.push_back({"pairwise non-isomorphic", distinct, ""});

  bool bricks = true;
  for (const auto& x : regs) bricks = bricks && is_brick(x, rng);
  r.checks.push_back({"bricks", bricks, ""});

  auto orth = is_hom_orthogonal(regs);
  r.checks.push_back({"pairwise Hom-orthogonal", orth.orthogonal, ""});

  bool self_ext = true;
  for (const auto& x : regs) self_ext = self_ext && ext_dim(x, x) == 1;
  r.checks.push_back({"dim Ext1(R,R) = 1", self_ext, ""});

  bool members = true;
  std::string witnesses;
  for (std::size_t k = 0; k < regs.size(); ++k) {
    PerpVerdict v = in_Ad(regs[k], {1, 1}, samples, seed + k);
    members = members && v.status == PerpStatus::MemberWithWitness;
    witnesses += (k ? "; " : "") + v.reason;
  }
  r.checks.push_back({"in A((1,1)) with witness", members, witnesses});

  auto rigid = find_rigid(q, {1, 1}, f, samples, seed);
  r.checks.push_back({"no rigid V of dimension (1,1)", !rigid.has_value(),
                      std::to_string(samples) + " samples"});

  bool bijection = true;
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < regs.size(); ++a)
    for (std::size_t b = a + 1; b < regs.size(); ++b) {
      ++pairs;
      BijectionReport br = verify_bijection({{regs[a], regs[b]}}, q, f, maxlen, 1'000'000, rng);
      bijection = bijection && br.pass && br.simples.size() == 2;
    }
  r.checks.push_back({"bijection on pairs", bijection, std::to_string(pairs) + " pairs, maxlen " + std::to_string(maxlen)});

  bool towers_fail = true;
  for (const auto& x : regs) {
    ClosureResult c = closure({x}, q, f, {maxlen, ClosureMode::Brick, 1'000'000}, rng);
    TowerTrace t = tower(x, c.universe, maxlen, rng);
    towers_fail = towers_fail && t.outcome == TowerOutcome::BoundExceeded;
  }
  r.checks.push_back({"towers exceed bound", towers_fail, "maxlen " + std::to_string(maxlen)});
  return r;
}

}  // namespace qrep
