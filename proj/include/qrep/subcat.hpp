#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qrep/decomp.hpp"
#include "qrep/errors.hpp"
#include "qrep/homext.hpp"
#include "qrep/rep.hpp"

namespace qrep {

/// Skeleton of an additive subcategory: pairwise non-isomorphic
/// indecomposables of length <= maxlen. `complete` is false whenever an
/// enumeration was sampled or an indecomposable longer than maxlen was seen.
struct ObjectUniverse {
  QuiverPtr quiver;
  FieldSpec field;
  std::size_t maxlen = 0;
  std::vector<Representation> indecs;
  bool complete = true;

  std::size_t size() const { return indecs.size(); }

  /// Index of the member isomorphic to x, if any.
  std::optional<std::size_t> find(const Representation& x, Rng& rng) const {
    for (std::size_t k = 0; k < indecs.size(); ++k)
      if (is_isomorphic(indecs[k], x, rng)) return k;
    return std::nullopt;
  }

  /// The sub-universe on the given member indices.
  ObjectUniverse subset(const std::vector<std::size_t>& idx) const {
    ObjectUniverse u{quiver, field, maxlen, {}, complete};
    for (auto k : idx) u.indecs.push_back(indecs.at(k));
    return u;
  }
};

struct BrickSet {
  std::vector<Representation> bricks;
};

/// Counts of exactness audits performed on produced short exact sequences.
struct AuditLog {
  std::size_t audited = 0;
  std::size_t failed = 0;

  void record(bool ok) {
    ++audited;
    if (!ok) ++failed;
  }
};

/// Checks 0 -> ker f -> src -> im f -> 0 and 0 -> im f -> tgt -> coker f -> 0.
inline void audit_kernel_cokernel(const RepMorphism& f, AuditLog& log) {
  Subobject ker = kernel(f);
  Subobject im = image(f);
  Quotient cok = cokernel(f);
  RepMorphism corestriction{f.source, im.object, {}};
  for (std::size_t v = 0; v < f.comps.size(); ++v)
    corestriction.comps.push_back(split_space(im.mono.comps[v]).sub_coords() * f.comps[v]);
  log.record(is_short_exact(ker.mono, corestriction));
  log.record(is_short_exact(im.mono, cok.epi));
}

struct OrthogonalityResult {
  bool orthogonal = true;
  std::optional<std::pair<std::size_t, std::size_t>> pair;  // witness Hom(first, second) != 0
  std::optional<RepMorphism> witness;
};

inline OrthogonalityResult is_hom_orthogonal(const std::vector<Representation>& set) {
  for (std::size_t a = 0; a < set.size(); ++a)
    for (std::size_t b = 0; b < set.size(); ++b) {
      if (a == b) continue;
      HomSpace h = hom_basis(set[a], set[b]);
      if (h.dim() > 0) return {false, std::pair{a, b}, h.basis.front()};
    }
  return {};
}

enum class ClosureMode { Brick, Generic };

struct ClosureOptions {
  std::size_t maxlen = 6;
  ClosureMode mode = ClosureMode::Brick;
  std::uint64_t budget = 1'000'000;
};

struct ClosureResult {
  ObjectUniverse universe;
  bool sampled = false;
  bool truncated = false;
  std::size_t rounds = 0;
  AuditLog audits;
  std::vector<std::string> violations;  // brick-mode kernel/cokernel audit findings
};

namespace detail {

// All a x e matrices over F_p in reduced row echelon form with rank a, i.e.
// the a-dimensional subspaces of F_p^e.
inline std::vector<Matrix> rref_subspaces(const FieldSpec& f, std::size_t a, std::size_t e) {
  std::vector<Matrix> out;
  std::vector<std::size_t> piv(a);
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t k, std::size_t start) {
    if (k == a) {
      // Free entries: right of each pivot, excluding later pivot columns.
      std::vector<std::pair<std::size_t, std::size_t>> free;
      for (std::size_t r = 0; r < a; ++r)
        for (std::size_t c = piv[r] + 1; c < e; ++c)
          if (std::find(piv.begin(), piv.end(), c) == piv.end()) free.emplace_back(r, c);
      std::vector<std::uint32_t> digits(free.size(), 0);
      do {
        Matrix m(f, a, e);
        for (std::size_t r = 0; r < a; ++r) m(r, piv[r]) = Scalar::one(f);
        for (std::size_t t = 0; t < free.size(); ++t) m(free[t].first, free[t].second) = Scalar::from_int(f, digits[t]);
        out.push_back(std::move(m));
      } while (next_tuple(digits, f.p));
      return;
    }
    for (std::size_t c = start; c + (a - k) <= e; ++c) {
      piv[k] = c;
      choose(k + 1, c + 1);
    }
  };
  choose(0, 0);
  return out;
}

// Gaussian binomial [e choose a]_p, saturating above limit.
inline std::uint64_t subspace_count(std::uint64_t p, std::size_t a, std::size_t e, std::uint64_t limit) {
  if (a > e) return 0;
  // prod_{t<a} (p^{e-t} - 1) / (p^{t+1} - 1), computed with the exact recurrence
  // [e,a] = [e-1,a-1] + p^a [e-1,a].
  std::vector<std::vector<std::uint64_t>> g(e + 1, std::vector<std::uint64_t>(a + 1, 0));
  for (std::size_t n = 0; n <= e; ++n) {
    g[n][0] = 1;
    for (std::size_t k = 1; k <= std::min(n, a); ++k) {
      std::uint64_t pk = bounded_pow(p, k, limit);
      std::uint64_t right = (k <= n - 1) ? g[n - 1][k] : 0;
      long double prod = static_cast<long double>(pk) * right;
      std::uint64_t v = g[n - 1][k - 1] + (prod > limit ? limit + 1 : static_cast<std::uint64_t>(prod));
      g[n][k] = std::min<std::uint64_t>(v, limit + 1);
    }
  }
  return g[e][a];
}

inline Matrix random_full_rank(const FieldSpec& f, std::size_t a, std::size_t e, Rng& rng) {
  for (;;) {
    Matrix m(f, a, e);
    for (std::size_t r = 0; r < a; ++r)
      for (std::size_t c = 0; c < e; ++c) m(r, c) = search_coefficient(f, rng);
    if (rank(m) == a) return m;
  }
}

// Vertical stacking of per-summand cocycles into a cocycle on the direct sum.
inline Cocycle stack_cocycles(const std::vector<Cocycle>& parts, const Representation& quotient,
                              const std::vector<Representation>& summands) {
  Cocycle c;
  const auto& arrows = quotient.quiver().arrows();
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    std::size_t rows = 0;
    for (const auto& s : summands) rows += s.dim(arrows[a].target - 1);
    Matrix block(quotient.field(), rows, quotient.dim(arrows[a].source - 1));
    std::size_t r0 = 0;
    for (std::size_t t = 0; t < parts.size(); ++t) {
      block.set_block(r0, 0, parts[t].blocks[a]);
      r0 += summands[t].dim(arrows[a].target - 1);
    }
    c.blocks.push_back(std::move(block));
  }
  return c;
}

inline void validate_brick_set(const std::vector<Representation>& seeds, Rng& rng) {
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    if (seeds[k].is_zero()) throw std::invalid_argument("brick set contains the zero object");
    if (!is_brick(seeds[k], rng)) throw std::invalid_argument("seed " + std::to_string(k) + " is not a brick");
  }
  auto orth = is_hom_orthogonal(seeds);
  if (!orth.orthogonal)
    throw std::invalid_argument("seeds " + std::to_string(orth.pair->first) + " and " +
                                std::to_string(orth.pair->second) + " are not Hom-orthogonal");
}

struct ClosureState {
  ObjectUniverse& u;
  ClosureResult& res;
  Rng& rng;

  // Adds the indecomposable summands of x; returns true if any was new.
  bool absorb(const Representation& x) {
    bool added = false;
    for (const auto& s : decompose(x, rng).summands) {
      if (s.rep.length() > u.maxlen) {
        res.truncated = true;
        continue;
      }
      if (!u.find(s.rep, rng)) {
        u.indecs.push_back(s.rep);
        added = true;
      }
    }
    return added;
  }
};

// One pass of extensions with a seed as quotient: 0 -> X' -> E -> s -> 0
// where X' runs over direct sums of current members. A summand x of
// multiplicity a only contributes to an indecomposable E when the a
// components of the cocycle are independent in Ext(s, x), so multiplicities
// are bounded by dim Ext(s, x) and the components range over a-dimensional
// subspaces (the GL_a-orbits).
inline bool brick_round(const std::vector<Representation>& seeds, ClosureState& st, const ClosureOptions& opt,
                        std::map<std::pair<std::size_t, std::vector<std::size_t>>, bool>& done) {
  ObjectUniverse& u = st.u;
  const FieldSpec& f = u.field;
  bool grew = false;
  for (std::size_t si = 0; si < seeds.size(); ++si) {
    const Representation& s = seeds[si];
    std::vector<std::size_t> cand;
    std::vector<ExtSpace> exts;
    std::size_t snapshot = u.indecs.size();
    for (std::size_t k = 0; k < snapshot; ++k) {
      ExtSpace e = ext_basis(s, u.indecs[k]);
      if (e.dim() > 0) {
        cand.push_back(k);
        exts.push_back(std::move(e));
      }
    }
    // Multiplicity vectors over the candidates, odometer style.
    std::vector<std::size_t> mult(cand.size(), 0);
    std::uint64_t visited = 0;
    auto advance = [&]() {
      for (std::size_t t = 0; t < mult.size(); ++t) {
        if (++mult[t] <= exts[t].dim()) return true;
        mult[t] = 0;
      }
      return false;
    };
    while (advance()) {
      if (++visited > opt.budget) throw BudgetError("closure: too many sub-object candidates");
      std::vector<std::size_t> key_mult;  // (member, multiplicity) pairs
      std::size_t len = s.length();
      for (std::size_t t = 0; t < cand.size(); ++t) {
        if (mult[t] == 0) continue;
        key_mult.push_back(cand[t]);
        key_mult.push_back(mult[t]);
        len += mult[t] * u.indecs[cand[t]].length();
      }
      auto key = std::pair{si, key_mult};
      if (done.count(key)) continue;
      done[key] = true;
      if (len > 2 * opt.maxlen) {
        // Not explored; an indecomposable this long may exist.
        st.res.truncated = true;
        continue;
      }
      // Per-candidate families of component subspaces.
      std::vector<std::size_t> active;
      std::vector<std::vector<Matrix>> families;
      std::uint64_t combos = 1;
      bool exhaustive = f.is_prime_field();
      for (std::size_t t = 0; t < cand.size(); ++t) {
        if (mult[t] == 0) continue;
        active.push_back(t);
        if (exhaustive) {
          std::uint64_t cnt = subspace_count(f.p, mult[t], exts[t].dim(), opt.budget);
          if (cnt > opt.budget || combos > opt.budget / std::max<std::uint64_t>(cnt, 1)) {
            exhaustive = false;
          } else {
            combos *= cnt;
          }
        }
      }
      std::vector<std::vector<Matrix>> choices;  // one component matrix per active candidate
      if (exhaustive) {
        for (auto t : active) families.push_back(rref_subspaces(f, mult[t], exts[t].dim()));
        std::vector<std::size_t> pick(active.size(), 0);
        for (;;) {
          std::vector<Matrix> ch;
          for (std::size_t q = 0; q < active.size(); ++q) ch.push_back(families[q][pick[q]]);
          choices.push_back(std::move(ch));
          std::size_t q = 0;
          for (; q < active.size(); ++q) {
            if (++pick[q] < families[q].size()) break;
            pick[q] = 0;
          }
          if (q == active.size()) break;
        }
      } else {
        st.res.sampled = true;
        for (int r = 0; r < 32; ++r) {
          std::vector<Matrix> ch;
          for (auto t : active) ch.push_back(random_full_rank(f, mult[t], exts[t].dim(), st.rng));
          choices.push_back(std::move(ch));
        }
      }
      std::vector<Representation> summands;
      for (auto t : active)
        for (std::size_t c = 0; c < mult[t]; ++c) summands.push_back(u.indecs[cand[t]]);
      Representation sub = direct_sum(u.quiver, f, summands);
      for (const auto& ch : choices) {
        std::vector<Cocycle> parts;
        for (std::size_t q = 0; q < active.size(); ++q) {
          const ExtSpace& e = exts[active[q]];
          for (std::size_t r = 0; r < ch[q].rows(); ++r) {
            std::vector<Scalar> coeffs;
            for (std::size_t c = 0; c < ch[q].cols(); ++c) coeffs.push_back(ch[q](r, c));
            parts.push_back(e.combination(coeffs));
          }
        }
        Extension ext = middle_term(stack_cocycles(parts, s, summands), s, sub);
        st.res.audits.record(is_short_exact(ext.mono, ext.epi));
        if (st.absorb(ext.middle)) grew = true;
      }
    }
  }
  return grew;
}

// Direct sums of at most two members, as (first, second) with second == npos
// for a single member.
inline std::vector<std::pair<std::size_t, std::size_t>> small_sums(std::size_t n) {
  constexpr auto none = static_cast<std::size_t>(-1);
  std::vector<std::pair<std::size_t, std::size_t>> sums;
  for (std::size_t a = 0; a < n; ++a) sums.emplace_back(a, none);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) sums.emplace_back(a, b);
  return sums;
}

inline Representation sum_object(const ObjectUniverse& u, std::pair<std::size_t, std::size_t> s) {
  if (s.second == static_cast<std::size_t>(-1)) return u.indecs[s.first];
  return direct_sum(u.quiver, u.field, {u.indecs[s.first], u.indecs[s.second]});
}

// Nonzero elements of a Hom space to examine: projective points over a
// small F_p, else the basis plus seeded random combinations.
inline std::vector<RepMorphism> sample_morphisms(const HomSpace& h, Rng& rng, std::uint64_t limit,
                                                 bool* sampled = nullptr) {
  std::vector<RepMorphism> out;
  if (h.dim() == 0) return out;
  const FieldSpec& f = h.source.field();
  if (f.is_prime_field() && bounded_pow(f.p, h.dim(), limit) <= limit) {
    for (const auto& c : projective_points(f, h.dim())) out.push_back(h.combination(c));
    return out;
  }
  if (sampled) *sampled = true;
  out = h.basis;
  for (int t = 0; t < 32; ++t) out.push_back(h.combination(random_coefficients(f, h.dim(), rng)));
  return out;
}

inline constexpr std::uint64_t kMorphismEnumerationLimit = 4096;

inline bool generic_round(ClosureState& st, const ClosureOptions& opt, std::set<std::string>& done) {
  ObjectUniverse& u = st.u;
  bool grew = false;
  std::size_t n = u.indecs.size();
  auto sums = small_sums(n);
  for (const auto& a : sums)
    for (const auto& b : sums) {
      std::string key = std::to_string(a.first) + "," + std::to_string(a.second) + ">" + std::to_string(b.first) +
                        "," + std::to_string(b.second);
      if (!done.insert(key).second) continue;
      Representation x = sum_object(u, a), y = sum_object(u, b);
      HomSpace h = hom_basis(x, y);
      for (const auto& f : sample_morphisms(h, st.rng, kMorphismEnumerationLimit, &st.res.sampled)) {
        if (f.is_zero()) continue;
        audit_kernel_cokernel(f, st.res.audits);
        grew |= st.absorb(kernel(f).object);
        grew |= st.absorb(cokernel(f).object);
        grew |= st.absorb(image(f).object);
      }
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::string key = "ext" + std::to_string(a) + ">" + std::to_string(b);
      if (!done.insert(key).second) continue;
      MiddleTerms mt = all_middle_terms(u.indecs[a], u.indecs[b], opt.budget, st.rng);
      st.res.sampled |= mt.sampled;
      for (const auto& e : mt.terms) grew |= st.absorb(e);
    }
  return grew;
}

}  // namespace detail

/// Smallest exact abelian extension-closed subcategory containing the seeds,
/// restricted to indecomposables of length <= maxlen.
///
/// Brick mode requires a Hom-orthogonal set of bricks and grows the universe
/// by extensions 0 -> X' -> E -> s -> 0 with s a seed; it then audits that
/// kernels and cokernels of Hom-basis morphisms between members add nothing.
/// Generic mode closes under kernels, cokernels and images of morphisms
/// between sums of at most two members, and under extensions of members.
inline ClosureResult closure(const std::vector<Representation>& seeds, const QuiverPtr& q, const FieldSpec& f,
                             const ClosureOptions& opt, Rng& rng) {
  ClosureResult res;
  res.universe = ObjectUniverse{q, f, opt.maxlen, {}, true};
  detail::ClosureState st{res.universe, res, rng};
  if (opt.mode == ClosureMode::Brick) {
    detail::validate_brick_set(seeds, rng);
    for (const auto& s : seeds) {
      if (s.length() > opt.maxlen) {
        res.truncated = true;
        continue;
      }
      if (!res.universe.find(s, rng)) res.universe.indecs.push_back(s);
    }
    std::map<std::pair<std::size_t, std::vector<std::size_t>>, bool> done;
    do {
      ++res.rounds;
    } while (detail::brick_round(seeds, st, opt, done));
    // Kernels and cokernels must already be present.
    ObjectUniverse& u = res.universe;
    for (std::size_t a = 0; a < u.size(); ++a)
      for (std::size_t b = 0; b < u.size(); ++b)
        for (const auto& g : hom_basis(u.indecs[a], u.indecs[b]).basis) {
          audit_kernel_cokernel(g, res.audits);
          for (const auto& obj : {kernel(g).object, cokernel(g).object})
            for (const auto& s : decompose(obj, rng).summands)
              if (!u.find(s.rep, rng))
                res.violations.push_back("Hom(" + std::to_string(a) + "," + std::to_string(b) +
                                         ") basis map has a kernel/cokernel summand " + to_string(s.rep.dims()) +
                                         " outside the closure");
        }
  } else {
    for (const auto& s : seeds) st.absorb(s);
    std::set<std::string> done;
    do {
      ++res.rounds;
    } while (detail::generic_round(st, opt, done));
  }
  res.universe.complete = !res.sampled && !res.truncated;
  return res;
}

/// Members with no proper nonzero subobject inside the universe: bricks
/// such that every nonzero map from a member is an epimorphism.
inline std::vector<Representation> relative_simples(const ObjectUniverse& u, Rng& rng,
                                                    std::uint64_t limit = detail::kMorphismEnumerationLimit) {
  std::vector<Representation> out;
  for (const auto& x : u.indecs) {
    if (!is_brick(x, rng)) continue;
    bool simple = true;
    for (const auto& y : u.indecs) {
      HomSpace h = hom_basis(y, x);
      for (const auto& f : detail::sample_morphisms(h, rng, limit))
        if (!f.is_zero() && !f.is_epi()) {
          simple = false;
          break;
        }
      if (!simple) break;
    }
    if (simple) out.push_back(x);
  }
  return out;
}

/// True when the two lists agree up to isomorphism and reordering.
inline bool same_up_to_iso(const std::vector<Representation>& a, const std::vector<Representation>& b, Rng& rng) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& x : a) {
    bool hit = false;
    for (std::size_t k = 0; k < b.size() && !hit; ++k)
      if (!used[k] && is_isomorphic(x, b[k], rng)) used[k] = hit = true;
    if (!hit) return false;
  }
  return true;
}

struct BijectionReport {
  bool pass = false;
  bool complete = false;
  ClosureResult closure;
  std::vector<Representation> simples;
};

inline BijectionReport verify_bijection(const BrickSet& s, const QuiverPtr& q, const FieldSpec& f, std::size_t maxlen,
                                        std::uint64_t budget, Rng& rng) {
  BijectionReport r;
  r.closure = closure(s.bricks, q, f, {maxlen, ClosureMode::Brick, budget}, rng);
  r.complete = r.closure.universe.complete;
  r.simples = relative_simples(r.closure.universe, rng);
  r.pass = r.closure.violations.empty() && r.closure.audits.failed == 0 && same_up_to_iso(r.simples, s.bricks, rng);
  return r;
}

struct ThickVerdict {
  bool thick = true;
  std::string reason;                      // empty when thick
  std::optional<RepMorphism> witness;      // offending epi/mono, when applicable
  std::optional<Representation> outsider;  // object missing from the universe
};

/// Closure of the universe's additive hull under extensions of members and
/// under kernels of epimorphisms / cokernels of monomorphisms between sums
/// of at most two members.
inline ThickVerdict is_thick(const ObjectUniverse& u, std::uint64_t budget, Rng& rng) {
  auto outside = [&](const Representation& x) -> std::optional<Representation> {
    for (const auto& s : decompose(x, rng).summands) {
      if (!u.complete && s.rep.length() > u.maxlen) continue;
      if (!u.find(s.rep, rng)) return s.rep;
    }
    return std::nullopt;
  };
  for (std::size_t a = 0; a < u.size(); ++a)
    for (std::size_t b = 0; b < u.size(); ++b) {
      MiddleTerms mt = all_middle_terms(u.indecs[a], u.indecs[b], budget, rng);
      for (const auto& e : mt.terms)
        if (auto o = outside(e))
          return {false, "extension of member " + std::to_string(a) + " by member " + std::to_string(b) +
                             " has summand " + to_string(o->dims()) + " outside the universe",
                  std::nullopt, o};
    }
  auto sums = detail::small_sums(u.size());
  for (const auto& a : sums)
    for (const auto& b : sums) {
      Representation x = detail::sum_object(u, a), y = detail::sum_object(u, b);
      HomSpace h = hom_basis(x, y);
      for (const auto& f : detail::sample_morphisms(h, rng, detail::kMorphismEnumerationLimit)) {
        if (f.is_epi())
          if (auto o = outside(kernel(f).object))
            return {false, "kernel of an epimorphism has summand " + to_string(o->dims()) + " outside the universe",
                    f, o};
        if (f.is_mono())
          if (auto o = outside(cokernel(f).object))
            return {false,
                    "cokernel of a monomorphism has summand " + to_string(o->dims()) + " outside the universe", f,
                    o};
      }
    }
  return {};
}

/// All pairwise Hom-orthogonal subsets of the universe's bricks, including
/// the empty set, in depth-first order of member indices.
inline std::vector<BrickSet> enumerate_brick_sets(const ObjectUniverse& u, Rng& rng) {
  std::vector<std::size_t> bricks;
  for (std::size_t k = 0; k < u.size(); ++k)
    if (is_brick(u.indecs[k], rng)) bricks.push_back(k);
  std::size_t n = bricks.size();
  std::vector<std::vector<bool>> orth(n, std::vector<bool>(n, true));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b) orth[a][b] = hom_dim(u.indecs[bricks[a]], u.indecs[bricks[b]]) == 0;
  std::vector<BrickSet> out;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> grow = [&](std::size_t start) {
    BrickSet s;
    for (auto c : chosen) s.bricks.push_back(u.indecs[bricks[c]]);
    out.push_back(std::move(s));
    for (std::size_t k = start; k < n; ++k) {
      bool ok = std::all_of(chosen.begin(), chosen.end(), [&](std::size_t c) { return orth[c][k] && orth[k][c]; });
      if (!ok) continue;
      chosen.push_back(k);
      grow(k + 1);
      chosen.pop_back();
    }
  };
  grow(0);
  return out;
}

}  // namespace qrep
