#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrep/decomp.hpp"
#include "qrep/homext.hpp"
#include "qrep/rep.hpp"
#include "qrep/subcat.hpp"

namespace qrep {

/// P_i(j) has the paths i ~> j as basis (trivial path included); arrows act
/// by appending themselves to a path.
inline std::vector<Representation> indec_projectives(const QuiverPtr& q, const FieldSpec& f) {
  const auto& arrows = q->arrows();
  std::vector<Representation> out;
  for (std::size_t i = 1; i <= q->vertex_count(); ++i) {
    // Paths from i as arrow-index sequences, grouped by end vertex.
    std::vector<std::vector<std::vector<std::size_t>>> by_end(q->vertex_count() + 1);
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> stack{{i, {}}};
    while (!stack.empty()) {
      auto [v, path] = stack.back();
      stack.pop_back();
      by_end[v].push_back(path);
      for (std::size_t k = arrows.size(); k-- > 0;)
        if (arrows[k].source == v) {
          auto next = path;
          next.push_back(k);
          stack.emplace_back(arrows[k].target, std::move(next));
        }
    }
    std::map<std::vector<std::size_t>, std::size_t> index;
    DimVector dims;
    for (std::size_t v = 1; v <= q->vertex_count(); ++v) {
      dims.push_back(by_end[v].size());
      for (std::size_t t = 0; t < by_end[v].size(); ++t) index[by_end[v][t]] = t;
    }
    std::vector<Matrix> mats;
    for (std::size_t k = 0; k < arrows.size(); ++k) {
      std::size_t s = arrows[k].source, t = arrows[k].target;
      Matrix m(f, dims[t - 1], dims[s - 1]);
      for (std::size_t c = 0; c < by_end[s].size(); ++c) {
        auto extended = by_end[s][c];
        extended.push_back(k);
        m(index.at(extended), c) = Scalar::one(f);
      }
      mats.push_back(std::move(m));
    }
    out.emplace_back(q, f, std::move(dims), std::move(mats));
  }
  return out;
}

struct MemberWitness {
  bool holds = true;
  std::optional<std::size_t> witness;  // index into the universe
};

/// Every member is the trace of m in it, i.e. an epimorphic image of some m^k.
inline MemberWitness is_generator(const Representation& m, const ObjectUniverse& u) {
  for (std::size_t k = 0; k < u.size(); ++k)
    if (trace_subrep(m, u.indecs[k]).object.length() != u.indecs[k].length()) return {false, k};
  return {};
}

/// Ext^1(p, x) = 0 for every member x.
inline MemberWitness is_rel_projective(const Representation& p, const ObjectUniverse& u) {
  for (std::size_t k = 0; k < u.size(); ++k)
    if (ext_dim(p, u.indecs[k]) != 0) return {false, k};
  return {};
}

struct TowerStep {
  Representation object;                       // E_i
  std::optional<std::size_t> simple_index;     // relative simple used to extend E_{i-1}
  std::optional<std::size_t> cocycle_index;
  bool unique_simple_quotient = true;          // audit of E_i
};

enum class TowerOutcome { ProjectiveReached, BoundExceeded };

struct TowerTrace {
  std::vector<TowerStep> steps;
  TowerOutcome outcome = TowerOutcome::ProjectiveReached;
  std::vector<Representation> simples;  // relative simples of the universe, canonical order

  const Representation& last() const { return steps.back().object; }
  bool audits_ok() const {
    for (std::size_t k = 1; k < steps.size(); ++k)
      if (steps[k].object.length() != steps[k - 1].object.length() + simples[*steps[k].simple_index].length())
        return false;
    for (const auto& s : steps)
      if (!s.unique_simple_quotient) return false;
    return true;
  }
};

namespace detail {

// Exactly one relative simple receives maps from e, with a one-dimensional
// Hom space over its endomorphism ring.
inline bool has_unique_simple_quotient(const Representation& e, const std::vector<Representation>& simples) {
  std::size_t hits = 0;
  for (const auto& s : simples) {
    std::size_t h = hom_dim(e, s);
    if (h == 0) continue;
    ++hits;
    if (h != endomorphism_dim(s)) return false;
  }
  return hits == 1;
}

inline TowerTrace run_tower(const Representation& s, const std::vector<Representation>& simples, std::size_t maxlen) {
  TowerTrace t;
  t.simples = simples;
  t.steps.push_back({s, std::nullopt, std::nullopt, has_unique_simple_quotient(s, simples)});
  for (;;) {
    const Representation cur = t.last();
    std::optional<std::size_t> target;
    ExtSpace ext{cur, cur, {}, {}, {}};
    for (std::size_t k = 0; k < simples.size() && !target; ++k) {
      ExtSpace e = ext_basis(cur, simples[k]);
      if (e.dim() > 0) {
        target = k;
        ext = std::move(e);
      }
    }
    if (!target) {
      t.outcome = TowerOutcome::ProjectiveReached;
      return t;
    }
    if (cur.length() + simples[*target].length() > maxlen) {
      t.outcome = TowerOutcome::BoundExceeded;
      return t;
    }
    Extension e = middle_term(ext.basis.front(), cur, simples[*target]);
    t.steps.push_back({e.middle, target, 0, has_unique_simple_quotient(e.middle, simples)});
  }
}

}  // namespace detail

/// E_0 = s; while Ext^1(E_i, s') != 0 for some relative simple s' (first in
/// universe order), E_{i+1} is the middle term of the first basis cocycle.
inline TowerTrace tower(const Representation& s, const ObjectUniverse& u, std::size_t maxlen, Rng& rng) {
  std::vector<Representation> simples = relative_simples(u, rng);
  bool ok = false;
  for (const auto& x : simples)
    if (is_isomorphic(x, s, rng)) ok = true;
  if (!ok) throw std::invalid_argument("tower: start object is not a relative simple of the universe");
  return detail::run_tower(s, simples, maxlen);
}

struct ProjectiveGeneratorResult {
  bool found = false;
  std::optional<Representation> generator;  // sum of the tower tops
  std::vector<Representation> summands;     // one projective cover per relative simple
  std::vector<TowerTrace> towers;
  MemberWitness generates;
  MemberWitness projective;
};

/// Runs a tower from every relative simple; on success returns their sum
/// together with the generator and relative-projectivity certificates.
inline ProjectiveGeneratorResult projective_generator(const ObjectUniverse& u, std::size_t maxlen, Rng& rng) {
  ProjectiveGeneratorResult r;
  std::vector<Representation> simples = relative_simples(u, rng);
  for (const auto& s : simples) {
    r.towers.push_back(detail::run_tower(s, simples, maxlen));
    if (r.towers.back().outcome == TowerOutcome::BoundExceeded) return r;
    r.summands.push_back(r.towers.back().last());
  }
  Representation p = direct_sum(u.quiver, u.field, r.summands);
  r.generates = is_generator(p, u);
  r.projective = is_rel_projective(p, u);
  r.found = r.generates.holds && r.projective.holds;
  r.generator = p;
  return r;
}

struct GeneratorTheoremReport {
  bool verdict_issued = false;  // false on incomplete universes
  bool pass = false;
  bool generator_exists = false;
  std::optional<Representation> generator;
  ProjectiveGeneratorResult projective;
  std::size_t projective_end_dim = 0;
  std::vector<std::size_t> hom_from_projective;  // dim Hom(P, x) per member
  std::optional<bool> projective_is_summand;     // every tower top occurs among the members
};

/// If some sum of members generates the universe, a projective generator
/// must come out of the towers. Sums with multiplicity <= 2 generate iff
/// the plain sum of all members does, so that sum is the only candidate.
inline GeneratorTheoremReport check_generator_theorem(const ObjectUniverse& u, std::size_t maxlen, Rng& rng) {
  GeneratorTheoremReport r;
  r.verdict_issued = u.complete;
  if (u.size() == 0) {
    r.pass = true;
    r.generator_exists = true;
    r.generator = Representation::zero(u.quiver, u.field);
    r.projective = projective_generator(u, maxlen, rng);
    r.projective_is_summand = true;
    return r;
  }
  Representation m = direct_sum(u.quiver, u.field, u.indecs);
  r.generator_exists = is_generator(m, u).holds;
  if (r.generator_exists) r.generator = m;
  r.projective = projective_generator(u, maxlen, rng);
  if (r.projective.found) {
    r.projective_end_dim = endomorphism_dim(*r.projective.generator);
    for (const auto& x : u.indecs) r.hom_from_projective.push_back(hom_dim(*r.projective.generator, x));
    bool summand = true;
    for (const auto& p : r.projective.summands)
      if (!u.find(p, rng)) summand = false;
    r.projective_is_summand = summand;
  }
  r.pass = !r.generator_exists || r.projective.found;
  return r;
}

}  // namespace qrep
