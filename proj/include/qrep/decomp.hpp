#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qrep/errors.hpp"
#include "qrep/rep.hpp"

namespace qrep {

/// m = ker(f^N) + im(f^N) with N = length(m).
struct FittingSplit {
  Subobject nilpotent_part;   // kernel of f^N
  Subobject invertible_part;  // image of f^N
  RepMorphism iso;            // nilpotent_part + invertible_part -> m

  bool trivial() const { return nilpotent_part.object.is_zero() || invertible_part.object.is_zero(); }
};

inline RepMorphism power(const RepMorphism& f, std::size_t k) {
  RepMorphism acc = RepMorphism::identity(f.source);
  for (std::size_t t = 0; t < k; ++t) acc = compose(f, acc);
  return acc;
}

inline FittingSplit fitting_split(const Representation& m, const RepMorphism& f) {
  if (!(f.source == m) || !(f.target == m)) throw MismatchError("fitting_split: not an endomorphism of m");
  auto [a, b] = detail::fitting_parts(m, f);
  Representation sum = direct_sum(m.quiver_ptr(), m.field(), {a.object, b.object});
  RepMorphism iso{sum, m, {}};
  for (std::size_t v = 0; v < m.vertex_count(); ++v)
    iso.comps.push_back(hstack(m.field(), m.dim(v), {a.mono.comps[v], b.mono.comps[v]}));
  return {a, b, iso};
}

struct IndecSummand {
  Representation rep;
  std::size_t multiplicity = 1;
};

struct IndecSummandList {
  std::vector<IndecSummand> summands;

  std::size_t count() const {
    std::size_t c = 0;
    for (const auto& s : summands) c += s.multiplicity;
    return c;
  }
};

struct DecomposeOptions {
  std::size_t random_trials = 64;
};

/// Krull-Remak-Schmidt decomposition by repeated Fitting splits. A piece is
/// declared indecomposable when no tried endomorphism splits it.
inline IndecSummandList decompose(const Representation& m, Rng& rng, const DecomposeOptions& opt = {}) {
  std::vector<detail::Piece> pieces;
  detail::split_pieces(m, RepMorphism::identity(m), rng, opt.random_trials, pieces);
  IndecSummandList out;
  for (const auto& [p, mono] : pieces) {
    bool merged = false;
    for (auto& s : out.summands)
      if (is_isomorphic(s.rep, p, rng)) {
        ++s.multiplicity;
        merged = true;
        break;
      }
    if (!merged) out.summands.push_back({p, 1});
  }
  return out;
}

inline std::size_t endomorphism_dim(const Representation& m) { return hom_dim(m, m); }

enum class BrickStatus { Brick, NotBrick, Inconclusive };

struct BrickVerdict {
  BrickStatus status = BrickStatus::Inconclusive;
  std::optional<RepMorphism> witness;  // nonzero non-invertible endomorphism
  bool exhaustive = false;
};

/// End(m) is a division ring iff every nonzero endomorphism is invertible.
inline BrickVerdict brick_test(const Representation& m, Rng& rng, std::uint64_t exhaustive_limit = 1'000'000) {
  if (m.is_zero()) throw ZeroObjectError("brick test of the zero representation");
  HomSpace end = hom_basis(m, m);
  if (end.dim() == 1) return {BrickStatus::Brick, std::nullopt, true};
  for (const auto& f : end.basis)
    if (!f.is_iso()) return {BrickStatus::NotBrick, f, false};
  const FieldSpec& fld = m.field();
  if (fld.is_prime_field() && detail::bounded_pow(fld.p, end.dim(), exhaustive_limit) <= exhaustive_limit) {
    // Invertibility is scale invariant, so projective points suffice.
    for (std::size_t lead = 0; lead < end.dim(); ++lead) {
      std::vector<std::uint32_t> tail(end.dim() - lead - 1, 0);
      do {
        std::vector<Scalar> c(end.dim(), Scalar::zero(fld));
        c[lead] = Scalar::one(fld);
        for (std::size_t k = 0; k < tail.size(); ++k) c[lead + 1 + k] = Scalar::from_int(fld, tail[k]);
        RepMorphism f = end.combination(c);
        if (!f.is_iso()) return {BrickStatus::NotBrick, f, true};
      } while (detail::next_tuple(tail, fld.p));
    }
    return {BrickStatus::Brick, std::nullopt, true};
  }
  for (int t = 0; t < 64; ++t) {
    RepMorphism f = end.combination(detail::random_coefficients(fld, end.dim(), rng));
    if (!f.is_zero() && !f.is_iso()) return {BrickStatus::NotBrick, f, false};
  }
  return {BrickStatus::Inconclusive, std::nullopt, false};
}

/// Throws InconclusiveError when brick_test cannot decide.
inline bool is_brick(const Representation& m, Rng& rng) {
  BrickVerdict v = brick_test(m, rng);
  if (v.status == BrickStatus::Inconclusive)
    throw InconclusiveError("brick test inconclusive for dimension vector " + to_string(m.dims()));
  return v.status == BrickStatus::Brick;
}

}  // namespace qrep
