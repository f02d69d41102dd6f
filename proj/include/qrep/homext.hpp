#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qrep/errors.hpp"
#include "qrep/matrix.hpp"
#include "qrep/rep.hpp"

namespace qrep {

/// A 1-cocycle for Ext^1(m, n): one n_j x m_i matrix per arrow a: i -> j.
struct Cocycle {
  std::vector<Matrix> blocks;
};

/// Ext^1(m, n) as the cokernel of the defect map. The basis consists of the
/// standard unit vectors completing im(phi), reshaped into cocycles.
struct ExtSpace {
  Representation m;
  Representation n;
  std::vector<Cocycle> basis;
  DefectMap defect;
  SplitSpace image_split;  // im(phi) completed by the basis unit vectors

  std::size_t dim() const { return basis.size(); }

  Cocycle combination(const std::vector<Scalar>& coeffs) const {
    Cocycle c = zero_cocycle();
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (coeffs[k].is_zero()) continue;
      for (std::size_t a = 0; a < c.blocks.size(); ++a) c.blocks[a] += coeffs[k] * basis[k].blocks[a];
    }
    return c;
  }

  Cocycle zero_cocycle() const {
    Cocycle c;
    for (const auto& a : m.quiver().arrows())
      c.blocks.emplace_back(m.field(), n.dim(a.target - 1), m.dim(a.source - 1));
    return c;
  }

  Matrix flatten(const Cocycle& c) const {
    Matrix v(m.field(), defect.phi.rows(), 1);
    const auto& arrows = m.quiver().arrows();
    for (std::size_t a = 0; a < arrows.size(); ++a) {
      std::size_t cols = m.dim(arrows[a].source - 1);
      for (std::size_t r = 0; r < c.blocks[a].rows(); ++r)
        for (std::size_t s = 0; s < cols; ++s) v(defect.arrow_offset[a] + r * cols + s, 0) = c.blocks[a](r, s);
    }
    return v;
  }

  /// Coordinates of the class of c in the basis; zero iff c is a coboundary.
  std::vector<Scalar> class_of(const Cocycle& c) const {
    Matrix q = image_split.quotient_map() * flatten(c);
    std::vector<Scalar> out;
    for (std::size_t k = 0; k < q.rows(); ++k) out.push_back(q(k, 0));
    return out;
  }

  /// phi(f) for f in the defect map's domain, as a cocycle.
  Cocycle coboundary(const std::vector<Matrix>& f) const {
    Cocycle c;
    const auto& arrows = m.quiver().arrows();
    for (std::size_t a = 0; a < arrows.size(); ++a) {
      std::size_t i = arrows[a].source - 1, j = arrows[a].target - 1;
      c.blocks.push_back(f[j] * m.mat(a) - n.mat(a) * f[i]);
    }
    return c;
  }
};

inline ExtSpace ext_basis(const Representation& m, const Representation& n) {
  ExtSpace e{m, n, {}, defect_map(m, n), {}};
  e.image_split = split_space(column_space(e.defect.phi));
  const auto& arrows = m.quiver().arrows();
  const Matrix& comp = e.image_split.complement;
  for (std::size_t k = 0; k < comp.cols(); ++k) {
    Cocycle c = e.zero_cocycle();
    for (std::size_t a = 0; a < arrows.size(); ++a) {
      std::size_t cols = m.dim(arrows[a].source - 1);
      for (std::size_t r = 0; r < c.blocks[a].rows(); ++r)
        for (std::size_t s = 0; s < cols; ++s) c.blocks[a](r, s) = comp(e.defect.arrow_offset[a] + r * cols + s, k);
    }
    e.basis.push_back(std::move(c));
  }
  return e;
}

inline std::size_t ext_dim(const Representation& m, const Representation& n) {
  DefectMap d = defect_map(m, n);
  return d.phi.rows() - rank(d.phi);
}

/// 0 -> n --mono--> middle --epi--> m -> 0.
struct Extension {
  Representation middle;
  RepMorphism mono;
  RepMorphism epi;
};

/// middle(i) = n(i) + m(i) with arrow blocks [[n(a), c_a], [0, m(a)]].
inline Extension middle_term(const Cocycle& c, const Representation& m, const Representation& n) {
  check_compatible(m, n);
  const FieldSpec& f = m.field();
  const auto& arrows = m.quiver().arrows();
  if (c.blocks.size() != arrows.size()) throw MismatchError("cocycle has the wrong number of arrow blocks");
  DimVector dims;
  for (std::size_t v = 0; v < m.vertex_count(); ++v) dims.push_back(n.dim(v) + m.dim(v));
  std::vector<Matrix> mats;
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    std::size_t i = arrows[a].source - 1, j = arrows[a].target - 1;
    if (c.blocks[a].rows() != n.dim(j) || c.blocks[a].cols() != m.dim(i))
      throw MismatchError("cocycle block for arrow " + arrows[a].id + " has shape " + c.blocks[a].shape());
    Matrix e(f, dims[j], dims[i]);
    e.set_block(0, 0, n.mat(a));
    e.set_block(0, n.dim(i), c.blocks[a]);
    e.set_block(n.dim(j), n.dim(i), m.mat(a));
    mats.push_back(std::move(e));
  }
  Representation mid(m.quiver_ptr(), f, dims, std::move(mats));
  RepMorphism mono{n, mid, {}}, epi{mid, m, {}};
  for (std::size_t v = 0; v < m.vertex_count(); ++v) {
    Matrix in(f, dims[v], n.dim(v)), out(f, m.dim(v), dims[v]);
    for (std::size_t r = 0; r < n.dim(v); ++r) in(r, r) = Scalar::one(f);
    for (std::size_t r = 0; r < m.dim(v); ++r) out(r, n.dim(v) + r) = Scalar::one(f);
    mono.comps.push_back(std::move(in));
    epi.comps.push_back(std::move(out));
  }
  return {mid, mono, epi};
}

struct MiddleTerms {
  std::vector<Representation> terms;  // pairwise non-isomorphic
  bool sampled = false;
};

namespace detail {

// Representatives of the nonzero vectors of F_p^dim up to scalars (first
// nonzero coordinate 1), in lexicographic order of the pivot position.
inline std::vector<std::vector<Scalar>> projective_points(const FieldSpec& f, std::size_t dim) {
  std::vector<std::vector<Scalar>> pts;
  for (std::size_t lead = 0; lead < dim; ++lead) {
    std::vector<std::uint32_t> tail(dim - lead - 1, 0);
    do {
      std::vector<Scalar> v(dim, Scalar::zero(f));
      v[lead] = Scalar::one(f);
      for (std::size_t k = 0; k < tail.size(); ++k) v[lead + 1 + k] = Scalar::from_int(f, tail[k]);
      pts.push_back(std::move(v));
    } while (next_tuple(tail, f.p));
  }
  return pts;
}

inline void add_if_new(std::vector<Representation>& reps, const Representation& r, Rng& rng) {
  for (const auto& x : reps)
    if (is_isomorphic(x, r, rng)) return;
  reps.push_back(r);
}

}  // namespace detail

/// Middle terms of all extensions of m by n, up to isomorphism. Exhaustive
/// over F_p when p^dim <= budget; otherwise the split extension, the basis
/// cocycles and 32 seeded random combinations, flagged as sampled.
inline MiddleTerms all_middle_terms(const Representation& m, const Representation& n, std::uint64_t budget,
                                    Rng& rng) {
  ExtSpace e = ext_basis(m, n);
  const FieldSpec& f = m.field();
  MiddleTerms out;
  out.terms.push_back(direct_sum({n, m}));
  if (e.dim() == 0) return out;
  std::vector<std::vector<Scalar>> classes;
  if (f.is_prime_field() && detail::bounded_pow(f.p, e.dim(), budget) <= budget) {
    classes = detail::projective_points(f, e.dim());
  } else {
    out.sampled = true;
    for (std::size_t k = 0; k < e.dim(); ++k) {
      std::vector<Scalar> v(e.dim(), Scalar::zero(f));
      v[k] = Scalar::one(f);
      classes.push_back(std::move(v));
    }
    for (int t = 0; t < 32; ++t) classes.push_back(detail::random_coefficients(f, e.dim(), rng));
  }
  for (const auto& c : classes) {
    bool nonzero = std::any_of(c.begin(), c.end(), [](const Scalar& s) { return !s.is_zero(); });
    if (!nonzero) continue;
    detail::add_if_new(out.terms, middle_term(e.combination(c), m, n).middle, rng);
  }
  return out;
}

}  // namespace qrep
