#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qrep/errors.hpp"
#include "qrep/field.hpp"
#include "qrep/matrix.hpp"
#include "qrep/poly.hpp"
#include "qrep/quiver.hpp"

namespace qrep {

/// A finite-dimensional representation: a vector space k^{d_i} per vertex and
/// a d_j x d_i matrix per arrow i -> j. Immutable; copies share storage.
class Representation {
 public:
  Representation(QuiverPtr q, FieldSpec f, DimVector dims, std::vector<Matrix> mats) {
    if (!q) throw MismatchError("representation without a quiver");
    if (dims.size() != q->vertex_count())
      throw MismatchError("dimension vector " + to_string(dims) + " does not match quiver " + q->name());
    if (mats.size() != q->arrows().size()) throw MismatchError("one matrix per arrow required");
    for (std::size_t k = 0; k < mats.size(); ++k) {
      const Arrow& a = q->arrows()[k];
      if (mats[k].rows() != dims[a.target - 1] || mats[k].cols() != dims[a.source - 1])
        throw MismatchError("arrow " + a.id + " expects a " + std::to_string(dims[a.target - 1]) + "x" +
                            std::to_string(dims[a.source - 1]) + " matrix, got " + mats[k].shape());
      if (mats[k].field() != f && !mats[k].empty()) throw MismatchError("arrow " + a.id + " matrix over wrong field");
      if (mats[k].empty()) mats[k] = Matrix(f, mats[k].rows(), mats[k].cols());
    }
    d_ = std::make_shared<const Data>(Data{std::move(q), f, std::move(dims), std::move(mats)});
  }

  static Representation zero(QuiverPtr q, FieldSpec f) {
    return with_zero_arrows(q, f, DimVector(q->vertex_count(), 0));
  }

  /// All arrow matrices zero.
  static Representation with_zero_arrows(QuiverPtr q, FieldSpec f, DimVector dims) {
    std::vector<Matrix> mats;
    for (const auto& a : q->arrows()) mats.emplace_back(f, dims.at(a.target - 1), dims.at(a.source - 1));
    return Representation(std::move(q), f, std::move(dims), std::move(mats));
  }

  /// The simple S_i at a 1-based vertex.
  static Representation simple(QuiverPtr q, FieldSpec f, std::size_t vertex) {
    DimVector d(q->vertex_count(), 0);
    d.at(vertex - 1) = 1;
    return with_zero_arrows(std::move(q), f, std::move(d));
  }

  const Quiver& quiver() const { return *d_->quiver; }
  const QuiverPtr& quiver_ptr() const { return d_->quiver; }
  const FieldSpec& field() const { return d_->field; }
  const DimVector& dims() const { return d_->dims; }
  /// Dimension at 0-based vertex index.
  std::size_t dim(std::size_t v) const { return d_->dims[v]; }
  const std::vector<Matrix>& mats() const { return d_->mats; }
  const Matrix& mat(std::size_t arrow) const { return d_->mats[arrow]; }
  std::size_t vertex_count() const { return d_->dims.size(); }
  std::size_t length() const { return total(d_->dims); }
  bool is_zero() const { return length() == 0; }

  friend bool operator==(const Representation& a, const Representation& b) {
    return (a.d_->quiver == b.d_->quiver || *a.d_->quiver == *b.d_->quiver) && a.field() == b.field() &&
           a.dims() == b.dims() && a.mats() == b.mats();
  }

 private:
  struct Data {
    QuiverPtr quiver;
    FieldSpec field;
    DimVector dims;
    std::vector<Matrix> mats;
  };
  std::shared_ptr<const Data> d_;
};

inline void check_compatible(const Representation& m, const Representation& n) {
  if (m.field() != n.field()) throw MismatchError("field mismatch: " + m.field().name() + " vs " + n.field().name());
  if (m.quiver_ptr() != n.quiver_ptr() && !(m.quiver() == n.quiver())) throw MismatchError("quiver mismatch");
}

/// Vertex-wise linear maps source(i) -> target(i).
struct RepMorphism {
  Representation source;
  Representation target;
  std::vector<Matrix> comps;

  const Matrix& at(std::size_t v) const { return comps[v]; }

  /// All commuting squares f_j M(a) = N(a) f_i hold exactly.
  bool commutes() const {
    const auto& arrows = source.quiver().arrows();
    for (std::size_t k = 0; k < arrows.size(); ++k) {
      std::size_t i = arrows[k].source - 1, j = arrows[k].target - 1;
      if (!(comps[j] * source.mat(k) == target.mat(k) * comps[i])) return false;
    }
    return true;
  }

  bool is_zero() const {
    return std::all_of(comps.begin(), comps.end(), [](const Matrix& m) { return m.is_zero(); });
  }
  bool is_mono() const {
    return std::all_of(comps.begin(), comps.end(), [](const Matrix& m) { return rank(m) == m.cols(); });
  }
  bool is_epi() const {
    return std::all_of(comps.begin(), comps.end(), [](const Matrix& m) { return rank(m) == m.rows(); });
  }
  bool is_iso() const {
    return std::all_of(comps.begin(), comps.end(), [](const Matrix& m) { return is_invertible(m); });
  }

  static RepMorphism identity(const Representation& m) {
    RepMorphism f{m, m, {}};
    for (auto d : m.dims()) f.comps.push_back(Matrix::identity(m.field(), d));
    return f;
  }

  static RepMorphism zero(const Representation& m, const Representation& n) {
    RepMorphism f{m, n, {}};
    for (std::size_t v = 0; v < m.vertex_count(); ++v) f.comps.emplace_back(m.field(), n.dim(v), m.dim(v));
    return f;
  }
};

/// g after f.
inline RepMorphism compose(const RepMorphism& g, const RepMorphism& f) {
  RepMorphism h{f.source, g.target, {}};
  for (std::size_t v = 0; v < f.comps.size(); ++v) h.comps.push_back(g.comps[v] * f.comps[v]);
  return h;
}

inline RepMorphism operator+(const RepMorphism& f, const RepMorphism& g) {
  RepMorphism h = f;
  for (std::size_t v = 0; v < h.comps.size(); ++v) h.comps[v] += g.comps[v];
  return h;
}

inline RepMorphism operator*(const Scalar& s, const RepMorphism& f) {
  RepMorphism h = f;
  for (auto& c : h.comps) c *= s;
  return h;
}

/// The inverse of an isomorphism.
inline RepMorphism invert(const RepMorphism& f) {
  RepMorphism g{f.target, f.source, {}};
  for (const auto& c : f.comps) {
    auto inv = inverse(c);
    if (!inv) throw MismatchError("invert: morphism is not an isomorphism");
    g.comps.push_back(*inv);
  }
  return g;
}

/// Layout of the defect map phi: (+_i Hom(M_i, N_i)) -> (+_{a: i->j} Hom(M_i, N_j)),
/// phi(f)_a = f_j M(a) - N(a) f_i. Both sides are flattened row-major, block
/// by block in vertex order (domain) resp. arrow order (codomain).
struct DefectMap {
  Matrix phi;
  std::vector<std::size_t> vertex_offset;
  std::vector<std::size_t> arrow_offset;
};

inline DefectMap defect_map(const Representation& m, const Representation& n) {
  check_compatible(m, n);
  const FieldSpec& f = m.field();
  const auto& arrows = m.quiver().arrows();
  DefectMap d;
  std::size_t cols = 0, rows = 0;
  for (std::size_t v = 0; v < m.vertex_count(); ++v) {
    d.vertex_offset.push_back(cols);
    cols += n.dim(v) * m.dim(v);
  }
  for (const auto& a : arrows) {
    d.arrow_offset.push_back(rows);
    rows += n.dim(a.target - 1) * m.dim(a.source - 1);
  }
  d.phi = Matrix(f, rows, cols);
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    std::size_t i = arrows[k].source - 1, j = arrows[k].target - 1;
    std::size_t mi = m.dim(i), mj = m.dim(j), ni = n.dim(i), nj = n.dim(j);
    const Matrix& ma = m.mat(k);
    const Matrix& na = n.mat(k);
    for (std::size_t r = 0; r < nj; ++r)
      for (std::size_t c = 0; c < mi; ++c) {
        std::size_t row = d.arrow_offset[k] + r * mi + c;
        // (f_j M(a))(r, c) = sum_t f_j(r, t) M(a)(t, c)
        for (std::size_t t = 0; t < mj; ++t) d.phi(row, d.vertex_offset[j] + r * mj + t) += ma(t, c);
        // -(N(a) f_i)(r, c) = -sum_t N(a)(r, t) f_i(t, c)
        for (std::size_t t = 0; t < ni; ++t) d.phi(row, d.vertex_offset[i] + t * mi + c) -= na(r, t);
      }
  }
  return d;
}

/// Reassembles vertex maps from a column vector in the defect map's domain layout.
inline RepMorphism morphism_from_vector(const Representation& m, const Representation& n, const DefectMap& d,
                                        const Matrix& vec, std::size_t col = 0) {
  RepMorphism f{m, n, {}};
  for (std::size_t v = 0; v < m.vertex_count(); ++v) {
    Matrix c(m.field(), n.dim(v), m.dim(v));
    for (std::size_t r = 0; r < n.dim(v); ++r)
      for (std::size_t s = 0; s < m.dim(v); ++s) c(r, s) = vec(d.vertex_offset[v] + r * m.dim(v) + s, col);
    f.comps.push_back(std::move(c));
  }
  return f;
}

struct HomSpace {
  Representation source;
  Representation target;
  std::vector<RepMorphism> basis;

  std::size_t dim() const { return basis.size(); }

  RepMorphism combination(const std::vector<Scalar>& coeffs) const {
    RepMorphism f = RepMorphism::zero(source, target);
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (!coeffs[k].is_zero()) f = f + coeffs[k] * basis[k];
    return f;
  }
};

/// Basis of Hom(m, n) as the kernel of the defect map.
inline HomSpace hom_basis(const Representation& m, const Representation& n) {
  DefectMap d = defect_map(m, n);
  Matrix k = kernel_basis(d.phi);
  HomSpace h{m, n, {}};
  for (std::size_t c = 0; c < k.cols(); ++c) h.basis.push_back(morphism_from_vector(m, n, d, k, c));
  return h;
}

inline std::size_t hom_dim(const Representation& m, const Representation& n) {
  DefectMap d = defect_map(m, n);
  return d.phi.cols() - rank(d.phi);
}

/// A subobject together with its monomorphism into the ambient object.
struct Subobject {
  Representation object;
  RepMorphism mono;
};

/// A quotient together with the epimorphism onto it.
struct Quotient {
  Representation object;
  RepMorphism epi;
};

/// The subrepresentation spanned vertex-wise by the full-rank column bases;
/// throws MismatchError when the spaces are not stable under the arrows.
inline Subobject subrep_from_bases(const Representation& m, const std::vector<Matrix>& bases) {
  const FieldSpec& f = m.field();
  const auto& arrows = m.quiver().arrows();
  DimVector dims;
  std::vector<Matrix> coords;
  for (const auto& b : bases) {
    dims.push_back(b.cols());
    coords.push_back(split_space(b).sub_coords());
  }
  std::vector<Matrix> mats;
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    std::size_t i = arrows[k].source - 1, j = arrows[k].target - 1;
    Matrix image = m.mat(k) * bases[i];
    Matrix induced = coords[j] * image;
    if (!(bases[j] * induced == image)) throw MismatchError("subspaces are not a subrepresentation");
    mats.push_back(std::move(induced));
  }
  Representation sub(m.quiver_ptr(), f, std::move(dims), std::move(mats));
  return {sub, RepMorphism{sub, m, bases}};
}

/// m modulo the arrow-stable subspaces with the given bases. Each quotient
/// space is identified with the span of the complementary unit vectors.
inline Quotient quotient_by(const Representation& m, const std::vector<Matrix>& sub_bases) {
  const FieldSpec& f = m.field();
  const auto& arrows = m.quiver().arrows();
  std::vector<SplitSpace> split;
  DimVector dims;
  std::vector<Matrix> proj;
  for (const auto& b : sub_bases) {
    split.push_back(split_space(b));
    dims.push_back(split.back().codim());
    proj.push_back(split.back().quotient_map());
  }
  std::vector<Matrix> mats;
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    std::size_t i = arrows[k].source - 1, j = arrows[k].target - 1;
    mats.push_back(proj[j] * m.mat(k) * split[i].complement);
  }
  Representation quot(m.quiver_ptr(), f, std::move(dims), std::move(mats));
  return {quot, RepMorphism{m, quot, std::move(proj)}};
}

inline Subobject kernel(const RepMorphism& f) {
  std::vector<Matrix> bases;
  for (const auto& c : f.comps) bases.push_back(kernel_basis(c));
  return subrep_from_bases(f.source, bases);
}

inline Subobject image(const RepMorphism& f) {
  std::vector<Matrix> bases;
  for (const auto& c : f.comps) bases.push_back(column_space(c));
  return subrep_from_bases(f.target, bases);
}

inline Quotient cokernel(const RepMorphism& f) {
  std::vector<Matrix> bases;
  for (const auto& c : f.comps) bases.push_back(column_space(c));
  return quotient_by(f.target, bases);
}

/// Block-diagonal sum; the empty sum is the zero representation.
inline Representation direct_sum(const QuiverPtr& q, const FieldSpec& f, const std::vector<Representation>& ms) {
  DimVector dims(q->vertex_count(), 0);
  for (const auto& m : ms) {
    if (m.field() != f || !(m.quiver() == *q)) throw MismatchError("direct_sum: mismatched summand");
    for (std::size_t v = 0; v < dims.size(); ++v) dims[v] += m.dim(v);
  }
  std::vector<Matrix> mats;
  for (std::size_t k = 0; k < q->arrows().size(); ++k) {
    std::vector<Matrix> blocks;
    for (const auto& m : ms) blocks.push_back(m.mat(k));
    mats.push_back(block_diag(f, blocks));
  }
  return Representation(q, f, std::move(dims), std::move(mats));
}

inline Representation direct_sum(const std::vector<Representation>& ms) {
  if (ms.empty()) throw MismatchError("direct_sum of an empty list needs a quiver and field");
  return direct_sum(ms.front().quiver_ptr(), ms.front().field(), ms);
}

/// Inclusion of summand `which` into direct_sum(ms).
inline RepMorphism summand_injection(const Representation& sum, const std::vector<Representation>& ms,
                                     std::size_t which) {
  RepMorphism f{ms[which], sum, {}};
  for (std::size_t v = 0; v < sum.vertex_count(); ++v) {
    std::size_t off = 0;
    for (std::size_t t = 0; t < which; ++t) off += ms[t].dim(v);
    Matrix c(sum.field(), sum.dim(v), ms[which].dim(v));
    for (std::size_t r = 0; r < ms[which].dim(v); ++r) c(off + r, r) = Scalar::one(sum.field());
    f.comps.push_back(std::move(c));
  }
  return f;
}

inline RepMorphism summand_projection(const Representation& sum, const std::vector<Representation>& ms,
                                      std::size_t which) {
  RepMorphism inj = summand_injection(sum, ms, which);
  RepMorphism f{sum, ms[which], {}};
  for (const auto& c : inj.comps) f.comps.push_back(c.transpose());
  return f;
}

/// rad(M)(j) = sum of the images of the arrows ending at j.
inline Subobject radical(const Representation& m) {
  const auto& arrows = m.quiver().arrows();
  std::vector<Matrix> bases;
  for (std::size_t j = 0; j < m.vertex_count(); ++j) {
    std::vector<Matrix> incoming;
    for (std::size_t k = 0; k < arrows.size(); ++k)
      if (arrows[k].target - 1 == j) incoming.push_back(m.mat(k));
    bases.push_back(column_space(hstack(m.field(), m.dim(j), incoming)));
  }
  return subrep_from_bases(m, bases);
}

inline Quotient top(const Representation& m) {
  Subobject rad = radical(m);
  return quotient_by(m, rad.mono.comps);
}

/// Smallest vertex with a nonzero top, and the projection onto the first
/// coordinate of that top.
inline std::pair<std::size_t, RepMorphism> simple_quotient(const Representation& m) {
  if (m.is_zero()) throw ZeroObjectError("simple_quotient of the zero representation");
  Quotient t = top(m);
  std::size_t v = 0;
  while (t.object.dim(v) == 0) ++v;
  Representation s = Representation::simple(m.quiver_ptr(), m.field(), v + 1);
  RepMorphism epi = RepMorphism::zero(m, s);
  epi.comps[v] = t.epi.comps[v].block(0, 0, 1, m.dim(v));
  return {v + 1, epi};
}

/// Vertex labels of the composition factors, top to bottom.
inline std::vector<std::size_t> composition_series(Representation m) {
  std::vector<std::size_t> labels;
  while (!m.is_zero()) {
    auto [v, epi] = simple_quotient(m);
    labels.push_back(v);
    m = kernel(epi).object;
  }
  return labels;
}

/// The subrepresentation of x generated by the images of all maps m -> x.
inline Subobject trace_subrep(const Representation& m, const Representation& x) {
  HomSpace h = hom_basis(m, x);
  std::vector<Matrix> bases;
  for (std::size_t v = 0; v < x.vertex_count(); ++v) {
    std::vector<Matrix> imgs;
    for (const auto& f : h.basis) imgs.push_back(f.comps[v]);
    bases.push_back(column_space(hstack(x.field(), x.dim(v), imgs)));
  }
  return subrep_from_bases(x, bases);
}

inline Representation random_rep(const QuiverPtr& q, const DimVector& d, const FieldSpec& f, Rng& rng) {
  if (d.size() != q->vertex_count()) throw MismatchError("dimension vector does not match quiver");
  std::vector<Matrix> mats;
  for (const auto& a : q->arrows()) mats.push_back(random_matrix(d[a.target - 1], d[a.source - 1], f, rng));
  return Representation(q, f, d, std::move(mats));
}

/// Transport of structure along invertible vertex maps g: the result has
/// arrows g_j M(a) g_i^{-1}, and g is an isomorphism m -> result.
inline std::pair<Representation, RepMorphism> conjugate(const Representation& m, const std::vector<Matrix>& g) {
  const auto& arrows = m.quiver().arrows();
  std::vector<Matrix> inv;
  for (const auto& c : g) {
    auto i = inverse(c);
    if (!i) throw MismatchError("conjugate: vertex map not invertible");
    inv.push_back(*i);
  }
  std::vector<Matrix> mats;
  for (std::size_t k = 0; k < arrows.size(); ++k)
    mats.push_back(g[arrows[k].target - 1] * m.mat(k) * inv[arrows[k].source - 1]);
  Representation out(m.quiver_ptr(), m.field(), m.dims(), std::move(mats));
  return {out, RepMorphism{m, out, g}};
}

inline std::pair<Representation, RepMorphism> random_conjugate(const Representation& m, Rng& rng) {
  std::vector<Matrix> g;
  for (auto d : m.dims()) g.push_back(random_invertible(d, m.field(), rng));
  return conjugate(m, g);
}

/// Tuning of the isomorphism search.
struct IsoSearch {
  std::size_t random_trials = 32;
  std::size_t exhaustive_max_dim = 4;
  std::uint64_t exhaustive_max_count = 1'000'000;
  std::size_t split_trials = 64;
};

namespace detail {

// Coefficients for randomized searches. Over Q a wide integer range keeps the
// Schwartz-Zippel failure probability negligible.
inline Scalar search_coefficient(const FieldSpec& f, Rng& rng) {
  if (f.is_prime_field()) return random_scalar(f, rng);
  std::uniform_int_distribution<long long> dist(-1'000'000, 1'000'000);
  return Scalar::from_int(f, dist(rng));
}

inline std::vector<Scalar> random_coefficients(const FieldSpec& f, std::size_t n, Rng& rng) {
  std::vector<Scalar> c;
  for (std::size_t k = 0; k < n; ++k) c.push_back(search_coefficient(f, rng));
  return c;
}

// p^e, saturating at limit + 1.
inline std::uint64_t bounded_pow(std::uint64_t p, std::size_t e, std::uint64_t limit) {
  std::uint64_t acc = 1;
  for (std::size_t k = 0; k < e; ++k) {
    if (acc > limit / p) return limit + 1;
    acc *= p;
  }
  return acc;
}

// Advances a little-endian base-p digit vector; false after wrapping to zero.
inline bool next_tuple(std::vector<std::uint32_t>& digits, std::uint32_t p) {
  for (auto& d : digits) {
    if (++d < p) return true;
    d = 0;
  }
  return false;
}

inline std::vector<Scalar> to_scalars(const FieldSpec& f, const std::vector<std::uint32_t>& digits) {
  std::vector<Scalar> c;
  for (auto d : digits) c.push_back(Scalar::from_int(f, d));
  return c;
}

// Kernel and image of f^N, N = length(m): the Fitting decomposition of m.
inline std::pair<Subobject, Subobject> fitting_parts(const Representation& m, const RepMorphism& f) {
  RepMorphism fn = RepMorphism::identity(m);
  for (std::size_t t = 0; t < m.length(); ++t) fn = compose(f, fn);
  return {kernel(fn), image(fn)};
}

// An indecomposable piece of the original object with its inclusion.
struct Piece {
  Representation object;
  RepMorphism mono;
};

// An eigenvalue lambda of f, in the base field, such that f - lambda is
// neither invertible nor nilpotent; taken from the relative minimal
// polynomial of a random vector.
inline std::optional<Scalar> splitting_eigenvalue(const RepMorphism& f, Rng& rng) {
  const Representation& m = f.source;
  const FieldSpec& fld = m.field();
  Matrix t = block_diag(fld, f.comps);
  Matrix w = random_matrix(t.rows(), 1, fld, rng);
  if (w.is_zero()) return std::nullopt;
  poly::Poly s = poly::squarefree(poly::krylov_minpoly(t, w));
  if (s.size() < 3) return std::nullopt;
  auto r = poly::roots(s);
  if (r.empty()) return std::nullopt;
  return r.front();
}

// A random endomorphism killing a random vector at vertex i; singular by
// construction, so any field works.
inline std::optional<RepMorphism> annihilating_endo(const HomSpace& end, std::size_t i, Rng& rng) {
  const Representation& m = end.source;
  const FieldSpec& f = m.field();
  std::size_t n = m.dims()[i];
  if (n == 0) return std::nullopt;
  Matrix v = random_matrix(n, 1, f, rng);
  if (v.is_zero()) return std::nullopt;
  std::vector<Matrix> images;
  for (const auto& b : end.basis) images.push_back(b.comps[i] * v);
  Matrix k = kernel_basis(hstack(f, n, images));
  if (k.cols() == 0) return std::nullopt;
  std::vector<Scalar> c(end.dim(), Scalar::zero(f));
  for (std::size_t j = 0; j < k.cols(); ++j) {
    Scalar r = random_scalar(f, rng);
    for (std::size_t t = 0; t < end.dim(); ++t) c[t] += r * k(t, j);
  }
  return end.combination(c);
}

// Splits m (included in the original by `into`) by Fitting splits of End
// basis elements, random combinations (each also shifted by an eigenvalue)
// and endomorphisms killing a vector, until no tried endomorphism splits.
inline void split_pieces(const Representation& m, const RepMorphism& into, Rng& rng, std::size_t trials,
                         std::vector<Piece>& out) {
  if (m.is_zero()) return;
  HomSpace end = hom_basis(m, m);
  auto fitting = [&](const RepMorphism& f) {
    auto [a, b] = fitting_parts(m, f);
    if (a.object.is_zero() || b.object.is_zero()) return false;
    split_pieces(a.object, compose(into, a.mono), rng, trials, out);
    split_pieces(b.object, compose(into, b.mono), rng, trials, out);
    return true;
  };
  auto try_split = [&](const RepMorphism& f) {
    if (!f.is_iso() && fitting(f)) return true;
    auto lambda = splitting_eigenvalue(f, rng);
    return lambda && fitting(f + (-*lambda) * RepMorphism::identity(m));
  };
  if (end.dim() > 1) {
    for (const auto& f : end.basis)
      if (try_split(f)) return;
    for (std::size_t t = 0; t < trials; ++t) {
      std::vector<Scalar> c;
      for (std::size_t k = 0; k < end.dim(); ++k) c.push_back(random_scalar(m.field(), rng));
      if (try_split(end.combination(c))) return;
      if (auto g = annihilating_endo(end, t % m.dims().size(), rng); g && fitting(*g)) return;
    }
  }
  out.push_back({m, into});
}

// For indecomposable x, y the non-isomorphisms in Hom(x, y) form a proper
// subspace when x and y are isomorphic, so some basis element is invertible.
inline std::optional<RepMorphism> iso_between_pieces(const Representation& x, const Representation& y) {
  if (x.dims() != y.dims()) return std::nullopt;
  for (const auto& f : hom_basis(x, y).basis)
    if (f.is_iso()) return f;
  return std::nullopt;
}

// Matches the indecomposable pieces of m and n and assembles m -> n.
inline std::optional<RepMorphism> iso_by_pieces(const Representation& m, const Representation& n, Rng& rng,
                                                std::size_t trials) {
  std::vector<Piece> xs, ys;
  split_pieces(m, RepMorphism::identity(m), rng, trials, xs);
  split_pieces(n, RepMorphism::identity(n), rng, trials, ys);
  if (xs.size() != ys.size()) return std::nullopt;
  std::vector<bool> used(ys.size(), false);
  std::vector<std::pair<std::size_t, RepMorphism>> match;
  for (const auto& x : xs) {
    bool hit = false;
    for (std::size_t j = 0; j < ys.size() && !hit; ++j) {
      if (used[j]) continue;
      if (auto g = iso_between_pieces(x.object, ys[j].object)) {
        used[j] = hit = true;
        match.emplace_back(j, *g);
      }
    }
    if (!hit) return std::nullopt;
  }
  // a: sum of pieces -> m is invertible; the answer is sum_i kappa_j g_i pi_i a^{-1}.
  std::vector<Representation> objs;
  for (const auto& x : xs) objs.push_back(x.object);
  Representation sum = direct_sum(m.quiver_ptr(), m.field(), objs);
  RepMorphism a{sum, m, {}};
  for (std::size_t v = 0; v < m.vertex_count(); ++v) {
    std::vector<Matrix> cols;
    for (const auto& x : xs) cols.push_back(x.mono.comps[v]);
    a.comps.push_back(hstack(m.field(), m.dim(v), cols));
  }
  RepMorphism a_inv = invert(a);
  RepMorphism out = RepMorphism::zero(m, n);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto& [j, g] = match[i];
    out = out + compose(compose(ys[j].mono, g), compose(summand_projection(sum, objs, i), a_inv));
  }
  return out;
}

}  // namespace detail

/// Searches for an isomorphism m -> n: random combinations of a Hom basis,
/// then all combinations over a small F_p, then matching of indecomposable
/// Fitting pieces. nullopt means the invariants differ, the exhaustive search
/// failed, or some piece of m has no isomorphic partner among those of n.
inline std::optional<RepMorphism> is_isomorphic(const Representation& m, const Representation& n, Rng& rng,
                                                const IsoSearch& opt = {}) {
  check_compatible(m, n);
  if (m.dims() != n.dims()) return std::nullopt;
  if (m.is_zero()) return RepMorphism::identity(m);
  HomSpace h = hom_basis(m, n);
  if (h.dim() == 0) return std::nullopt;
  if (h.dim() != hom_dim(m, m) || h.dim() != hom_dim(n, n) || hom_dim(n, m) != h.dim()) return std::nullopt;
  const FieldSpec& f = m.field();
  for (std::size_t t = 0; t < opt.random_trials; ++t) {
    RepMorphism g = h.combination(detail::random_coefficients(f, h.dim(), rng));
    if (g.is_iso()) return g;
  }
  if (f.is_prime_field() && h.dim() <= opt.exhaustive_max_dim &&
      detail::bounded_pow(f.p, h.dim(), opt.exhaustive_max_count) <= opt.exhaustive_max_count) {
    std::vector<std::uint32_t> digits(h.dim(), 0);
    while (detail::next_tuple(digits, f.p)) {
      RepMorphism g = h.combination(detail::to_scalars(f, digits));
      if (g.is_iso()) return g;
    }
    return std::nullopt;
  }
  auto g = detail::iso_by_pieces(m, n, rng, opt.split_trials);
  if (g && !g->is_iso()) throw InconclusiveError("assembled isomorphism for " + to_string(m.dims()) + " is not invertible");
  return g;
}

/// Vertex-wise equality of the subspaces spanned by two morphisms' images.
inline bool same_image(const RepMorphism& a, const RepMorphism& b) {
  for (std::size_t v = 0; v < a.comps.size(); ++v) {
    std::size_t ra = rank(a.comps[v]), rb = rank(b.comps[v]);
    if (ra != rb) return false;
    if (rank(hstack(a.target.field(), a.target.dim(v), {a.comps[v], b.comps[v]})) != ra) return false;
  }
  return true;
}

/// mono: n -> e injective, epi: e -> m surjective, image(mono) = kernel(epi),
/// and both are genuine morphisms.
inline bool is_short_exact(const RepMorphism& mono, const RepMorphism& epi) {
  if (!mono.commutes() || !epi.commutes() || !mono.is_mono() || !epi.is_epi()) return false;
  return same_image(mono, kernel(epi).mono);
}

}  // namespace qrep
