#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qrep/rep.hpp"

namespace qrep::fx {

inline QuiverPtr quiver_from(const std::string& text, const std::string& name) {
  return std::make_shared<const Quiver>(parse_quiver(text, name));
}

inline QuiverPtr a2() { return quivers::linear_a(2); }
inline QuiverPtr a3() { return quivers::linear_a(3); }

// Four vertices, a double arrow 1 -> 2 and a fork below it.
inline QuiverPtr four_vertex() {
  return quiver_from("vertices 4\narrow a 1 2\narrow b 1 2\narrow c 2 3\narrow d 2 4\narrow e 1 4\n", "four");
}

inline Representation rep(const QuiverPtr& q, const FieldSpec& f, DimVector d,
                          const std::vector<std::vector<std::vector<long long>>>& mats) {
  std::vector<Matrix> m;
  const auto& arrows = q->arrows();
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    std::size_t r = d[arrows[k].target - 1], c = d[arrows[k].source - 1];
    if (k < mats.size() && !mats[k].empty())
      m.push_back(Matrix::from_rows(f, mats[k]));
    else
      m.push_back(Matrix(f, r, c));
  }
  return Representation(q, f, std::move(d), std::move(m));
}

inline Representation p1_a2(const FieldSpec& f) { return rep(a2(), f, {1, 1}, {{{1}}}); }

// Counts vertex-map tuples (f_v) with f_j M(a) = N(a) f_i by brute force over F_p.
inline std::uint64_t brute_hom_count(const Representation& m, const Representation& n) {
  const FieldSpec& f = m.field();
  std::vector<std::pair<std::size_t, std::size_t>> shapes;
  std::size_t vars = 0;
  for (std::size_t v = 0; v < m.vertex_count(); ++v) {
    shapes.emplace_back(n.dim(v), m.dim(v));
    vars += n.dim(v) * m.dim(v);
  }
  std::vector<std::uint32_t> digits(vars, 0);
  std::uint64_t count = 0;
  for (;;) {
    std::vector<Matrix> comps;
    std::size_t at = 0;
    for (auto [r, c] : shapes) {
      Matrix x(f, r, c);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) x(i, j) = Scalar::from_int(f, digits[at++]);
      comps.push_back(std::move(x));
    }
    bool ok = true;
    const auto& arrows = m.quiver().arrows();
    for (std::size_t k = 0; k < arrows.size() && ok; ++k) {
      std::size_t i = arrows[k].source - 1, j = arrows[k].target - 1;
      ok = comps[j] * m.mat(k) == n.mat(k) * comps[i];
    }
    if (ok) ++count;
    std::size_t pos = 0;
    while (pos < vars && ++digits[pos] == f.p) digits[pos++] = 0;
    if (pos == vars) break;
  }
  return count;
}

inline std::size_t log_p(std::uint64_t count, std::uint32_t p) {
  std::size_t e = 0;
  while (count > 1) {
    count /= p;
    ++e;
  }
  return e;
}

inline long long euler_by_sums(const Quiver& q, const DimVector& d, const DimVector& e) {
  long long s = 0;
  for (std::size_t i = 0; i < d.size(); ++i) s += static_cast<long long>(d[i] * e[i]);
  for (const auto& a : q.arrows()) s -= static_cast<long long>(d[a.source - 1] * e[a.target - 1]);
  return s;
}

inline DimVector random_dims(std::size_t n, std::size_t max, Rng& rng) {
  std::uniform_int_distribution<std::size_t> dist(0, max);
  DimVector d;
  for (std::size_t k = 0; k < n; ++k) d.push_back(dist(rng));
  return d;
}

}  // namespace qrep::fx
