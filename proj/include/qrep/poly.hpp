#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "qrep/matrix.hpp"

namespace qrep::poly {

/// Coefficients from the constant term up; no trailing zeros.
using Poly = std::vector<Scalar>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

inline Poly derivative(const Poly& a) {
  if (a.empty()) return {};
  FieldSpec f = a.front().field();
  Poly d;
  for (std::size_t k = 1; k < a.size(); ++k) d.push_back(Scalar::from_int(f, static_cast<long long>(k)) * a[k]);
  trim(d);
  return d;
}

/// Quotient and remainder of a by nonzero b.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  Poly q(a.size() - b.size() + 1, Scalar::zero(b.back().field()));
  Scalar lead = b.back().inverse();
  while (a.size() >= b.size() && !a.empty()) {
    std::size_t shift = a.size() - b.size();
    Scalar c = a.back() * lead;
    q[shift] = c;
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= c * b[k];
    trim(a);
  }
  trim(q);
  return {q, a};
}

inline Poly monic(Poly a) {
  trim(a);
  if (a.empty()) return a;
  Scalar inv = a.back().inverse();
  for (auto& c : a) c *= inv;
  return a;
}

inline Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

inline Scalar eval(const Poly& a, const Scalar& x) {
  Scalar acc = Scalar::zero(x.field());
  for (std::size_t k = a.size(); k-- > 0;) acc = acc * x + a[k];
  return acc;
}

/// Product of the distinct irreducible factors (characteristic 0, or degree
/// below the characteristic).
inline Poly squarefree(const Poly& a) {
  Poly d = derivative(a);
  if (d.empty()) return monic(a);
  return monic(divmod(a, gcd(a, d)).first);
}

/// Minimal polynomial of t relative to the vector w: the monic generator of
/// {p : p(t) w = 0}, found from the first linear dependency among t^k w.
inline Poly krylov_minpoly(const Matrix& t, const Matrix& w) {
  const FieldSpec& f = t.field();
  std::size_t n = t.rows();
  std::vector<Matrix> seq{w};
  for (;;) {
    Matrix basis = hstack(f, n, seq);
    Matrix next = t * seq.back();
    if (auto c = solve(basis, next)) {
      Poly p;
      for (std::size_t k = 0; k < seq.size(); ++k) p.push_back(-(*c)(k, 0));
      p.push_back(Scalar::one(f));
      return p;
    }
    seq.push_back(std::move(next));
  }
}

namespace detail {

// Best rational approximation with denominator at most max_den.
inline mpq_class reconstruct(long double x, long long max_den) {
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  long double r = x;
  for (int it = 0; it < 64; ++it) {
    long double fl = std::floor(r);
    if (std::fabs(fl) > 9e17L) break;
    long long a = static_cast<long long>(fl);
    long long h2 = a * h1 + h0, k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    long double frac = r - fl;
    if (frac < 1e-18L) break;
    r = 1 / frac;
  }
  mpq_class q(mpz_class(static_cast<long>(h1)), mpz_class(static_cast<long>(k1)));
  q.canonicalize();
  return q;
}

// Durand-Kerner iteration on a monic polynomial given in long double.
inline std::vector<std::complex<long double>> numeric_roots(const std::vector<long double>& c) {
  std::size_t d = c.size() - 1;
  std::vector<std::complex<long double>> z(d);
  std::complex<long double> seed(0.4L, 0.9L);
  for (std::size_t k = 0; k < d; ++k) z[k] = std::pow(seed, static_cast<int>(k));
  auto value = [&](std::complex<long double> x) {
    std::complex<long double> acc = 0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
    return acc;
  };
  for (int it = 0; it < 500; ++it) {
    long double moved = 0;
    for (std::size_t k = 0; k < d; ++k) {
      std::complex<long double> den = 1;
      for (std::size_t j = 0; j < d; ++j)
        if (j != k) den *= z[k] - z[j];
      if (std::abs(den) == 0) den = 1e-30L;
      std::complex<long double> step = value(z[k]) / den;
      z[k] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-24L) break;
  }
  return z;
}

}  // namespace detail

/// Roots of a in its field. Over F_p all residues are tried when p is at
/// most `scan_limit` (otherwise none are reported); over Q real root
/// approximations are rounded to nearby fractions and checked exactly, so
/// the list may miss roots but never contains a non-root.
inline std::vector<Scalar> roots(const Poly& a, std::uint64_t scan_limit = 1 << 16) {
  std::vector<Scalar> out;
  if (a.size() < 2) return out;
  FieldSpec f = a.front().field();
  if (f.is_prime_field()) {
    if (f.p > scan_limit) return out;
    for (std::uint32_t x = 0; x < f.p && out.size() + 1 < a.size(); ++x) {
      Scalar s = Scalar::from_int(f, x);
      if (eval(a, s).is_zero()) out.push_back(s);
    }
    return out;
  }
  Poly m = monic(a);
  if (m.size() == 2) return {-m[0]};
  std::vector<long double> c;
  for (const auto& s : m) c.push_back(static_cast<long double>(s.rational().get_d()));
  for (auto z : detail::numeric_roots(c)) {
    if (std::fabs(z.imag()) > 1e-6L * (1 + std::fabs(z.real()))) continue;
    Scalar s = Scalar::from_rational(detail::reconstruct(z.real(), 1'000'000'000LL));
    bool seen = false;
    for (const auto& r : out) seen = seen || r == s;
    if (!seen && eval(m, s).is_zero()) out.push_back(s);
  }
  return out;
}

}  // namespace qrep::poly
