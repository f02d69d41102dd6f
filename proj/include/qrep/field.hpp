#pragma once

#include <gmpxx.h>

#include <charconv>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "qrep/errors.hpp"

namespace qrep {

/// Seeded generator used everywhere randomness appears. Identical seeds give
/// identical results on a given standard library.
using Rng = std::mt19937_64;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// The coefficient field: arbitrary-precision rationals or F_p with p < 2^31.
struct FieldSpec {
  enum class Kind { Rationals, PrimeField };

  Kind kind = Kind::PrimeField;
  std::uint32_t p = 2;

  static FieldSpec rationals() { return {Kind::Rationals, 0}; }

  static FieldSpec prime(std::uint64_t p) {
    if (p >= (std::uint64_t{1} << 31) || !is_prime(p))
      throw std::invalid_argument("field characteristic must be a prime below 2^31, got " + std::to_string(p));
    return {Kind::PrimeField, static_cast<std::uint32_t>(p)};
  }

  /// Accepts "Q", "F<p>" and "F <p>".
  static FieldSpec parse(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text == "Q") return rationals();
    if (!text.empty() && text.front() == 'F') {
      text.remove_prefix(1);
      while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
      std::uint64_t p = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), p);
      if (ec == std::errc() && ptr == text.data() + text.size() && !text.empty()) return prime(p);
    }
    throw std::invalid_argument("unknown field '" + std::string(text) + "' (expected Q or F<p>)");
  }

  bool is_prime_field() const { return kind == Kind::PrimeField; }
  std::string name() const { return is_prime_field() ? "F" + std::to_string(p) : "Q"; }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// An element of a FieldSpec in canonical form: a residue in [0, p) or a
/// gcd-reduced fraction with positive denominator.
class Scalar {
 public:
  Scalar() = default;

  static Scalar zero(const FieldSpec& f) { return from_int(f, 0); }
  static Scalar one(const FieldSpec& f) { return from_int(f, 1); }

  static Scalar from_int(const FieldSpec& f, long long v) {
    if (f.is_prime_field()) {
      long long r = v % static_cast<long long>(f.p);
      if (r < 0) r += f.p;
      return Scalar(Residue{static_cast<std::uint32_t>(r), f.p});
    }
    return Scalar(mpq_class(static_cast<long>(v)));
  }

  static Scalar from_rational(mpq_class q) {
    q.canonicalize();
    return Scalar(std::move(q));
  }

  /// Exact-linalg text syntax: `n` or `n/d` over Q, a decimal residue over F_p.
  static Scalar parse(std::string_view text, const FieldSpec& f) {
    std::string s(text);
    if (s.empty()) throw ParseError(0, "empty scalar");
    if (f.is_prime_field()) {
      std::uint64_t v = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError(0, "bad residue '" + s + "'");
      if (v >= f.p) throw ParseError(0, "residue " + s + " out of range for " + f.name());
      return Scalar(Residue{static_cast<std::uint32_t>(v), f.p});
    }
    auto slash = s.find('/');
    auto valid_int = [](const std::string& t, bool allow_sign) {
      std::size_t i = (allow_sign && !t.empty() && t[0] == '-') ? 1 : 0;
      if (i >= t.size()) return false;
      for (; i < t.size(); ++i)
        if (t[i] < '0' || t[i] > '9') return false;
      return true;
    };
    if (slash == std::string::npos) {
      if (!valid_int(s, true)) throw ParseError(0, "bad rational '" + s + "'");
      return Scalar(mpq_class(mpz_class(s)));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false))
      throw ParseError(0, "bad rational '" + s + "'");
    mpz_class n(num), d(den);
    if (d == 0) throw ParseError(0, "zero denominator in '" + s + "'");
    mpq_class q(n, d);
    q.canonicalize();
    if (q.get_den() != d) throw ParseError(0, "rational '" + s + "' is not in lowest terms");
    return Scalar(std::move(q));
  }

  FieldSpec field() const {
    if (auto* r = std::get_if<Residue>(&v_)) return {FieldSpec::Kind::PrimeField, r->p};
    return FieldSpec::rationals();
  }

  bool is_zero() const {
    if (auto* r = std::get_if<Residue>(&v_)) return r->r == 0;
    return sgn(std::get<mpq_class>(v_)) == 0;
  }
  bool is_one() const {
    if (auto* r = std::get_if<Residue>(&v_)) return r->r == 1;
    return std::get<mpq_class>(v_) == 1;
  }

  std::uint32_t residue() const { return std::get<Residue>(v_).r; }
  const mpq_class& rational() const { return std::get<mpq_class>(v_); }

  Scalar inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    if (auto* r = std::get_if<Residue>(&v_)) return Scalar(Residue{pow_mod(r->r, r->p - 2, r->p), r->p});
    return Scalar(mpq_class(1) / std::get<mpq_class>(v_));
  }

  std::string str() const {
    if (auto* r = std::get_if<Residue>(&v_)) return std::to_string(r->r);
    return std::get<mpq_class>(v_).get_str();
  }

  Scalar operator-() const {
    if (auto* r = std::get_if<Residue>(&v_)) return Scalar(Residue{r->r ? r->p - r->r : 0, r->p});
    return Scalar(mpq_class(-std::get<mpq_class>(v_)));
  }

  Scalar& operator+=(const Scalar& o) {
    if (auto* r = std::get_if<Residue>(&v_)) {
      std::uint64_t s = std::uint64_t{r->r} + o.res(r->p);
      r->r = static_cast<std::uint32_t>(s >= r->p ? s - r->p : s);
    } else {
      std::get<mpq_class>(v_) += o.rat();
    }
    return *this;
  }
  Scalar& operator-=(const Scalar& o) { return *this += -o; }
  Scalar& operator*=(const Scalar& o) {
    if (auto* r = std::get_if<Residue>(&v_)) {
      r->r = static_cast<std::uint32_t>(std::uint64_t{r->r} * o.res(r->p) % r->p);
    } else {
      std::get<mpq_class>(v_) *= o.rat();
    }
    return *this;
  }
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.v_.index() != b.v_.index()) return false;
    if (auto* r = std::get_if<Residue>(&a.v_)) {
      const auto& s = std::get<Residue>(b.v_);
      return r->r == s.r && r->p == s.p;
    }
    return std::get<mpq_class>(a.v_) == std::get<mpq_class>(b.v_);
  }

 private:
  struct Residue {
    std::uint32_t r = 0;
    std::uint32_t p = 0;
  };

  explicit Scalar(Residue r) : v_(r) {}
  explicit Scalar(mpq_class q) : v_(std::move(q)) {}

  std::uint32_t res(std::uint32_t p) const {
    auto* r = std::get_if<Residue>(&v_);
    if (!r || r->p != p) throw MismatchError("scalar field mismatch");
    return r->r;
  }
  const mpq_class& rat() const {
    auto* q = std::get_if<mpq_class>(&v_);
    if (!q) throw MismatchError("scalar field mismatch");
    return *q;
  }

  static std::uint32_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t acc = 1 % m;
    b %= m;
    while (e) {
      if (e & 1) acc = acc * b % m;
      b = b * b % m;
      e >>= 1;
    }
    return static_cast<std::uint32_t>(acc);
  }

  std::variant<Residue, mpq_class> v_;
};

/// Uniform residue over F_p; uniform integer in [-9, 9] over Q.
inline Scalar random_scalar(const FieldSpec& f, Rng& rng) {
  if (f.is_prime_field()) {
    std::uniform_int_distribution<std::uint32_t> dist(0, f.p - 1);
    return Scalar::from_int(f, dist(rng));
  }
  std::uniform_int_distribution<int> dist(-9, 9);
  return Scalar::from_int(f, dist(rng));
}

}  // namespace qrep
