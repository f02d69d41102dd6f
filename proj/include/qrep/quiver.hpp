#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <memory>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qrep/errors.hpp"

namespace qrep {

struct Arrow {
  std::string id;
  std::size_t source = 0;  // 1-based
  std::size_t target = 0;

  friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// Dimension vector: per-vertex dimensions, indexed 0..n-1 for vertices 1..n.
using DimVector = std::vector<std::size_t>;

inline std::size_t total(const DimVector& d) {
  std::size_t s = 0;
  for (auto x : d) s += x;
  return s;
}

inline std::string to_string(const DimVector& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

/// Finite acyclic quiver with vertices 1..n. Multi-arrows are allowed, loops
/// and longer directed cycles are rejected at construction.
class Quiver {
 public:
  static constexpr std::size_t kMaxVertices = 64;

  Quiver(std::string name, std::size_t n, std::vector<Arrow> arrows)
      : name_(std::move(name)), n_(n), arrows_(std::move(arrows)) {
    if (n_ > kMaxVertices) throw MismatchError("quiver has more than 64 vertices");
    std::set<std::string> ids;
    for (const auto& a : arrows_) {
      if (a.source < 1 || a.source > n_ || a.target < 1 || a.target > n_)
        throw MismatchError("arrow " + a.id + " has an endpoint outside 1.." + std::to_string(n_));
      if (!ids.insert(a.id).second) throw MismatchError("duplicate arrow id " + a.id);
    }
    if (auto cyc = find_cycle(); !cyc.empty()) {
      std::string msg = "quiver has a directed cycle:";
      for (auto v : cyc) msg += " " + std::to_string(v);
      throw CycleError(msg);
    }
  }

  const std::string& name() const { return name_; }
  std::size_t vertex_count() const { return n_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }

  std::size_t arrow_index(std::string_view id) const {
    for (std::size_t k = 0; k < arrows_.size(); ++k)
      if (arrows_[k].id == id) return k;
    throw MismatchError("unknown arrow '" + std::string(id) + "'");
  }

  /// Kahn's algorithm, taking the lowest ready label first.
  std::vector<std::size_t> topological_order() const {
    std::vector<std::size_t> indeg(n_ + 1, 0);
    for (const auto& a : arrows_) ++indeg[a.target];
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t v = 1; v <= n_; ++v)
      if (indeg[v] == 0) ready.push(v);
    std::vector<std::size_t> order;
    while (!ready.empty()) {
      auto v = ready.top();
      ready.pop();
      order.push_back(v);
      for (const auto& a : arrows_)
        if (a.source == v && --indeg[a.target] == 0) ready.push(a.target);
    }
    return order;
  }

  friend bool operator==(const Quiver& a, const Quiver& b) { return a.n_ == b.n_ && a.arrows_ == b.arrows_; }

 private:
  // Vertices of some directed cycle (closing vertex repeated), or empty.
  std::vector<std::size_t> find_cycle() const {
    std::vector<int> state(n_ + 1, 0);
    std::vector<std::size_t> stack;
    std::vector<std::size_t> found;
    std::function<bool(std::size_t)> dfs = [&](std::size_t v) {
      state[v] = 1;
      stack.push_back(v);
      for (const auto& a : arrows_) {
        if (a.source != v) continue;
        if (state[a.target] == 1) {
          auto it = std::find(stack.begin(), stack.end(), a.target);
          found.assign(it, stack.end());
          found.push_back(a.target);
          return true;
        }
        if (state[a.target] == 0 && dfs(a.target)) return true;
      }
      stack.pop_back();
      state[v] = 2;
      return false;
    };
    for (std::size_t v = 1; v <= n_; ++v)
      if (state[v] == 0 && dfs(v)) return found;
    return {};
  }

  std::string name_;
  std::size_t n_;
  std::vector<Arrow> arrows_;
};

using QuiverPtr = std::shared_ptr<const Quiver>;

/// <d, e> = sum_i d_i e_i - sum_{a: i->j} d_i e_j.
inline long long euler_form(const Quiver& q, const DimVector& d, const DimVector& e) {
  if (d.size() != q.vertex_count() || e.size() != q.vertex_count())
    throw MismatchError("dimension vector length does not match quiver " + q.name());
  long long s = 0;
  for (std::size_t i = 0; i < d.size(); ++i) s += static_cast<long long>(d[i] * e[i]);
  for (const auto& a : q.arrows()) s -= static_cast<long long>(d[a.source - 1] * e[a.target - 1]);
  return s;
}

/// Parses the `.qv` format: `vertices <n>` followed by `arrow <id> <s> <t>`
/// lines; `#` starts a comment.
inline Quiver parse_quiver(std::string_view text, std::string name = "quiver") {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> n;
  std::vector<Arrow> arrows;
  auto parse_nat = [&](const std::string& tok) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError(lineno, "expected a non-negative integer, got '" + tok + "'");
    return static_cast<std::size_t>(std::stoull(tok));
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0] == "vertices") {
      if (tok.size() != 2) throw ParseError(lineno, "usage: vertices <n>");
      if (n) throw ParseError(lineno, "duplicate vertices line");
      n = parse_nat(tok[1]);
    } else if (tok[0] == "arrow") {
      if (!n) throw ParseError(lineno, "arrow before vertices line");
      if (tok.size() != 4) throw ParseError(lineno, "usage: arrow <id> <source> <target>");
      Arrow a{tok[1], parse_nat(tok[2]), parse_nat(tok[3])};
      if (a.source < 1 || a.source > *n || a.target < 1 || a.target > *n)
        throw ParseError(lineno, "arrow " + a.id + " endpoint outside 1.." + std::to_string(*n));
      for (const auto& b : arrows)
        if (b.id == a.id) throw ParseError(lineno, "duplicate arrow id " + a.id);
      arrows.push_back(std::move(a));
    } else {
      throw ParseError(lineno, "unknown directive '" + tok[0] + "'");
    }
  }
  if (!n) throw ParseError(0, "missing vertices line");
  try {
    return Quiver(std::move(name), *n, std::move(arrows));
  } catch (const MismatchError& e) {
    throw ParseError(0, e.what());
  }
}

inline std::string emit_quiver(const Quiver& q) {
  std::string s = "vertices " + std::to_string(q.vertex_count()) + "\n";
  for (const auto& a : q.arrows())
    s += "arrow " + a.id + " " + std::to_string(a.source) + " " + std::to_string(a.target) + "\n";
  return s;
}

namespace quivers {

/// Linearly oriented A_n: 1 -> 2 -> ... -> n, arrows a1..a(n-1).
inline QuiverPtr linear_a(std::size_t n) {
  std::vector<Arrow> arrows;
  for (std::size_t i = 1; i < n; ++i) arrows.push_back({"a" + std::to_string(i), i, i + 1});
  return std::make_shared<const Quiver>("A" + std::to_string(n), n, std::move(arrows));
}

inline QuiverPtr kronecker() {
  return std::make_shared<const Quiver>("Kronecker", 2, std::vector<Arrow>{{"a", 1, 2}, {"b", 1, 2}});
}

}  // namespace quivers

}  // namespace qrep
