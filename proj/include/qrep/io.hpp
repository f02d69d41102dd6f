#pragma once

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qrep/errors.hpp"
#include "qrep/rep.hpp"

namespace qrep {

namespace detail {

inline std::vector<std::string> tokens(const std::string& line) {
  std::istringstream ls(line);
  std::vector<std::string> tok;
  for (std::string t; ls >> t;) tok.push_back(t);
  return tok;
}

// "[[1 2],[3 4]]" or "[[1,2],[3,4]]" -> rows of scalar tokens.
inline std::vector<std::vector<std::string>> bracket_rows(std::string text, std::size_t lineno) {
  std::string t;
  for (char c : text)
    if (c != ' ') t += c;
  if (t.size() < 4 || t.substr(0, 2) != "[[" || t.substr(t.size() - 2) != "]]")
    throw ParseError(lineno, "bad inline matrix '" + text + "'");
  t = t.substr(1, t.size() - 2);
  std::vector<std::vector<std::string>> rows;
  std::size_t pos = 0;
  while (pos < t.size()) {
    if (t[pos] == ',') {
      ++pos;
      continue;
    }
    if (t[pos] != '[') throw ParseError(lineno, "bad inline matrix '" + text + "'");
    auto end = t.find(']', pos);
    if (end == std::string::npos) throw ParseError(lineno, "bad inline matrix '" + text + "'");
    std::vector<std::string> row;
    std::string cell;
    for (std::size_t k = pos + 1; k <= end; ++k) {
      if (t[k] == ',' || t[k] == ']') {
        if (!cell.empty()) row.push_back(cell);
        cell.clear();
      } else {
        cell += t[k];
      }
    }
    rows.push_back(std::move(row));
    pos = end + 1;
  }
  return rows;
}

}  // namespace detail

/// The `field` line of a `.rep` text, if present.
inline std::optional<FieldSpec> rep_file_field(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto tok = detail::tokens(line);
    if (tok.empty() || tok[0] != "field") continue;
    std::string spec;
    for (std::size_t k = 1; k < tok.size(); ++k) spec += tok[k];
    try {
      return FieldSpec::parse(spec);
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
  }
  return std::nullopt;
}

/// Parses the `.rep` format:
///
///     field F 5            # or: field Q
///     dim 1 1
///     mat a                # one `row` line per target dimension
///     row 3
///
/// Arrows without a `mat` block are zero. `mat a [[1]]` is accepted as an
/// inline form. The file's field must equal `f`.
inline Representation parse_rep_file(std::string_view text, const QuiverPtr& q, const FieldSpec& f) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::optional<FieldSpec> field;
  std::optional<DimVector> dims;
  std::vector<std::optional<Matrix>> mats(q->arrows().size());
  // Matrix currently being filled by `row` lines.
  std::optional<std::size_t> open;
  std::size_t open_row = 0, open_line = 0;

  auto close_open = [&]() {
    if (!open) return;
    const Arrow& a = q->arrows()[*open];
    if (open_row != mats[*open]->rows())
      throw ParseError(open_line, "arrow " + a.id + " expects " + std::to_string(mats[*open]->rows()) + " rows, got " +
                                      std::to_string(open_row));
    open.reset();
  };
  auto scalar = [&](const std::string& s) {
    try {
      return Scalar::parse(s, f);
    } catch (const ParseError& e) {
      throw ParseError(lineno, e.what());
    }
  };
  auto fill_row = [&](const std::vector<std::string>& cells) {
    const Arrow& a = q->arrows()[*open];
    Matrix& m = *mats[*open];
    if (open_row >= m.rows()) throw ParseError(lineno, "too many rows for arrow " + a.id);
    if (cells.size() != m.cols())
      throw ParseError(lineno, "arrow " + a.id + " expects rows of length " + std::to_string(m.cols()) + ", got " +
                                   std::to_string(cells.size()));
    for (std::size_t c = 0; c < cells.size(); ++c) m(open_row, c) = scalar(cells[c]);
    ++open_row;
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto tok = detail::tokens(line);
    if (tok.empty()) continue;
    const std::string& kw = tok[0];
    if (kw == "field") {
      if (field) throw ParseError(lineno, "duplicate field line");
      std::string spec;
      for (std::size_t k = 1; k < tok.size(); ++k) spec += tok[k];
      try {
        field = FieldSpec::parse(spec);
      } catch (const std::invalid_argument& e) {
        throw ParseError(lineno, e.what());
      }
      if (*field != f) throw ParseError(lineno, "file field " + field->name() + " differs from run field " + f.name());
    } else if (kw == "dim") {
      if (dims) throw ParseError(lineno, "duplicate dim line");
      if (tok.size() != q->vertex_count() + 1)
        throw ParseError(lineno, "dim needs " + std::to_string(q->vertex_count()) + " entries");
      DimVector d;
      for (std::size_t k = 1; k < tok.size(); ++k) {
        if (tok[k].find_first_not_of("0123456789") != std::string::npos)
          throw ParseError(lineno, "bad dimension '" + tok[k] + "'");
        d.push_back(std::stoul(tok[k]));
      }
      dims = d;
    } else if (kw == "mat") {
      close_open();
      if (!dims) throw ParseError(lineno, "mat before dim line");
      if (tok.size() < 2) throw ParseError(lineno, "usage: mat <arrow id>");
      std::size_t k;
      try {
        k = q->arrow_index(tok[1]);
      } catch (const MismatchError& e) {
        throw ParseError(lineno, e.what());
      }
      const Arrow& a = q->arrows()[k];
      if (mats[k]) throw ParseError(lineno, "duplicate mat for arrow " + a.id);
      std::size_t rows = (*dims)[a.target - 1], cols = (*dims)[a.source - 1];
      if (rows == 0 || cols == 0)
        throw ParseError(lineno, "arrow " + a.id + " has zero shape " + std::to_string(rows) + "x" +
                                     std::to_string(cols) + " and takes no mat block");
      mats[k] = Matrix(f, rows, cols);
      open = k;
      open_row = 0;
      open_line = lineno;
      if (tok.size() > 2) {
        std::string rest;
        for (std::size_t t = 2; t < tok.size(); ++t) rest += tok[t] + " ";
        for (const auto& row : detail::bracket_rows(rest, lineno)) fill_row(row);
        close_open();
      }
    } else if (kw == "row") {
      if (!open) throw ParseError(lineno, "row outside a mat block");
      fill_row({tok.begin() + 1, tok.end()});
    } else {
      throw ParseError(lineno, "unknown directive '" + kw + "'");
    }
  }
  close_open();
  if (!field) throw ParseError(0, "missing field line");
  if (!dims) throw ParseError(0, "missing dim line");
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < mats.size(); ++k) {
    const Arrow& a = q->arrows()[k];
    out.push_back(mats[k] ? *mats[k] : Matrix(f, (*dims)[a.target - 1], (*dims)[a.source - 1]));
  }
  return Representation(q, f, *dims, std::move(out));
}

/// Canonical `.rep` text; zero matrices are omitted.
inline std::string emit_rep(const Representation& m) {
  std::string s = "field " + (m.field().is_prime_field() ? "F " + std::to_string(m.field().p) : std::string("Q")) + "\n";
  s += "dim";
  for (auto d : m.dims()) s += " " + std::to_string(d);
  s += "\n";
  const auto& arrows = m.quiver().arrows();
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    const Matrix& a = m.mat(k);
    if (a.empty() || a.is_zero()) continue;
    s += "mat " + arrows[k].id + "\n";
    for (std::size_t r = 0; r < a.rows(); ++r) {
      s += "row";
      for (std::size_t c = 0; c < a.cols(); ++c) s += " " + a(r, c).str();
      s += "\n";
    }
  }
  return s;
}

}  // namespace qrep
