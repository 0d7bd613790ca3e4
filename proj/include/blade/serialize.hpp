/*
Copyright 2026 The BLADE Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

// Line-oriented text form of code tables and context sets:
//
//   blade-table v1
//   n=4 kind=bernoulli t=0 s=0
//   S=8
//   nk: 1 3 1 3 1
//   sg: k=0 j=0 len=1 base=1
//   ...
//
// A context set is `blade-set v1 n=<n> count=<c>` followed by its tables.
// Bases are lowercase hex without prefix. Subgroups appear in decoder order.

#include <charconv>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "codebook.hpp"

namespace blade {

inline std::string serialize(const CodeTable& table) {
  std::ostringstream out;
  out << "blade-table v1\n";
  out << "n=" << table.n << " kind=" << to_string(table.tag.kind) << " t=" << table.tag.t
      << " s=" << table.tag.s << "\n";
  out << "S=" << table.subgroups.size() << "\n";
  out << "nk:";
  for (auto v : table.nk) out << ' ' << v;
  out << "\n";
  for (const auto& g : table.subgroups)
    out << "sg: k=" << g.k << " j=" << g.j << " len=" << g.len << " base=" << std::hex << g.base
        << std::dec << "\n";
  return out.str();
}

inline std::string serialize(const ContextSet& set) {
  std::string out = "blade-set v1 n=" + std::to_string(set.n) +
                    " count=" + std::to_string(set.tables.size()) + "\n";
  for (const auto& t : set.tables) out += serialize(t);
  return out;
}

namespace detail {

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool done() const { return pos_ >= text_.size(); }
  std::size_t line() const { return line_; }

  std::string_view next() {
    if (done()) throw ParseError(line_ + 1, "unexpected end of artifact");
    std::size_t end = text_.find('\n', pos_);
    if (end == std::string_view::npos) end = text_.size();
    std::string_view l = text_.substr(pos_, end - pos_);
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
    pos_ = end + 1;
    ++line_;
    return l;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

inline std::vector<std::string_view> split_ws(std::string_view l) {
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < l.size()) {
    while (i < l.size() && l[i] == ' ') ++i;
    std::size_t j = i;
    while (j < l.size() && l[j] != ' ') ++j;
    if (j > i) parts.push_back(l.substr(i, j - i));
    i = j;
  }
  return parts;
}

template <typename T>
T parse_number(std::string_view s, std::size_t line, int base = 10) {
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw ParseError(line, "bad number '" + std::string(s) + "'");
  return v;
}

// Value of `key=value` in a token, checking the key.
inline std::string_view field(std::string_view token, std::string_view key, std::size_t line) {
  if (token.size() <= key.size() || token.substr(0, key.size()) != key || token[key.size()] != '=')
    throw ParseError(line, "expected '" + std::string(key) + "=' but got '" + std::string(token) + "'");
  return token.substr(key.size() + 1);
}

inline CodeTable parse_table(LineReader& in) {
  if (in.next() != "blade-table v1") throw ParseError(in.line(), "expected 'blade-table v1'");

  auto head = split_ws(in.next());
  std::size_t ln = in.line();
  if (head.size() != 4) throw ParseError(ln, "expected 'n=.. kind=.. t=.. s=..'");
  CodeTable table;
  table.n = parse_number<int>(field(head[0], "n", ln), ln);
  auto kind = field(head[1], "kind", ln);
  if (kind == "universal") {
    table.tag.kind = TableKind::universal;
  } else if (kind == "cond") {
    table.tag.kind = TableKind::conditional;
  } else if (kind == "bernoulli") {
    table.tag.kind = TableKind::bernoulli;
  } else {
    throw ParseError(ln, "unknown table kind '" + std::string(kind) + "'");
  }
  table.tag.t = parse_number<int>(field(head[2], "t", ln), ln);
  table.tag.s = parse_number<int>(field(head[3], "s", ln), ln);
  if (table.n < 1 || table.n > kMaxTableBits) throw ParseError(ln, "block length out of range");

  auto sline = in.next();
  ln = in.line();
  auto count = parse_number<std::size_t>(field(sline, "S", ln), ln);
  if (count > static_cast<std::size_t>(2 * table.n + 2)) throw ParseError(ln, "too many subgroups");

  auto nk = split_ws(in.next());
  ln = in.line();
  if (nk.empty() || nk[0] != "nk:") throw ParseError(ln, "expected 'nk:'");
  if (nk.size() != static_cast<std::size_t>(table.n + 2)) throw ParseError(ln, "nk needs n+1 values");
  for (std::size_t i = 1; i < nk.size(); ++i) table.nk.push_back(parse_number<std::uint64_t>(nk[i], ln));

  for (std::size_t i = 0; i < count; ++i) {
    auto parts = split_ws(in.next());
    ln = in.line();
    if (parts.size() != 5 || parts[0] != "sg:") throw ParseError(ln, "expected 'sg: k= j= len= base='");
    Subgroup g;
    g.k = parse_number<int>(field(parts[1], "k", ln), ln);
    g.j = parse_number<int>(field(parts[2], "j", ln), ln);
    g.len = parse_number<int>(field(parts[3], "len", ln), ln);
    auto hex = field(parts[4], "base", ln);
    for (char c : hex)
      if (c >= 'A' && c <= 'F') throw ParseError(ln, "base must be lowercase hex");
    g.base = parse_number<std::uint64_t>(hex, ln, 16);
    if (g.k < 0 || g.k > table.n || (g.j != 0 && g.j != 1))
      throw ParseError(ln, "subgroup (k, j) out of range");
    g.count = g.j == 0 ? table.nk[g.k] : binomial(table.n, g.k) - std::min(table.nk[g.k], binomial(table.n, g.k));
    table.subgroups.push_back(g);
  }
  try {
    detail::rebuild_subgroup_map(table);
  } catch (const ValidationError& e) {
    throw ParseError(in.line(), e.what());
  }
  return table;
}

}  // namespace detail

// Parses and validates one table.
inline CodeTable deserialize_table(std::string_view text) {
  detail::LineReader in(text);
  CodeTable table = detail::parse_table(in);
  while (!in.done())
    if (!in.next().empty()) throw ParseError(in.line(), "trailing content after table");
  validate(table);
  return table;
}

// Parses a context set; every table is validated and checked against the
// expected slot layout.
inline ContextSet deserialize_set(std::string_view text) {
  detail::LineReader in(text);
  auto head = detail::split_ws(in.next());
  std::size_t ln = in.line();
  if (head.size() != 4 || head[0] != "blade-set" || head[1] != "v1")
    throw ParseError(ln, "expected 'blade-set v1 n=.. count=..'");
  int n = detail::parse_number<int>(detail::field(head[2], "n", ln), ln);
  auto count = detail::parse_number<std::size_t>(detail::field(head[3], "count", ln), ln);
  if (count > 64) throw ParseError(ln, "implausible table count");
  std::vector<CodeTable> tables;
  for (std::size_t i = 0; i < count; ++i) tables.push_back(detail::parse_table(in));
  while (!in.done())
    if (!in.next().empty()) throw ParseError(in.line(), "trailing content after context set");
  return assemble_context_set(n, std::move(tables));
}

}  // namespace blade
