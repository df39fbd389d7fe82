#include "quasilab/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>
#include <unordered_map>

#include "quasilab/error.hpp"

namespace quasilab {

Signature::Signature(std::vector<OpSymbol> ops) : ops_(std::move(ops)) {
  std::set<std::string> seen;
  for (const auto& op : ops_) {
    if (op.arity < 0) throw Error("negative arity for op '" + op.name + "'");
    if (!seen.insert(op.name).second) throw Error("duplicate op name '" + op.name + "'");
  }
}

int Signature::find(std::string_view name) const {
  for (std::size_t i = 0; i < ops_.size(); ++i)
    if (ops_[i].name == name) return static_cast<int>(i);
  return -1;
}

int Signature::max_arity() const {
  int m = 0;
  for (const auto& op : ops_) m = std::max(m, op.arity);
  return m;
}

std::uint64_t checked_pow(std::uint64_t base, int exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

int Algebra::element(std::string_view label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  return -1;
}

void Algebra::validate() const {
  if (labels.empty()) throw Error("algebra '" + name + "' has no elements");
  std::set<std::string> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second) throw Error("duplicate element label '" + l + "'");
  if (tables.size() != sig.size()) throw Error("algebra '" + name + "': every op needs exactly one table");
  const auto n = labels.size();
  for (std::size_t k = 0; k < sig.size(); ++k) {
    const auto expect = checked_pow(n, sig[k].arity, UINT64_MAX / 2);
    if (tables[k].size() != expect) throw Error("table size mismatch for op '" + sig[k].name + "'");
    for (Elem e : tables[k])
      if (e >= n) throw Error("out-of-range entry in table of op '" + sig[k].name + "'");
  }
}

Algebra make_algebra(std::string name, Signature sig, std::vector<std::string> labels,
                     std::vector<std::vector<Elem>> tables) {
  Algebra a{std::move(name), std::move(sig), std::move(labels), std::move(tables)};
  a.validate();
  return a;
}

Algebra trivial_algebra(const Signature& sig, std::string name) {
  Algebra a;
  a.name = std::move(name);
  a.sig = sig;
  a.labels = {"0"};
  a.tables.assign(sig.size(), std::vector<Elem>{0});
  return a;
}

namespace {

struct Token {
  std::string text;
  int line;
  int col;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  std::size_t i = 0;
  int col = 1;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
      continue;
    }
    Token t{"", line, col};
    while (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '\r' && text[i] != '\n' &&
           text[i] != '#') {
      t.text.push_back(text[i]);
      ++i;
      ++col;
    }
    out.push_back(std::move(t));
  }
  return out;
}

bool is_keyword(const std::string& s) { return s == "algebra" || s == "elements" || s == "op" || s == "end"; }

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto ok_first = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  if (!ok_first(s[0])) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  });
}

}  // namespace

Algebra parse_algebra(std::string_view text) {
  const auto toks = tokenize(text);
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg, const Token* t) -> ParseError {
    if (t) return ParseError(msg, t->line, t->col);
    int line = toks.empty() ? 1 : toks.back().line;
    return ParseError(msg, line, 0);
  };
  auto at_end = [&] { return pos >= toks.size(); };

  if (at_end() || toks[pos].text != "algebra") throw fail("expected 'algebra <name>'", at_end() ? nullptr : &toks[pos]);
  ++pos;
  if (at_end() || is_keyword(toks[pos].text)) throw fail("expected algebra name", at_end() ? nullptr : &toks[pos]);
  Algebra a;
  a.name = toks[pos++].text;

  if (at_end() || toks[pos].text != "elements") throw fail("expected 'elements'", at_end() ? nullptr : &toks[pos]);
  ++pos;
  std::unordered_map<std::string, Elem> index;
  while (!at_end() && !is_keyword(toks[pos].text)) {
    const auto& t = toks[pos++];
    if (!index.emplace(t.text, static_cast<Elem>(a.labels.size())).second)
      throw fail("duplicate element '" + t.text + "'", &t);
    a.labels.push_back(t.text);
  }
  if (a.labels.empty()) throw fail("no elements declared", at_end() ? nullptr : &toks[pos]);
  const std::uint64_t n = a.labels.size();

  std::vector<OpSymbol> ops;
  bool ended = false;
  while (!at_end()) {
    const auto& head = toks[pos];
    if (head.text == "end") {
      ended = true;
      ++pos;
      break;
    }
    if (head.text != "op") throw fail("expected 'op' or 'end', got '" + head.text + "'", &head);
    ++pos;
    if (at_end()) throw fail("expected '<name>/<arity>' after 'op'", nullptr);
    const auto& decl = toks[pos++];
    auto slash = decl.text.find('/');
    if (slash == std::string::npos) throw fail("expected '<name>/<arity>'", &decl);
    std::string name = decl.text.substr(0, slash);
    if (!is_identifier(name)) throw fail("bad op name '" + name + "'", &decl);
    int arity = 0;
    auto ar = std::string_view(decl.text).substr(slash + 1);
    auto [p, ec] = std::from_chars(ar.data(), ar.data() + ar.size(), arity);
    if (ec != std::errc() || p != ar.data() + ar.size() || arity < 0 || arity > 8)
      throw ParseError("bad arity '" + std::string(ar) + "'", decl.line, decl.col + static_cast<int>(slash) + 1);
    for (const auto& o : ops)
      if (o.name == name) throw fail("duplicate op name '" + name + "'", &decl);
    const auto want = checked_pow(n, arity, 100'000'000);
    if (want > 100'000'000) throw fail("table too large for op '" + name + "'", &decl);
    std::vector<Elem> table;
    table.reserve(want);
    while (!at_end() && !is_keyword(toks[pos].text)) {
      const auto& t = toks[pos++];
      if (table.size() == want)
        throw fail("table size mismatch for op '" + name + "': more than " + std::to_string(want) + " entries", &t);
      auto it = index.find(t.text);
      if (it == index.end()) throw fail("out-of-range entry '" + t.text + "' in table of op '" + name + "'", &t);
      table.push_back(it->second);
    }
    if (table.size() != want)
      throw fail("table size mismatch for op '" + name + "': expected " + std::to_string(want) + " entries, got " +
                     std::to_string(table.size()),
                 &decl);
    ops.push_back({name, arity});
    a.tables.push_back(std::move(table));
  }
  if (!ended) throw fail("missing 'end'", nullptr);
  if (!at_end()) throw fail("trailing input after 'end'", &toks[pos]);
  a.sig = Signature(std::move(ops));
  return a;
}

std::string print_algebra(const Algebra& a) {
  std::ostringstream os;
  os << "algebra " << a.name << "\nelements";
  for (const auto& l : a.labels) os << ' ' << l;
  os << '\n';
  const auto n = a.size();
  for (std::size_t k = 0; k < a.sig.size(); ++k) {
    os << "op " << a.sig[k].name << '/' << a.sig[k].arity << '\n';
    const auto& t = a.tables[k];
    std::size_t row = a.sig[k].arity == 0 ? 1 : n;
    for (std::size_t i = 0; i < t.size(); ++i) {
      os << a.labels[t[i]];
      os << ((i + 1) % row == 0 ? '\n' : ' ');
    }
  }
  os << "end\n";
  return os.str();
}

}  // namespace quasilab
