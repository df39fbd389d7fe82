#include "quasilab/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "quasilab/error.hpp"

namespace quasilab {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

class Interner {
 public:
  Term get(int op, std::uint32_t var, std::vector<Term> args) {
    std::size_t h = mix(static_cast<std::size_t>(op + 7), var);
    for (const auto& a : args) h = mix(h, std::hash<const void*>{}(a.get()));
    std::lock_guard<std::mutex> lock(mu_);
    auto range = table_.equal_range(h);
    for (auto it = range.first; it != range.second; ++it) {
      Term sp = it->second.lock();
      if (!sp) continue;
      if (sp->op() != op || sp->var() != var || sp->args().size() != args.size()) continue;
      bool same = true;
      for (std::size_t i = 0; i < args.size() && same; ++i) same = sp->args()[i] == args[i];
      if (same) return sp;
    }
    auto node = std::make_shared<const TermNode>(TermNode::Key{}, op, var, std::move(args), h);
    table_.emplace(h, node);
    if (table_.size() > sweep_at_) {
      std::erase_if(table_, [](const auto& kv) { return kv.second.expired(); });
      sweep_at_ = std::max<std::size_t>(4096, 2 * table_.size());
    }
    return node;
  }

 private:
  std::mutex mu_;
  std::unordered_multimap<std::size_t, std::weak_ptr<const TermNode>> table_;
  std::size_t sweep_at_ = 4096;
};

Interner& interner() {
  static Interner* in = new Interner;
  return *in;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

class TermParser {
 public:
  TermParser(std::string_view text, const Signature& sig, std::vector<std::string> vars)
      : text_(text), sig_(sig), vars_(std::move(vars)) {}

  Term term() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= text_.size()) throw error("expected a term", pos_);
    if (text_[pos_] == '(') throw error("unexpected '('", pos_);
    if (!ident_start(text_[pos_])) throw error(std::string("unexpected character '") + text_[pos_] + "'", pos_);
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    skip_ws();
    bool has_args = pos_ < text_.size() && text_[pos_] == '(';
    int op = sig_.find(name);
    if (op < 0) {
      if (has_args) throw error("arity: '" + name + "' is not an op of the signature and cannot take arguments", start);
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) {
        vars_.push_back(name);
        return variable(static_cast<std::uint32_t>(vars_.size() - 1));
      }
      return variable(static_cast<std::uint32_t>(it - vars_.begin()));
    }
    const int arity = sig_[op].arity;
    std::vector<Term> args;
    if (has_args) {
      std::size_t open = pos_;
      ++pos_;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == ')') throw error("arity: op '" + name + "' applied to no arguments", start);
      while (true) {
        args.push_back(term());
        skip_ws();
        if (pos_ >= text_.size()) throw error("unbalanced parentheses", open);
        if (text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (text_[pos_] == ')') {
          ++pos_;
          break;
        }
        throw error(std::string("expected ',' or ')', got '") + text_[pos_] + "'", pos_);
      }
    }
    if (static_cast<int>(args.size()) != arity)
      throw error("arity: op '" + name + "' expects " + std::to_string(arity) + " argument(s), got " +
                      std::to_string(args.size()),
                  start);
    return apply(op, std::move(args));
  }

  Equation equation() {
    Term l = term();
    skip_ws();
    if (!peek("=") || peek("=>")) throw error("expected '='", pos_);
    ++pos_;
    Term r = term();
    return {l, r};
  }

  Quasiequation quasiequation() {
    std::vector<Equation> eqs;
    skip_ws();
    if (peek("=>")) {
      pos_ += 2;
      Equation c = equation();
      finish();
      return make_quasiequation({}, c, vars_);
    }
    while (true) {
      eqs.push_back(equation());
      skip_ws();
      if (peek(",")) {
        ++pos_;
        continue;
      }
      break;
    }
    if (peek("=>")) {
      pos_ += 2;
      Equation c = equation();
      finish();
      return make_quasiequation(std::move(eqs), c, vars_);
    }
    finish();
    if (eqs.size() != 1) throw error("expected '=>' after premise list", pos_);
    return make_quasiequation({}, eqs[0], vars_);
  }

  void finish() {
    skip_ws();
    if (pos_ < text_.size()) {
      if (text_[pos_] == ')') throw error("unbalanced parentheses", pos_);
      throw error("trailing input", pos_);
    }
  }

  std::vector<std::string>& vars() { return vars_; }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }
  ParseError error(const std::string& msg, std::size_t at) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return ParseError(msg, line, col);
  }

  std::string_view text_;
  const Signature& sig_;
  std::vector<std::string> vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Term variable(std::uint32_t index) { return interner().get(-1, index, {}); }

Term apply(int op, std::vector<Term> args) { return interner().get(op, 0, std::move(args)); }

Term apply(const Signature& sig, std::string_view op, std::vector<Term> args) {
  int k = sig.find(op);
  if (k < 0) throw Error("unknown op '" + std::string(op) + "'");
  if (static_cast<int>(args.size()) != sig[k].arity)
    throw Error("arity: op '" + std::string(op) + "' expects " + std::to_string(sig[k].arity) + " argument(s)");
  return apply(k, std::move(args));
}

namespace {

template <class F>
void visit_once(std::span<const Term> roots, F&& f) {
  std::unordered_map<const TermNode*, bool> seen;
  std::vector<std::pair<const TermNode*, bool>> stack;
  for (const auto& r : roots) stack.push_back({r.get(), false});
  while (!stack.empty()) {
    auto [node, expanded] = stack.back();
    stack.pop_back();
    if (expanded) {
      f(node);
      continue;
    }
    if (!seen.emplace(node, true).second) continue;
    stack.push_back({node, true});
    for (auto it = node->args().rbegin(); it != node->args().rend(); ++it)
      if (!seen.count(it->get())) stack.push_back({it->get(), false});
  }
}

}  // namespace

std::uint32_t var_bound(const Term& t) {
  std::uint32_t m = 0;
  visit_once(std::span<const Term>(&t, 1), [&](const TermNode* n) {
    if (n->is_var()) m = std::max(m, n->var() + 1);
  });
  return m;
}

std::size_t dag_size(std::span<const Term> roots) {
  std::size_t count = 0;
  visit_once(roots, [&](const TermNode*) { ++count; });
  return count;
}

std::size_t depth(const Term& t) {
  std::unordered_map<const TermNode*, std::size_t> d;
  visit_once(std::span<const Term>(&t, 1), [&](const TermNode* n) {
    std::size_t v = 0;
    for (const auto& a : n->args()) v = std::max(v, d[a.get()] + 1);
    d[n] = v;
  });
  return d[t.get()];
}

Term substitute(const Term& t, std::span<const Term> images) {
  std::unordered_map<const TermNode*, Term> memo;
  std::function<Term(const Term&)> go = [&](const Term& s) -> Term {
    auto it = memo.find(s.get());
    if (it != memo.end()) return it->second;
    Term r;
    if (s->is_var()) {
      r = s->var() < images.size() && images[s->var()] ? images[s->var()] : s;
    } else {
      std::vector<Term> args;
      args.reserve(s->args().size());
      for (const auto& a : s->args()) args.push_back(go(a));
      r = apply(s->op(), std::move(args));
    }
    memo.emplace(s.get(), r);
    return r;
  };
  return go(t);
}

void check_term(const Term& t, const Signature& sig) {
  visit_once(std::span<const Term>(&t, 1), [&](const TermNode* n) {
    if (n->is_var()) return;
    if (n->op() < 0 || static_cast<std::size_t>(n->op()) >= sig.size()) throw Error("term uses an op outside the signature");
    if (static_cast<int>(n->args().size()) != sig[n->op()].arity)
      throw Error("arity: op '" + sig[n->op()].name + "' applied to " + std::to_string(n->args().size()) +
                  " argument(s)");
  });
}

std::string default_var_name(std::uint32_t i) {
  static const char* names[] = {"x", "y", "z", "w", "u", "v"};
  if (i < 6) return names[i];
  return "x" + std::to_string(i);
}

std::string print_term(const Term& t, const Signature& sig, std::span<const std::string> names) {
  std::string out;
  std::function<void(const Term&)> go = [&](const Term& s) {
    if (s->is_var()) {
      out += s->var() < names.size() ? names[s->var()] : default_var_name(s->var());
      return;
    }
    out += sig[s->op()].name;
    if (s->args().empty()) return;
    out += '(';
    for (std::size_t i = 0; i < s->args().size(); ++i) {
      if (i) out += ", ";
      go(s->args()[i]);
    }
    out += ')';
  };
  go(t);
  return out;
}

ParsedTerm parse_term(std::string_view text, const Signature& sig, std::vector<std::string> vars) {
  TermParser p(text, sig, std::move(vars));
  Term t = p.term();
  p.finish();
  return {t, p.vars()};
}

Program::Program(std::span<const Term> roots) {
  std::unordered_map<const TermNode*, std::uint32_t> slot;
  visit_once(roots, [&](const TermNode* n) {
    Instr in{n->op(), n->var(), static_cast<std::uint32_t>(arg_slots_.size()),
             static_cast<std::uint32_t>(n->args().size())};
    for (const auto& a : n->args()) arg_slots_.push_back(slot.at(a.get()));
    if (n->is_var()) nvars_ = std::max(nvars_, n->var() + 1);
    slot.emplace(n, static_cast<std::uint32_t>(code_.size()));
    code_.push_back(in);
  });
  for (const auto& r : roots) roots_.push_back(slot.at(r.get()));
}

Evaluator::Evaluator(const Algebra& a, std::span<const Term> roots) : alg_(&a), program_(roots) {
  slots_.resize(program_.code().size());
  args_.resize(static_cast<std::size_t>(std::max(1, a.sig.max_arity())));
}

void Evaluator::run(const Elem* assignment) {
  const auto& code = program_.code();
  const auto& as = program_.arg_slots();
  for (std::size_t i = 0; i < code.size(); ++i) {
    const auto& in = code[i];
    if (in.op < 0) {
      slots_[i] = assignment[in.var];
      continue;
    }
    for (std::uint32_t k = 0; k < in.nargs; ++k) args_[k] = slots_[as[in.first_arg + k]];
    slots_[i] = alg_->apply(static_cast<std::size_t>(in.op), args_.data());
  }
}

Elem eval(const Term& t, const Algebra& a, std::span<const Elem> assignment) {
  if (var_bound(t) > assignment.size()) throw Error("assignment does not cover the term's variables");
  Evaluator ev(a, std::span<const Term>(&t, 1));
  ev.run(assignment.data());
  return ev.value(0);
}

std::vector<Elem> eval_table(const Term& t, const Algebra& a, std::uint32_t nvars, const Budget& budget) {
  if (var_bound(t) > nvars) throw Error("term has more variables than requested");
  const auto n = a.size();
  const auto total = checked_pow(n, static_cast<int>(nvars), budget.table_entries);
  if (total > budget.table_entries) throw BudgetExceeded("table_entries", budget.table_entries);
  Evaluator ev(a, std::span<const Term>(&t, 1));
  std::vector<Elem> asg(nvars, 0), out;
  out.reserve(total);
  for (std::uint64_t k = 0; k < total; ++k) {
    ev.run(asg.data());
    out.push_back(ev.value(0));
    for (int i = static_cast<int>(nvars) - 1; i >= 0; --i) {
      if (++asg[i] < n) break;
      asg[i] = 0;
    }
  }
  return out;
}

Quasiequation make_quasiequation(std::vector<Equation> premises, Equation conclusion, std::vector<std::string> vars) {
  Quasiequation q;
  q.premises = std::move(premises);
  q.conclusion = std::move(conclusion);
  std::uint32_t nv = std::max(var_bound(q.conclusion.lhs), var_bound(q.conclusion.rhs));
  for (const auto& e : q.premises) nv = std::max({nv, var_bound(e.lhs), var_bound(e.rhs)});
  nv = std::max(nv, static_cast<std::uint32_t>(vars.size()));
  q.nvars = nv;
  for (std::uint32_t i = static_cast<std::uint32_t>(vars.size()); i < nv; ++i) vars.push_back(default_var_name(i));
  q.vars = std::move(vars);
  return q;
}

Quasiequation parse_quasiequation(std::string_view text, const Signature& sig, std::vector<std::string> vars) {
  TermParser p(text, sig, std::move(vars));
  return p.quasiequation();
}

std::string print_quasiequation(const Quasiequation& q, const Signature& sig) {
  std::string out;
  auto eq = [&](const Equation& e) {
    return print_term(e.lhs, sig, q.vars) + " = " + print_term(e.rhs, sig, q.vars);
  };
  for (std::size_t i = 0; i < q.premises.size(); ++i) {
    if (i) out += ", ";
    out += eq(q.premises[i]);
  }
  if (!q.premises.empty()) out += " => ";
  out += eq(q.conclusion);
  return out;
}

HoldsResult check_quasiequation(const Algebra& a, const Quasiequation& q, const Budget& budget) {
  const auto n = a.size();
  const auto total = checked_pow(n, static_cast<int>(q.nvars), budget.assignments);
  if (total > budget.assignments) throw BudgetExceeded("assignments", budget.assignments);
  std::vector<Term> roots;
  for (const auto& e : q.premises) {
    roots.push_back(e.lhs);
    roots.push_back(e.rhs);
  }
  roots.push_back(q.conclusion.lhs);
  roots.push_back(q.conclusion.rhs);
  Evaluator ev(a, roots);
  const std::size_t np = q.premises.size();
  std::vector<Elem> asg(std::max<std::uint32_t>(q.nvars, 1), 0);
  for (std::uint64_t k = 0; k < total; ++k) {
    ev.run(asg.data());
    bool prem = true;
    for (std::size_t i = 0; i < np && prem; ++i) prem = ev.value(2 * i) == ev.value(2 * i + 1);
    if (prem && ev.value(2 * np) != ev.value(2 * np + 1)) {
      asg.resize(q.nvars);
      return {false, asg};
    }
    for (int i = static_cast<int>(q.nvars) - 1; i >= 0; --i) {
      if (++asg[i] < n) break;
      asg[i] = 0;
    }
  }
  return {true, {}};
}

bool holds(const Algebra& a, const Quasiequation& q, const Budget& budget) {
  return check_quasiequation(a, q, budget).holds;
}

}  // namespace quasilab
