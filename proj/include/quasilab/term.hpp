#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quasilab/algebra.hpp"
#include "quasilab/budget.hpp"

namespace quasilab {

class TermNode;
// Terms are hash-consed: two terms are syntactically equal iff the pointers
// are equal. Nodes are immutable and shared between all terms that contain
// them.
using Term = std::shared_ptr<const TermNode>;

class TermNode {
 public:
  struct Key {};
  TermNode(Key, int op, std::uint32_t var, std::vector<Term> args, std::size_t hash)
      : op_(op), var_(var), args_(std::move(args)), hash_(hash) {}

  bool is_var() const { return op_ < 0; }
  int op() const { return op_; }
  std::uint32_t var() const { return var_; }
  const std::vector<Term>& args() const { return args_; }
  std::size_t hash() const { return hash_; }

 private:
  int op_;
  std::uint32_t var_;
  std::vector<Term> args_;
  std::size_t hash_;
};

Term variable(std::uint32_t index);
// No arity check; the caller owns signature consistency.
Term apply(int op, std::vector<Term> args);
// Arity-checked application by op name.
Term apply(const Signature& sig, std::string_view op, std::vector<Term> args);

// 1 + the largest variable index occurring in t (0 for ground terms).
std::uint32_t var_bound(const Term& t);
// Number of distinct nodes reachable from the roots.
std::size_t dag_size(std::span<const Term> roots);
// Height of the term tree; variables and constants have depth 0.
std::size_t depth(const Term& t);
// Replaces x_i by images[i]; variables without an image are kept.
Term substitute(const Term& t, std::span<const Term> images);
// Arity-checks t against sig; throws Error.
void check_term(const Term& t, const Signature& sig);

// Default variable names x, y, z, w, u, v, x6, x7, ...
std::string default_var_name(std::uint32_t i);
std::string print_term(const Term& t, const Signature& sig, std::span<const std::string> names = {});

struct ParsedTerm {
  Term term;
  std::vector<std::string> vars;
};
// Identifiers naming an op of sig are ops; all other identifiers are
// variables, numbered by first occurrence after any names already in vars.
ParsedTerm parse_term(std::string_view text, const Signature& sig, std::vector<std::string> vars = {});

// Straight-line code for a set of terms, one slot per distinct node in
// children-first order.
class Program {
 public:
  struct Instr {
    int op;             // -1 loads a variable
    std::uint32_t var;  // variable index when op == -1
    std::uint32_t first_arg;
    std::uint32_t nargs;
  };

  Program() = default;
  explicit Program(std::span<const Term> roots);

  const std::vector<Instr>& code() const { return code_; }
  const std::vector<std::uint32_t>& arg_slots() const { return arg_slots_; }
  const std::vector<std::uint32_t>& roots() const { return roots_; }
  std::uint32_t nvars() const { return nvars_; }

 private:
  std::vector<Instr> code_;
  std::vector<std::uint32_t> arg_slots_;
  std::vector<std::uint32_t> roots_;
  std::uint32_t nvars_ = 0;
};

// A Program bound to an algebra, with its own scratch space.
class Evaluator {
 public:
  Evaluator(const Algebra& a, std::span<const Term> roots);
  void run(const Elem* assignment);
  Elem value(std::size_t root) const { return slots_[program_.roots()[root]]; }
  std::uint32_t nvars() const { return program_.nvars(); }

 private:
  const Algebra* alg_;
  Program program_;
  std::vector<Elem> slots_;
  std::vector<Elem> args_;
};

Elem eval(const Term& t, const Algebra& a, std::span<const Elem> assignment);
// Values of t on all assignments of nvars variables, lexicographic with
// variable 0 most significant.
std::vector<Elem> eval_table(const Term& t, const Algebra& a, std::uint32_t nvars,
                             const Budget& budget = {});

struct Equation {
  Term lhs;
  Term rhs;
};

struct Quasiequation {
  std::vector<Equation> premises;
  Equation conclusion;
  std::uint32_t nvars = 0;
  std::vector<std::string> vars;
};

Quasiequation make_quasiequation(std::vector<Equation> premises, Equation conclusion,
                                 std::vector<std::string> vars = {});
// `[eq (, eq)*] => eq` or a bare `eq`, with eq := term = term.
Quasiequation parse_quasiequation(std::string_view text, const Signature& sig,
                                  std::vector<std::string> vars = {});
std::string print_quasiequation(const Quasiequation& q, const Signature& sig);

struct HoldsResult {
  bool holds = true;
  // Least refuting assignment in lexicographic order, when !holds.
  std::vector<Elem> counterexample;
};

HoldsResult check_quasiequation(const Algebra& a, const Quasiequation& q, const Budget& budget = {});
bool holds(const Algebra& a, const Quasiequation& q, const Budget& budget = {});

}  // namespace quasilab
