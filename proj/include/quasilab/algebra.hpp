#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace quasilab {

using Elem = std::uint32_t;

struct OpSymbol {
  std::string name;
  int arity = 0;
  bool operator==(const OpSymbol&) const = default;
};

class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<OpSymbol> ops);

  const std::vector<OpSymbol>& ops() const { return ops_; }
  std::size_t size() const { return ops_.size(); }
  const OpSymbol& operator[](std::size_t i) const { return ops_[i]; }
  // Index of the op, or -1.
  int find(std::string_view name) const;
  int max_arity() const;
  bool operator==(const Signature&) const = default;

 private:
  std::vector<OpSymbol> ops_;
};

// A finite algebra on the carrier {0, ..., n-1}. Table k holds op k on all
// argument tuples in row-major lexicographic order (first argument most
// significant).
struct Algebra {
  std::string name;
  Signature sig;
  std::vector<std::string> labels;
  std::vector<std::vector<Elem>> tables;

  std::size_t size() const { return labels.size(); }

  Elem apply(std::size_t op, const Elem* args) const {
    const auto n = static_cast<std::size_t>(labels.size());
    std::size_t idx = 0;
    for (int i = 0; i < sig[op].arity; ++i) idx = idx * n + args[i];
    return tables[op][idx];
  }
  Elem apply(std::size_t op, std::span<const Elem> args) const { return apply(op, args.data()); }
  Elem apply(std::size_t op, std::initializer_list<Elem> args) const { return apply(op, std::data(args)); }

  // Element index for a label, or -1.
  int element(std::string_view label) const;
  // Throws Error describing the first violated invariant.
  void validate() const;
};

Algebra make_algebra(std::string name, Signature sig, std::vector<std::string> labels,
                     std::vector<std::vector<Elem>> tables);

// The algebra file format: `algebra <name>`, `elements <tok>...`, then
// `op <name>/<arity>` followed by n^arity element tokens, then `end`.
// `#` starts a comment.
Algebra parse_algebra(std::string_view text);
std::string print_algebra(const Algebra& a);

// One-element algebra of the given signature.
Algebra trivial_algebra(const Signature& sig, std::string name = "trivial");

std::uint64_t checked_pow(std::uint64_t base, int exp, std::uint64_t cap);

}  // namespace quasilab
