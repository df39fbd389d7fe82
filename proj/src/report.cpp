#include "quasilab/report.hpp"

#include "quasilab/budget.hpp"
#include "quasilab/error.hpp"

namespace quasilab {

ParseError::ParseError(const std::string& msg, int line, int column)
    : Error("line " + std::to_string(line) + (column > 0 ? ":" + std::to_string(column) : std::string()) + ": " +
            msg),
      line_(line),
      column_(column) {}

BudgetExceeded::BudgetExceeded(std::string cap, std::uint64_t limit)
    : Error("budget exceeded: " + cap + " > " + std::to_string(limit)), cap_(std::move(cap)), limit_(limit) {}

namespace {

struct CapField {
  const char* key;
  std::uint64_t Budget::*field;
};

constexpr CapField kCaps[] = {
    {"assignments", &Budget::assignments},     {"hom_nodes", &Budget::hom_nodes},
    {"free_size", &Budget::free_size},         {"clone_size", &Budget::clone_size},
    {"subalgebra_size", &Budget::subalgebra_size}, {"product_size", &Budget::product_size},
    {"lattice_size", &Budget::lattice_size},   {"term_nodes", &Budget::term_nodes},
    {"table_entries", &Budget::table_entries}, {"closure_steps", &Budget::closure_steps},
};

}  // namespace

void Budget::set(const std::string& key, std::uint64_t value) {
  for (const auto& c : kCaps) {
    if (key == c.key) {
      this->*c.field = value;
      return;
    }
  }
  throw Error("unknown budget key '" + key + "'");
}

std::uint64_t Budget::get(const std::string& key) const {
  for (const auto& c : kCaps)
    if (key == c.key) return this->*c.field;
  return 0;
}

std::vector<std::string> Budget::keys() {
  std::vector<std::string> out;
  for (const auto& c : kCaps) out.emplace_back(c.key);
  return out;
}

std::string to_string(Answer a) {
  switch (a) {
    case Answer::yes: return "yes";
    case Answer::no: return "no";
    case Answer::unknown: return "unknown";
    case Answer::error: return "error";
  }
  return "error";
}

Report budget_report(Report r, const BudgetExceeded& e) {
  r.answer = Answer::unknown;
  r.budget = e.cap();
  r.note = e.what();
  return r;
}

json Report::to_json() const {
  json j;
  j["schema"] = kSchema;
  j["question"] = question;
  j["inputs"] = inputs;
  j["answer"] = to_string(answer);
  j["witness"] = witness;
  j["assumptions"] = assumptions;
  if (!budget.empty()) j["budget"] = budget;
  if (!note.empty()) j["note"] = note;
  j["timing"] = {{"seconds", seconds}};
  return j;
}

}  // namespace quasilab
