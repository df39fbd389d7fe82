#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "quasilab/algebra.hpp"
#include "quasilab/clones.hpp"
#include "quasilab/congruence.hpp"
#include "quasilab/corpus.hpp"
#include "quasilab/deduction.hpp"
#include "quasilab/discriminator.hpp"
#include "quasilab/error.hpp"
#include "quasilab/freealg.hpp"
#include "quasilab/morphisms.hpp"
#include "quasilab/projectivity.hpp"

using namespace quasilab;

namespace {

struct Options {
  std::string verb;
  std::vector<std::string> K;
  std::string algebra;
  bool json_out = false;
  bool verify = false;
  bool deep = false;
  std::optional<std::uint32_t> free_rank;
  std::vector<std::string> budget;
  std::string zero;
  std::string rule;
  std::string clone;
  std::string term;
  std::string term2;
  std::string role;
  std::string rtpip;
  std::string theta;
  std::string principal;
  std::string export_path;
  std::optional<std::uint32_t> projection;
  std::uint32_t rank = 1;
  std::uint32_t max_vars = 3;
  std::uint32_t iterate = 1;
  bool relative = false;
  std::string name;
};

Algebra load(const std::string& spec) {
  if (spec.rfind("corpus:", 0) == 0) return corpus(spec.substr(7));
  std::ifstream in(spec);
  if (!in) throw Error("cannot read '" + spec + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_algebra(ss.str());
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Elem element(const Algebra& a, const std::string& label) {
  const int e = a.element(label);
  if (e < 0) throw Error("no element '" + label + "' in '" + a.name + "'");
  return static_cast<Elem>(e);
}

// Block labels, comma or space separated, one per element (element labels
// or numbers).
Congruence parse_theta(const Algebra& a, const std::string& text) {
  std::vector<Elem> lab;
  std::string tok;
  std::stringstream ss(text);
  while (ss >> tok) {
    for (auto& piece : split(tok, ',')) {
      if (piece.empty()) continue;
      const int e = a.element(piece);
      lab.push_back(e >= 0 ? static_cast<Elem>(e) : static_cast<Elem>(std::stoul(piece)));
    }
  }
  if (lab.size() != a.size()) throw Error("theta needs one block label per element");
  auto c = Congruence::from_labels(lab);
  if (!is_compatible(a, c)) throw Error("theta is not a congruence of '" + a.name + "'");
  return c;
}

std::vector<Term> parse_terms(const std::string& text, const Signature& sig, std::vector<std::string> vars) {
  std::vector<Term> out;
  for (auto& piece : split(text, ';')) {
    if (piece.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(parse_term(piece, sig, vars).term);
  }
  return out;
}

const std::vector<std::string> xyz = {"x", "y", "z"};
const std::vector<std::string> xyzw = {"x", "y", "z", "w"};

Term parse_fixed(const std::string& text, const Signature& sig, const std::vector<std::string>& vars) {
  if (text.empty()) throw Error("--term is required");
  auto t = parse_term(text, sig, vars);
  if (t.vars.size() > vars.size())
    throw Error("unexpected variable '" + t.vars[vars.size()] + "'; use " + std::to_string(vars.size()) +
                " variables named in order");
  return t.term;
}

struct Context {
  Options o;
  Budget budget;
  std::vector<Algebra> K;
  std::optional<Quasivariety> Q;
  Algebra A;
};

Report deep_gate(const Context& c) {
  Report r;
  r.question = c.o.verb;
  r.answer = Answer::unknown;
  r.budget = "deep";
  r.note = "free algebras over the 16-element Fano lattice exceed desk scale; pass --deep to attempt";
  return r;
}

bool needs_deep(const Context& c) {
  static const std::vector<std::string> heavy = {"sc", "core", "exact", "admissible", "primitive", "projective",
                                                 "wproj", "csc", "free"};
  if (c.o.deep) return false;
  if (std::find(heavy.begin(), heavy.end(), c.o.verb) == heavy.end()) return false;
  for (const auto& b : c.K)
    if (b.size() > 12) return true;
  return false;
}

Report info(const Context& c) {
  Report r;
  r.question = "info";
  r.answer = Answer::yes;
  json list = json::array();
  for (const auto& a : c.K) {
    json ops = json::array();
    for (const auto& op : a.sig.ops()) ops.push_back(op.name + "/" + std::to_string(op.arity));
    std::vector<Elem> gens;
    const auto g = min_generators(a, &gens);
    json gl = json::array();
    for (Elem e : gens) gl.push_back(a.labels[e]);
    auto L = con_all(a, c.budget);
    list.push_back({{"name", a.name},
                    {"size", a.size()},
                    {"elements", a.labels},
                    {"ops", ops},
                    {"min_generators", g},
                    {"generators", gl},
                    {"congruences", L.size()},
                    {"simple", a.size() > 1 && L.size() == 2}});
  }
  r.witness = {{"algebras", list}};
  if (c.Q) r.witness["free_rank_default"] = c.Q->default_rank();
  return r;
}

Report lattice_report(const std::string& q, const Algebra& a, const CongruenceLattice& L) {
  Report r;
  r.question = q;
  r.inputs = {{"algebra", a.name}};
  r.answer = Answer::yes;
  r.witness = L.to_json();
  r.witness["size"] = L.size();
  return r;
}

Report free_report(const Context& c) {
  Report r;
  r.question = "free";
  r.inputs = {{"K", c.Q->name()}, {"rank", c.o.rank}};
  try {
    const auto& F = c.Q->free(c.o.rank);
    r.answer = Answer::yes;
    r.witness = {{"size", F.size()}, {"coordinates", F.coordinates().size()}};
    if (F.size() <= 200) r.witness["elements"] = F.witnesses_json();
    if (!c.o.export_path.empty()) {
      auto alg = F.algebra(c.budget);
      alg.name = "F" + std::to_string(c.o.rank);
      std::ofstream(c.o.export_path) << print_algebra(alg);
      std::ofstream(c.o.export_path + ".json") << F.witnesses_json().dump(2) << "\n";
      r.witness["exported"] = c.o.export_path;
    }
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

Report char_report(const Context& c) {
  auto ch = characteristic_quasiequation(*c.Q, c.A);
  Report r;
  r.question = "char";
  r.inputs = {{"K", c.Q->name()}, {"algebra", c.A.name}};
  r.answer = Answer::yes;
  r.witness = {{"rule", print_quasiequation(ch, c.A.sig)}, {"premises", ch.premises.size()}};
  return r;
}

Report upresent(const Context& c) {
  if (c.o.clone.empty()) throw Error("--clone is required");
  auto C = parse_clone_spec(c.o.clone, c.A.sig);
  Congruence theta;
  if (!c.o.theta.empty()) {
    theta = parse_theta(c.A, c.o.theta);
  } else if (!c.o.principal.empty()) {
    auto p = split(c.o.principal, ',');
    if (p.size() != 2) throw Error("--principal takes a,b");
    auto L = con_q(c.A, c.K, c.budget);
    theta = L[L.principal(element(c.A, p[0]), element(c.A, p[1]))];
  } else {
    throw Error("--theta or --principal is required");
  }
  return u_presentable(c.A, c.K, theta, C, c.budget);
}

Report filtral(const Context& c) {
  auto P = product(c.K, c.budget);
  Congruence theta;
  if (c.o.projection) {
    if (*c.o.projection >= c.K.size()) throw Error("projection index out of range");
    std::vector<Elem> lab(P.algebra.size());
    for (std::size_t e = 0; e < lab.size(); ++e) lab[e] = P.coords[e][*c.o.projection];
    theta = Congruence::from_labels(lab);
  } else if (!c.o.theta.empty()) {
    theta = parse_theta(P.algebra, c.o.theta);
  } else {
    throw Error("--theta or --projection is required");
  }
  auto r = is_filtral(c.K, P.coords, theta);
  r.inputs["product"] = P.algebra.labels;
  return r;
}

Elem zero_of(const Context& c) { return c.o.zero.empty() ? default_zero(c.A) : element(c.A, c.o.zero); }

Report check_term(const Context& c) {
  const auto& sig = c.A.sig;
  const auto& role = c.o.role;
  if (role == "dual-i-disc") return is_dual_i_discriminator(c.K, parse_fixed(c.o.term, sig, xyz), c.budget);
  if (role == "rtpip") return is_rtpip_witness(c.K, parse_fixed(c.o.term, sig, xyz), c.budget);
  if (role == "rpip") {
    if (c.o.term2.empty()) throw Error("rpip needs --term and --term2");
    return is_rpip_witness(c.K, parse_fixed(c.o.term, sig, xyzw), parse_fixed(c.o.term2, sig, xyzw), c.budget);
  }
  if (role == "td") return td_term_check(c.A, c.K, parse_fixed(c.o.term, sig, xyz), c.budget);
  if (role == "prucnal") {
    auto t = parse_fixed(c.o.term, sig, xyz);
    auto C = c.o.clone.empty() ? full_clone(sig) : parse_clone_spec(c.o.clone, sig);
    auto r = prucnal_principal_check(c.A, c.K, t, C, c.budget);
    if (c.o.iterate > 1) {
      auto names = prucnal_var_names(c.o.iterate);
      r.witness["iterate"] = print_term(prucnal_iterate(t, c.o.iterate), sig, names);
    }
    return r;
  }
  if (role == "subtraction") {
    return is_subtraction_term(c.A, parse_fixed(c.o.term, sig, {"x", "y"}), zero_of(c), c.budget);
  }
  if (role == "zero-regular") {
    if (c.o.term.empty()) throw Error("--term is required");
    return zero_regular_witnesses(c.A, c.K, parse_terms(c.o.term, sig, {"x", "y"}), zero_of(c), c.budget);
  }
  if (role == "u-term") return u_term_check(c.A, c.K, parse_fixed(c.o.term, sig, {"x", "y"}), zero_of(c), c.budget);
  if (role == "fixedpoint") {
    auto d = parse_fixed(c.o.term, sig, xyz);
    auto zt = constant_term(c.A, zero_of(c));
    auto r = fixedpoint_roundtrip(c.K, d, zt, c.budget);
    r.question = "fixedpoint";
    return r;
  }
  throw Error("unknown role '" + role + "'");
}

Report synth(const Context& c) {
  if (c.o.rtpip.empty()) throw Error("--rtpip is required");
  auto p = parse_fixed(c.o.rtpip, c.A.sig, xyz);
  std::vector<Algebra> irr;
  for (auto& i : q_irreducibles(*c.Q)) irr.push_back(std::move(i.algebra));
  auto s = synth_dual_i_discriminator(irr, p, c.budget);
  return s.certificate;
}

Report ideals_report(const Context& c) {
  auto s = parse_fixed(c.o.term, c.A.sig, {"x", "y"});
  std::vector<Algebra> K;
  if (c.o.relative) K = c.K;
  return ideals(c.A, K, s, zero_of(c), c.budget);
}

Report corpus_report(const Context& c) {
  Report r;
  r.question = "corpus";
  r.answer = Answer::yes;
  if (!c.o.name.empty()) {
    r.witness = {{"name", c.o.name}, {"note", corpus_note(c.o.name)}, {"text", corpus_text(c.o.name)}};
    return r;
  }
  json list = json::array();
  for (const auto& n : corpus_names()) list.push_back({{"name", n}, {"note", corpus_note(n)}});
  r.witness = {{"algebras", list}};
  return r;
}

Report run(Context& c) {
  const auto& v = c.o.verb;
  if (v == "corpus") return corpus_report(c);
  if (needs_deep(c)) return deep_gate(c);
  if (v == "info") return info(c);
  if (v == "con") return lattice_report("con", c.A, con_all(c.A, c.budget));
  if (v == "conq") return lattice_report("conq", c.A, con_q(c.A, c.K, c.budget));
  if (v == "free") return free_report(c);
  if (v == "derivable" || v == "admissible") {
    if (c.o.rule.empty()) throw Error("--rule is required");
    auto phi = parse_quasiequation(c.o.rule, c.Q->sig());
    return v == "derivable" ? derivable(*c.Q, phi) : admissible(*c.Q, phi);
  }
  if (v == "sc") return structurally_complete(*c.Q);
  if (v == "core") return in_structural_core(*c.Q, c.A);
  if (v == "exact") return exact(*c.Q, c.A, c.o.max_vars);
  if (v == "char") return char_report(c);
  if (v == "projective") return projective(*c.Q, c.A);
  if (v == "wproj") return weakly_projective(*c.Q, c.A, c.o.free_rank);
  if (v == "primitive") return primitive(*c.Q);
  if (v == "csc") {
    if (c.o.clone.empty()) throw Error("--clone is required");
    return c_structurally_complete(*c.Q, parse_clone_spec(c.o.clone, c.Q->sig()));
  }
  if (v == "upresent") return upresent(c);
  if (v == "check-term") return check_term(c);
  if (v == "synth-discriminator") return synth(c);
  if (v == "ideals") return ideals_report(c);
  if (v == "filtral") return filtral(c);
  throw Error("unknown verb '" + v + "'");
}

// Replays a witness with independent checks. Returns an empty string on
// success, else the failed check.
std::string verify(Context& c, const Report& r) {
  const auto& w = r.witness;
  const auto& v = c.o.verb;
  if (r.unknown() || r.answer == Answer::error) return {};
  if (v == "con" || v == "conq") {
    for (const auto& m : w.at("nodes")) {
      Congruence t{m.at("blocks").get<std::vector<Elem>>()};
      if (!is_compatible(c.A, t)) return "incompatible partition in the lattice";
      if (v == "conq" && !t.is_all() && !in_isp(quotient(c.A, t).algebra, c.K, c.budget))
        return "quotient outside ISP(K)";
    }
    return {};
  }
  if (v == "free") {
    const auto& F = c.Q->free(c.o.rank);
    for (std::size_t e = 0; e < F.size(); ++e)
      for (std::size_t k = 0; k < F.coordinates().size(); ++k) {
        const auto& co = F.coordinates()[k];
        if (eval(F.witness(e), c.K[co.member], co.assignment) != F.value(e, k)) return "witness term mismatch";
      }
    return {};
  }
  if (v == "derivable" && r.no()) {
    auto phi = parse_quasiequation(c.o.rule, c.Q->sig());
    for (const auto& b : c.K) {
      if (b.name != w.at("member").get<std::string>()) continue;
      std::vector<Elem> asg;
      for (const auto& name : phi.vars) asg.push_back(element(b, w.at("assignment").at(name).get<std::string>()));
      for (const auto& eq : phi.premises)
        if (eval(eq.lhs, b, asg) != eval(eq.rhs, b, asg)) return "premise fails at the counterexample";
      if (eval(phi.conclusion.lhs, b, asg) == eval(phi.conclusion.rhs, b, asg)) return "conclusion holds";
      return {};
    }
    return "member not found";
  }
  if (v == "admissible" && r.no()) {
    auto phi = parse_quasiequation(c.o.rule, c.Q->sig());
    const auto& F = c.Q->free(c.Q->rank());
    std::vector<std::string> names;
    for (std::uint32_t i = 0; i < F.rank(); ++i) names.push_back(default_var_name(i));
    std::vector<Term> img;
    for (const auto& name : phi.vars) img.push_back(parse_term(w.at("substitution").at(name).get<std::string>(),
                                                               c.Q->sig(), names).term);
    auto val = [&](const Term& t) { return F.element_of(substitute(t, img)); };
    for (const auto& eq : phi.premises)
      if (val(eq.lhs) != val(eq.rhs)) return "premise fails under the substitution";
    if (val(phi.conclusion.lhs) == val(phi.conclusion.rhs)) return "conclusion holds under the substitution";
    return {};
  }
  if ((v == "sc" || v == "core") && r.no()) {
    const auto& Fa = c.Q->free(c.Q->rank()).algebra(c.budget);
    const Algebra* b = &c.A;
    if (v == "sc")
      for (const auto& m : c.K)
        if (m.name == w.at("member").get<std::string>()) b = &m;
    const Elem x = element(*b, w.at("pair")[0].get<std::string>());
    const Elem y = element(*b, w.at("pair")[1].get<std::string>());
    for (const auto& h : homs(*b, Fa, {}, c.budget))
      if (h[x] != h[y]) return "a homomorphism separates the pair";
    return {};
  }
  if (v == "exact" && r.yes()) {
    const auto& Fa = c.Q->free(w.at("rank").get<std::uint32_t>()).algebra(c.budget);
    auto map = w.at("map").get<std::vector<Elem>>();
    if (!is_homomorphism(c.A, Fa, map)) return "map is not a homomorphism";
    if (!kernel(map).is_identity()) return "map is not injective";
    return {};
  }
  if (v == "char") {
    auto ch = characteristic_quasiequation(*c.Q, c.A);
    if (holds(c.A, ch, c.budget)) return "the algebra satisfies its characteristic quasiequation";
    return {};
  }
  if (v == "projective" && r.yes()) {
    const auto& Fa = c.Q->free(r.inputs.at("free_rank").get<std::uint32_t>()).algebra(c.budget);
    auto g = w.at("surjection").get<std::vector<Elem>>();
    auto h = w.at("section").get<std::vector<Elem>>();
    if (!is_homomorphism(Fa, c.A, g) || !is_homomorphism(c.A, Fa, h)) return "not homomorphisms";
    for (Elem e = 0; e < c.A.size(); ++e)
      if (g[h[e]] != e) return "section is not a right inverse";
    return {};
  }
  if (v == "wproj" && r.no()) {
    const auto rank = c.o.free_rank ? *c.o.free_rank : static_cast<std::uint32_t>(min_generators(c.A));
    const auto& Fa = c.Q->free(rank).algebra(c.budget);
    Congruence t{w.at("theta").get<std::vector<Elem>>()};
    if (!is_compatible(Fa, t)) return "theta is not a congruence of the free algebra";
    if (embeds(c.A, quotient(Fa, t).algebra, c.budget).yes()) return "the algebra embeds into the quotient";
    return {};
  }
  if (v == "check-term" && c.o.role == "dual-i-disc" && r.yes()) {
    auto p = parse_fixed(c.o.term, c.A.sig, xyz);
    for (const auto& b : c.K) {
      const auto& pi = w.at("pi").at(b.name);
      for (Elem a = 0; a < b.size(); ++a)
        for (Elem bb = 0; bb < b.size(); ++bb)
          for (Elem cc = 0; cc < b.size(); ++cc) {
            const Elem asg[] = {a, bb, cc};
            const Elem val = eval(p, b, asg);
            const Elem want = a == bb ? element(b, pi.at(b.labels[a]).get<std::string>()) : cc;
            if (val != want) return "p disagrees with the dual discriminator table";
          }
    }
    return {};
  }
  if (v == "synth-discriminator" && r.yes()) {
    std::vector<Algebra> irr;
    for (auto& i : q_irreducibles(*c.Q)) irr.push_back(std::move(i.algebra));
    auto d = parse_term(w.at("d").get<std::string>(), c.A.sig, xyz).term;
    if (!is_dual_i_discriminator(irr, d, c.budget).yes()) return "synthesized term fails verification";
    return {};
  }
  if (v == "upresent" && r.yes()) {
    auto C = parse_clone_spec(c.o.clone, c.A.sig);
    auto map = w.at("map").get<std::vector<Elem>>();
    auto qmap = w.at("quotient_map").get<std::vector<Elem>>();
    auto q = quotient(c.A, kernel(qmap));
    if (!is_homomorphism(reduct(q.algebra, C, c.budget).algebra, reduct(c.A, C, c.budget).algebra, map))
      return "embedding is not a homomorphism of reducts";
    if (!kernel(map).is_identity()) return "embedding is not injective";
    return {};
  }
  return {};
}

void print_text(const Report& r) {
  std::cout << r.question << ": " << to_string(r.answer) << "\n";
  if (!r.budget.empty()) std::cout << "budget: " << r.budget << "\n";
  if (!r.note.empty()) std::cout << "note: " << r.note << "\n";
  for (const auto& a : r.assumptions) std::cout << "assumes: " << a << "\n";
  if (!r.witness.empty()) std::cout << "witness: " << r.witness.dump(2) << "\n";
}

const std::vector<std::pair<std::string, std::string>> verbs = {
    {"info", "size, signature and basic facts"},
    {"con", "congruence lattice"},
    {"conq", "relative congruence lattice Con_Q"},
    {"free", "free algebra of rank -n"},
    {"derivable", "does --rule hold in Q"},
    {"admissible", "is --rule admissible in Q"},
    {"sc", "structural completeness of Q"},
    {"core", "is -A in the structural core"},
    {"exact", "is -A exact in Q"},
    {"char", "characteristic quasiequation of -A"},
    {"projective", "is -A projective in Q"},
    {"wproj", "is -A weakly projective in Q"},
    {"primitive", "primitivity of Q"},
    {"csc", "C-structural completeness for --clone"},
    {"upresent", "u-presentability of a Q-congruence"},
    {"check-term", "check --term in a --role"},
    {"synth-discriminator", "dual i-discriminator from an RTPIP term"},
    {"ideals", "ideals from a subtraction --term"},
    {"filtral", "filtrality of a congruence on a product"},
    {"corpus", "list or print built-in algebras"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasilab: finite algebras, quasivarieties and their admissible rules"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("-K", o.K, "generator algebra: corpus:<name> or a file (repeatable)");
  app.add_option("-A,--algebra", o.algebra, "target algebra (default: first -K)");
  app.add_flag("--json", o.json_out, "emit the report as JSON");
  app.add_flag("--verify", o.verify, "replay the witness");
  app.add_flag("--deep", o.deep, "allow computations beyond default desk scale");
  app.add_option("--free-rank", o.free_rank, "override the free rank");
  app.add_option("--budget", o.budget, "cap override K=V (repeatable)");
  app.add_option("--zero", o.zero, "designated zero element (default: first constant)");
  app.add_option("--rule", o.rule, "quasiequation");
  app.add_option("--clone", o.clone, "clone generators, ';'-separated terms");
  app.add_option("--term", o.term, "term (variables x,y,z,w in order)");
  app.add_option("--term2", o.term2, "second term (rpip)");
  app.add_option("--role", o.role, "check-term role")
      ->check(CLI::IsMember({"dual-i-disc", "rpip", "rtpip", "td", "prucnal", "subtraction", "zero-regular",
                             "u-term", "fixedpoint"}));
  app.add_option("--rtpip", o.rtpip, "RTPIP witness term for synthesis");
  app.add_option("--theta", o.theta, "congruence as block labels");
  app.add_option("--principal", o.principal, "principal Q-congruence a,b");
  app.add_option("--projection", o.projection, "filtral: kernel of this projection");
  app.add_option("-n,--rank", o.rank, "free: number of generators");
  app.add_option("--max-vars", o.max_vars, "exact: largest rank searched");
  app.add_option("--iterate", o.iterate, "prucnal: also print the n-th iterate");
  app.add_flag("--relative", o.relative, "ideals: use con_q instead of con");
  app.add_option("--export", o.export_path, "free: write the algebra file (and witnesses as .json)");
  for (const auto& [v, help] : verbs) {
    auto* sub = app.add_subcommand(v, help);
    if (v == "corpus") sub->add_option("name", o.name, "corpus algebra to print");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  o.verb = app.get_subcommands().front()->get_name();

  Context c{o, {}, {}, {}, {}};
  Report r;
  r.question = o.verb;
  const auto t0 = std::chrono::steady_clock::now();
  int code = 0;
  try {
    for (const auto& kv : o.budget) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw Error("--budget expects K=V");
      c.budget.set(kv.substr(0, eq), std::stoull(kv.substr(eq + 1)));
    }
    for (const auto& s : o.K) c.K.push_back(load(s));
    if (o.verb != "corpus") {
      if (c.K.empty()) throw Error("at least one -K is required");
      c.A = o.algebra.empty() ? c.K.front() : load(o.algebra);
      if (o.verb != "filtral") {
        c.Q.emplace(c.K, c.budget);
        if (o.verb != "wproj") c.Q->set_rank(o.free_rank);
      }
    }
    r = run(c);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    code = r.unknown() ? 2 : 0;
  } catch (const ParseError& e) {
    r.answer = Answer::error;
    r.note = std::string("parse error: ") + e.what();
    code = 1;
  } catch (const BudgetExceeded& e) {
    r = budget_report(r, e);
    code = 2;
  } catch (const std::exception& e) {
    r.answer = Answer::error;
    r.note = e.what();
    code = 1;
  }
  if (o.json_out) {
    std::cout << r.to_json().dump(2) << "\n";
  } else {
    print_text(r);
  }
  if (o.verify && code != 1) {
    try {
      auto failed = verify(c, r);
      if (!failed.empty()) {
        std::cerr << "verify: FAILED: " << failed << "\n";
        return 1;
      }
      std::cerr << "verify: ok\n";
    } catch (const std::exception& e) {
      std::cerr << "verify: FAILED: " << e.what() << "\n";
      return 1;
    }
  }
  return code;
}
