#include "quasilab/morphisms.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

#include "quasilab/error.hpp"
#include "detail.hpp"

namespace quasilab {

namespace {

void require_same_signature(const Algebra& a, const Algebra& b) {
  if (!(a.sig == b.sig)) throw PreconditionError("signature mismatch between '" + a.name + "' and '" + b.name + "'");
}

struct Closure {
  const Algebra& a;
  std::vector<char> in;
  std::vector<Elem> order;
  std::size_t done = 0;

  explicit Closure(const Algebra& alg) : a(alg), in(alg.size(), 0) {}

  template <class OnNew>
  void add(Elem e, OnNew&& on_new, int op = -1, const Elem* args = nullptr, int ar = 0) {
    if (in[e]) return;
    in[e] = 1;
    order.push_back(e);
    on_new(e, op, args, ar);
  }

  template <class OnNew>
  void add_constants(OnNew&& on_new) {
    for (std::size_t k = 0; k < a.sig.size(); ++k)
      if (a.sig[k].arity == 0) add(a.tables[k][0], on_new, static_cast<int>(k));
  }

  template <class OnNew>
  void close(OnNew&& on_new) {
    std::vector<Elem> args(static_cast<std::size_t>(std::max(1, a.sig.max_arity())));
    while (done < order.size()) {
      const std::size_t m0 = done, m1 = order.size();
      for (std::size_t k = 0; k < a.sig.size(); ++k) {
        const int ar = a.sig[k].arity;
        detail::for_each_new_tuple(ar, m0, m1, [&](const std::uint32_t* idx) {
          for (int p = 0; p < ar; ++p) args[p] = order[idx[p]];
          Elem r = a.apply(k, args.data());
          if (!in[r]) add(r, on_new, static_cast<int>(k), args.data(), ar);
        });
      }
      done = m1;
    }
  }
};

auto ignore_new = [](Elem, int, const Elem*, int) {};

}  // namespace

HomSearch::HomSearch(const Algebra& a, const Algebra& b, HomOptions opts, const Budget& budget)
    : a_(a), b_(b), opts_(std::move(opts)), node_cap_(budget.hom_nodes) {
  require_same_signature(a, b);
  const auto n = a.size();
  rank_.assign(n, -1);
  map_.assign(n, 0);
  mapped_.assign(n, 0);
  used_.assign(b.size(), 0);

  Closure cl(a);
  std::vector<Recipe>* sink = &base_;
  std::vector<Elem>* fresh = &base_elems_;
  auto record = [&](Elem e, int op, const Elem* args, int ar) {
    sink->push_back({e, op, std::vector<Elem>(args, args + ar)});
    fresh->push_back(e);
  };
  cl.add_constants(record);
  cl.close(record);
  for (Elem e : base_elems_) rank_[e] = 0;

  while (cl.order.size() < n) {
    Elem g = 0;
    if (n <= 64) {
      // Greedy: the element whose closure adds the most.
      std::size_t best = 0;
      for (Elem e = 0; e < n; ++e) {
        if (cl.in[e]) continue;
        Closure probe = cl;
        probe.add(e, ignore_new);
        probe.close(ignore_new);
        if (probe.order.size() > best) {
          best = probe.order.size();
          g = e;
        }
      }
    } else {
      while (cl.in[g]) ++g;
    }
    levels_.push_back({g, {}, {g}});
    Level& lv = levels_.back();
    sink = &lv.derived;
    fresh = &lv.fresh;
    cl.in[g] = 1;
    cl.order.push_back(g);
    cl.close(record);
    for (Elem e : lv.fresh) rank_[e] = static_cast<int>(levels_.size());
  }
}

bool HomSearch::image_ok(Elem e, Elem v) const {
  if (!opts_.allowed.empty() && !opts_.allowed[e][v]) return false;
  if (opts_.filter == HomFilter::injective && used_[v] != 0) return false;
  return true;
}

bool HomSearch::check_level(const std::vector<Elem>& fresh) {
  // Mapped elements in mapping order: everything of lower rank, then fresh.
  std::vector<Elem> order;
  order.reserve(a_.size());
  for (Elem e = 0; e < a_.size(); ++e)
    if (mapped_[e] && std::find(fresh.begin(), fresh.end(), e) == fresh.end()) order.push_back(e);
  const std::size_t m0 = order.size();
  order.insert(order.end(), fresh.begin(), fresh.end());
  const std::size_t m1 = order.size();
  std::vector<Elem> args(static_cast<std::size_t>(std::max(1, a_.sig.max_arity())));
  std::vector<Elem> imgs(args.size());
  bool ok = true;
  for (std::size_t k = 0; k < a_.sig.size() && ok; ++k) {
    const int ar = a_.sig[k].arity;
    if (ar == 0) {
      Elem c = a_.tables[k][0];
      if (mapped_[c] && std::find(fresh.begin(), fresh.end(), c) != fresh.end())
        ok = map_[c] == b_.tables[k][0];
      continue;
    }
    detail::for_each_new_tuple(ar, m0, m1, [&](const std::uint32_t* idx) {
      if (!ok) return;
      for (int p = 0; p < ar; ++p) {
        args[p] = order[idx[p]];
        imgs[p] = map_[args[p]];
      }
      Elem r = a_.apply(k, args.data());
      if (map_[r] != b_.apply(k, imgs.data())) ok = false;
    });
  }
  if (ok && opts_.filter == HomFilter::separating) {
    auto [x, y] = opts_.pair;
    if (mapped_[x] && mapped_[y] && map_[x] == map_[y]) ok = false;
  }
  if (ok && opts_.filter == HomFilter::surjective) {
    std::size_t unmapped = 0, unused = 0;
    for (Elem e = 0; e < a_.size(); ++e) unmapped += !mapped_[e];
    for (Elem v = 0; v < b_.size(); ++v) unused += used_[v] == 0;
    if (unused > unmapped) ok = false;
  }
  return ok;
}

void HomSearch::undo(const std::vector<Elem>& fresh) {
  for (Elem e : fresh) {
    if (!mapped_[e]) continue;
    mapped_[e] = 0;
    --used_[map_[e]];
  }
}

bool HomSearch::assign_fresh(const Level& lv, std::size_t) {
  for (const auto& r : lv.derived) {
    std::vector<Elem> imgs(r.args.size());
    for (std::size_t p = 0; p < r.args.size(); ++p) imgs[p] = map_[r.args[p]];
    Elem v = r.args.empty() ? b_.tables[r.op][0] : b_.apply(r.op, imgs.data());
    if (!image_ok(r.elem, v)) return false;
    map_[r.elem] = v;
    mapped_[r.elem] = 1;
    ++used_[v];
  }
  return true;
}

bool HomSearch::extend(std::size_t level, const std::function<bool(const HomMap&)>& visit) {
  if (level == levels_.size()) {
    if (opts_.filter == HomFilter::surjective)
      for (Elem v = 0; v < b_.size(); ++v)
        if (used_[v] == 0) return true;
    if (opts_.filter == HomFilter::separating && map_[opts_.pair.first] == map_[opts_.pair.second]) return true;
    if (!visit(map_)) {
      stopped_ = true;
      return false;
    }
    return true;
  }
  const Level& lv = levels_[level];
  const Elem g = lv.generator;
  for (Elem v = 0; v < b_.size(); ++v) {
    if (++nodes_ > node_cap_) {
      out_of_budget_ = true;
      return false;
    }
    if (!image_ok(g, v)) continue;
    map_[g] = v;
    mapped_[g] = 1;
    ++used_[v];
    bool ok = assign_fresh(lv, 0) && check_level(lv.fresh);
    bool go_on = true;
    if (ok) go_on = extend(level + 1, visit);
    undo(lv.fresh);
    if (!go_on) return false;
  }
  return true;
}

SearchStatus HomSearch::run(const std::function<bool(const HomMap&)>& visit) {
  nodes_ = 0;
  out_of_budget_ = stopped_ = false;
  std::fill(mapped_.begin(), mapped_.end(), 0);
  std::fill(used_.begin(), used_.end(), 0);
  Level base{0, base_, base_elems_};
  bool ok = assign_fresh(base, 0) && check_level(base_elems_);
  if (ok) extend(0, visit);
  undo(base_elems_);
  if (out_of_budget_) return SearchStatus::budget;
  if (stopped_) return SearchStatus::stopped;
  return SearchStatus::complete;
}

bool is_homomorphism(const Algebra& a, const Algebra& b, std::span<const Elem> map) {
  if (!(a.sig == b.sig) || map.size() != a.size()) return false;
  for (Elem v : map)
    if (v >= b.size()) return false;
  const auto n = a.size();
  for (std::size_t k = 0; k < a.sig.size(); ++k) {
    const int ar = a.sig[k].arity;
    std::vector<Elem> args(ar, 0), imgs(ar, 0);
    const auto total = checked_pow(n, ar, UINT64_MAX / 2);
    for (std::uint64_t t = 0; t < total; ++t) {
      for (int p = 0; p < ar; ++p) imgs[p] = map[args[p]];
      if (map[a.apply(k, args.data())] != b.apply(k, imgs.data())) return false;
      for (int p = ar - 1; p >= 0; --p) {
        if (++args[p] < n) break;
        args[p] = 0;
      }
    }
  }
  return true;
}

std::vector<HomMap> homs(const Algebra& a, const Algebra& b, const HomOptions& opts, const Budget& budget) {
  std::vector<HomMap> out;
  HomSearch s(a, b, opts, budget);
  if (s.run([&](const HomMap& h) {
        out.push_back(h);
        return true;
      }) == SearchStatus::budget)
    throw BudgetExceeded("hom_nodes", budget.hom_nodes);
  return out;
}

std::optional<HomMap> find_hom(const Algebra& a, const Algebra& b, const HomOptions& opts, const Budget& budget) {
  std::optional<HomMap> out;
  HomSearch s(a, b, opts, budget);
  if (s.run([&](const HomMap& h) {
        out = h;
        return false;
      }) == SearchStatus::budget)
    throw BudgetExceeded("hom_nodes", budget.hom_nodes);
  return out;
}

bool homs_separate_points(const Algebra& a, const Algebra& b, std::pair<Elem, Elem>* pair, const Budget& budget) {
  const auto n = a.size();
  std::vector<char> separated(n * n, 0);
  auto mark = [&](const HomMap& h) {
    for (Elem i = 0; i < n; ++i)
      for (Elem j = i + 1; j < n; ++j)
        if (h[i] != h[j]) separated[i * n + j] = 1;
  };
  for (Elem i = 0; i < n; ++i) {
    for (Elem j = i + 1; j < n; ++j) {
      if (separated[i * n + j]) continue;
      HomOptions o;
      o.filter = HomFilter::separating;
      o.pair = {i, j};
      auto h = find_hom(a, b, o, budget);
      if (!h) {
        if (pair) *pair = {i, j};
        return false;
      }
      mark(*h);
    }
  }
  return true;
}

json hom_to_json(std::span<const Elem> map) { return json{{"map", std::vector<Elem>(map.begin(), map.end())}}; }

Report embeds(const Algebra& b, const Algebra& a, const Budget& budget) {
  Report r;
  r.question = "embeds";
  r.inputs = {{"source", b.name}, {"target", a.name}};
  require_same_signature(a, b);
  if (b.size() > a.size()) {
    r.answer = Answer::no;
    r.witness = {{"reason", "source larger than target"}};
    return r;
  }
  try {
    HomOptions o;
    o.filter = HomFilter::injective;
    if (auto h = find_hom(b, a, o, budget)) {
      r.answer = Answer::yes;
      r.witness = hom_to_json(*h);
    } else {
      r.answer = Answer::no;
      r.witness = {{"reason", "exhaustive search found no injective homomorphism"}};
    }
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

std::vector<std::uint64_t> element_invariants(const Algebra& a) {
  const auto n = a.size();
  std::vector<std::uint64_t> inv(n, 0x51ed270b27a3d2f1ULL);
  for (std::size_t k = 0; k < a.sig.size(); ++k) {
    const int ar = a.sig[k].arity;
    const auto& t = a.tables[k];
    std::vector<std::uint64_t> pre(n, 0);
    for (Elem v : t) ++pre[v];
    for (Elem e = 0; e < n; ++e) {
      std::uint64_t h = detail::mix64(inv[e], k * 131 + static_cast<std::uint64_t>(ar));
      h = detail::mix64(h, pre[e]);
      if (ar == 0) {
        h = detail::mix64(h, t[0] == e);
      } else if (ar == 1) {
        std::vector<int> seen(n, -1);
        Elem x = e;
        int step = 0;
        while (seen[x] < 0) {
          seen[x] = step++;
          x = t[x];
        }
        h = detail::mix64(h, static_cast<std::uint64_t>(seen[x]));
        h = detail::mix64(h, static_cast<std::uint64_t>(step - seen[x]));
      } else if (ar == 2) {
        h = detail::mix64(h, t[e * n + e] == e);
        std::vector<std::uint64_t> row(n, 0), col(n, 0);
        std::uint64_t fix_r = 0, fix_c = 0, abs_r = 0, abs_c = 0;
        for (Elem y = 0; y < n; ++y) {
          ++row[t[e * n + y]];
          ++col[t[y * n + e]];
          fix_r += t[e * n + y] == y;
          fix_c += t[y * n + e] == y;
          abs_r += t[e * n + y] == e;
          abs_c += t[y * n + e] == e;
        }
        std::sort(row.begin(), row.end());
        std::sort(col.begin(), col.end());
        for (auto c : row) h = detail::mix64(h, c);
        for (auto c : col) h = detail::mix64(h, c + 7);
        h = detail::mix64(detail::mix64(detail::mix64(detail::mix64(h, fix_r), fix_c), abs_r), abs_c);
      } else {
        std::vector<Elem> diag(ar, e);
        h = detail::mix64(h, a.apply(k, diag.data()) == e);
      }
      inv[e] = h;
    }
  }
  return inv;
}

Report isomorphic(const Algebra& a, const Algebra& b, const Budget& budget) {
  Report r;
  r.question = "isomorphic";
  r.inputs = {{"a", a.name}, {"b", b.name}};
  require_same_signature(a, b);
  if (a.size() != b.size()) {
    r.answer = Answer::no;
    r.witness = {{"reason", "different sizes"}};
    return r;
  }
  auto ia = element_invariants(a), ib = element_invariants(b);
  auto sa = ia, sb = ib;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) {
    r.answer = Answer::no;
    r.witness = {{"reason", "element invariants differ"}};
    return r;
  }
  HomOptions o;
  o.filter = HomFilter::injective;
  o.allowed.assign(a.size(), std::vector<char>(b.size(), 0));
  for (Elem i = 0; i < a.size(); ++i)
    for (Elem j = 0; j < b.size(); ++j) o.allowed[i][j] = ia[i] == ib[j];
  try {
    if (auto h = find_hom(a, b, o, budget)) {
      r.answer = Answer::yes;
      r.witness = hom_to_json(*h);
    } else {
      r.answer = Answer::no;
      r.witness = {{"reason", "no invariant-respecting bijective homomorphism"}};
    }
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

Report retracts(const Algebra& a, const Algebra& b, const Budget& budget) {
  Report r;
  r.question = "retracts";
  r.inputs = {{"algebra", a.name}, {"onto", b.name}};
  require_same_signature(a, b);
  try {
    HomOptions inj;
    inj.filter = HomFilter::injective;
    std::optional<std::pair<HomMap, HomMap>> found;
    HomSearch sections(b, a, inj, budget);
    auto st = sections.run([&](const HomMap& h) {
      HomOptions o;
      o.allowed.assign(a.size(), std::vector<char>(b.size(), 1));
      for (Elem y = 0; y < b.size(); ++y) {
        std::fill(o.allowed[h[y]].begin(), o.allowed[h[y]].end(), 0);
        o.allowed[h[y]][y] = 1;
      }
      if (auto g = find_hom(a, b, o, budget)) {
        found = std::make_pair(*g, h);
        return false;
      }
      return true;
    });
    if (st == SearchStatus::budget) throw BudgetExceeded("hom_nodes", budget.hom_nodes);
    if (found) {
      r.answer = Answer::yes;
      r.witness = {{"surjection", found->first}, {"section", found->second}};
    } else {
      r.answer = Answer::no;
      r.witness = {{"reason", "no embedding of the target admits a left-inverse homomorphism"}};
    }
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

Product product(const std::vector<Algebra>& factors, const Budget& budget) {
  if (factors.empty()) throw Error("product of an empty family");
  for (const auto& f : factors) require_same_signature(factors[0], f);
  std::uint64_t n = 1;
  for (const auto& f : factors) {
    n *= f.size();
    if (n > budget.product_size) throw BudgetExceeded("product_size", budget.product_size);
  }
  Product p;
  p.algebra.sig = factors[0].sig;
  p.algebra.name = factors[0].name;
  for (std::size_t i = 1; i < factors.size(); ++i) p.algebra.name += "x" + factors[i].name;
  const std::size_t m = factors.size();
  std::vector<Elem> tuple(m, 0);
  for (std::uint64_t e = 0; e < n; ++e) {
    p.coords.push_back(tuple);
    std::string label = "(";
    for (std::size_t i = 0; i < m; ++i) label += (i ? "," : "") + factors[i].labels[tuple[i]];
    p.algebra.labels.push_back(label + ")");
    for (int i = static_cast<int>(m) - 1; i >= 0; --i) {
      if (++tuple[i] < factors[i].size()) break;
      tuple[i] = 0;
    }
  }
  auto index_of = [&](const std::vector<Elem>& t) {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < m; ++i) idx = idx * factors[i].size() + t[i];
    return static_cast<Elem>(idx);
  };
  for (std::size_t k = 0; k < p.algebra.sig.size(); ++k) {
    const int ar = p.algebra.sig[k].arity;
    const auto total = checked_pow(n, ar, budget.table_entries);
    if (total > budget.table_entries) throw BudgetExceeded("table_entries", budget.table_entries);
    std::vector<Elem> table(total);
    std::vector<Elem> args(ar, 0), comp(ar), out(m);
    for (std::uint64_t t = 0; t < total; ++t) {
      for (std::size_t i = 0; i < m; ++i) {
        for (int q = 0; q < ar; ++q) comp[q] = p.coords[args[q]][i];
        out[i] = factors[i].apply(k, comp.data());
      }
      table[t] = index_of(out);
      for (int q = ar - 1; q >= 0; --q) {
        if (++args[q] < n) break;
        args[q] = 0;
      }
    }
    p.algebra.tables.push_back(std::move(table));
  }
  return p;
}

Quotient quotient(const Algebra& a, const Congruence& c, bool check) {
  if (c.size() != a.size()) throw Error("congruence size does not match algebra");
  if (check && !is_compatible(a, c)) throw PreconditionError("partition is not a congruence of '" + a.name + "'");
  Quotient q;
  q.map.assign(a.size(), 0);
  std::vector<Elem> reps;
  std::vector<Elem> index(a.size(), 0);
  for (Elem e = 0; e < a.size(); ++e) {
    if (c.block[e] == e) {
      index[e] = static_cast<Elem>(reps.size());
      reps.push_back(e);
    }
    q.map[e] = index[c.block[e]];
  }
  q.algebra.name = a.name + "_q";
  q.algebra.sig = a.sig;
  for (Elem r : reps) q.algebra.labels.push_back(a.labels[r]);
  const auto m = reps.size();
  for (std::size_t k = 0; k < a.sig.size(); ++k) {
    const int ar = a.sig[k].arity;
    const auto total = checked_pow(m, ar, UINT64_MAX / 2);
    std::vector<Elem> table(total), args(ar, 0), orig(ar);
    for (std::uint64_t t = 0; t < total; ++t) {
      for (int p = 0; p < ar; ++p) orig[p] = reps[args[p]];
      table[t] = q.map[a.apply(k, orig.data())];
      for (int p = ar - 1; p >= 0; --p) {
        if (++args[p] < m) break;
        args[p] = 0;
      }
    }
    q.algebra.tables.push_back(std::move(table));
  }
  return q;
}

std::vector<Elem> generated_subalgebra(const Algebra& a, std::span<const Elem> seeds) {
  Closure cl(a);
  cl.add_constants(ignore_new);
  for (Elem s : seeds) {
    if (s >= a.size()) throw Error("seed out of range");
    cl.add(s, ignore_new);
  }
  cl.close(ignore_new);
  std::vector<Elem> out = cl.order;
  std::sort(out.begin(), out.end());
  return out;
}

Subalgebra subalgebra(const Algebra& a, std::span<const Elem> carrier) {
  std::vector<Elem> c(carrier.begin(), carrier.end());
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  if (c.empty()) throw Error("empty subalgebra carrier");
  std::vector<int> index(a.size(), -1);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] >= a.size()) throw Error("carrier element out of range");
    index[c[i]] = static_cast<int>(i);
  }
  Subalgebra s;
  s.carrier = c;
  s.algebra.name = a.name + "_sub";
  s.algebra.sig = a.sig;
  for (Elem e : c) s.algebra.labels.push_back(a.labels[e]);
  const auto m = c.size();
  for (std::size_t k = 0; k < a.sig.size(); ++k) {
    const int ar = a.sig[k].arity;
    const auto total = checked_pow(m, ar, UINT64_MAX / 2);
    std::vector<Elem> table(total), args(ar, 0), orig(ar);
    for (std::uint64_t t = 0; t < total; ++t) {
      for (int p = 0; p < ar; ++p) orig[p] = c[args[p]];
      int v = index[a.apply(k, orig.data())];
      if (v < 0) throw Error("carrier is not closed under op '" + a.sig[k].name + "'");
      table[t] = static_cast<Elem>(v);
      for (int p = ar - 1; p >= 0; --p) {
        if (++args[p] < m) break;
        args[p] = 0;
      }
    }
    s.algebra.tables.push_back(std::move(table));
  }
  return s;
}

std::size_t min_generators(const Algebra& a, std::vector<Elem>* witness) {
  const auto n = a.size();
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<Elem> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      if (generated_subalgebra(a, pick).size() == n) {
        if (witness) *witness = pick;
        return k;
      }
      int i = static_cast<int>(k) - 1;
      while (i >= 0 && pick[i] == n - k + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (std::size_t j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return n;
}

SubalgebraList subalgebras_upto_iso(const Algebra& a, const Budget& budget) {
  if (a.size() > budget.subalgebra_size) throw BudgetExceeded("subalgebra_size", budget.subalgebra_size);
  const auto n = a.size();
  std::set<std::vector<Elem>> seen;
  std::vector<std::vector<Elem>> queue;
  auto push = [&](std::vector<Elem> s) {
    if (s.empty()) return;
    if (seen.insert(s).second) queue.push_back(std::move(s));
  };
  push(generated_subalgebra(a, {}));
  for (Elem e = 0; e < n; ++e) push(generated_subalgebra(a, std::vector<Elem>{e}));
  for (std::size_t i = 0; i < queue.size(); ++i) {
    auto s = queue[i];
    std::vector<char> in(n, 0);
    for (Elem e : s) in[e] = 1;
    for (Elem e = 0; e < n; ++e) {
      if (in[e]) continue;
      auto t = s;
      t.push_back(e);
      push(generated_subalgebra(a, t));
    }
  }
  std::vector<std::vector<Elem>> all(seen.begin(), seen.end());
  std::stable_sort(all.begin(), all.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() > y.size();
    return x < y;
  });
  struct Rep {
    std::vector<Elem> carrier;
    Algebra alg;
    std::uint64_t inv;
  };
  std::vector<Rep> reps;
  std::map<std::pair<std::size_t, std::uint64_t>, int> class_count;
  SubalgebraList out;
  for (const auto& c : all) {
    Subalgebra sa = subalgebra(a, c);
    auto inv = element_invariants(sa.algebra);
    std::sort(inv.begin(), inv.end());
    std::uint64_t h = 0;
    for (auto v : inv) h = detail::mix64(h, v);
    bool dup = false;
    for (const auto& r : reps) {
      if (r.carrier.size() != c.size() || r.inv != h) continue;
      if (isomorphic(r.alg, sa.algebra, budget).yes()) {
        dup = true;
        break;
      }
    }
    if (dup) continue;
    int k = class_count[{c.size(), h}]++;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    out.entries.push_back({c, std::to_string(c.size()) + ":" + buf + ":" + std::to_string(k)});
    reps.push_back({c, std::move(sa.algebra), h});
  }
  return out;
}

}  // namespace quasilab
