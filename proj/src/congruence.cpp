#include "quasilab/congruence.hpp"

#include <algorithm>
#include <bitset>
#include <numeric>
#include <set>

#include "detail.hpp"
#include "quasilab/error.hpp"
#include "quasilab/morphisms.hpp"

namespace quasilab {

// ---- Congruence (plain equivalence relations) ----

std::size_t Congruence::num_blocks() const {
  std::size_t k = 0;
  for (std::size_t i = 0; i < block.size(); ++i) k += block[i] == i;
  return k;
}

bool Congruence::leq(const Congruence& other) const {
  for (std::size_t i = 0; i < block.size(); ++i)
    if (other.block[i] != other.block[block[i]]) return false;
  return true;
}

std::vector<std::vector<Elem>> Congruence::blocks() const {
  std::vector<std::vector<Elem>> out;
  std::vector<int> index(block.size(), -1);
  for (Elem i = 0; i < block.size(); ++i) {
    if (index[block[i]] < 0) {
      index[block[i]] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[index[block[i]]].push_back(i);
  }
  return out;
}

bool Congruence::least_pair(Elem& i, Elem& j) const {
  for (Elem b = 0; b < block.size(); ++b) {
    if (block[b] != b) continue;
    for (Elem k = b + 1; k < block.size(); ++k) {
      if (block[k] == b) {
        // The least pair overall has the smallest first member with a partner.
        i = b;
        j = k;
        return true;
      }
    }
  }
  return false;
}

Congruence Congruence::identity(std::size_t n) {
  Congruence c;
  c.block.resize(n);
  std::iota(c.block.begin(), c.block.end(), 0);
  return c;
}

Congruence Congruence::all(std::size_t n) {
  Congruence c;
  c.block.assign(n, 0);
  return c;
}

Congruence Congruence::from_labels(std::span<const Elem> labels) {
  Congruence c;
  c.block.resize(labels.size());
  std::vector<std::pair<Elem, Elem>> first;  // label -> least member
  for (Elem i = 0; i < labels.size(); ++i) {
    auto it = std::find_if(first.begin(), first.end(), [&](const auto& p) { return p.first == labels[i]; });
    if (it == first.end()) {
      first.push_back({labels[i], i});
      c.block[i] = i;
    } else {
      c.block[i] = it->second;
    }
  }
  return c;
}

Congruence kernel(std::span<const Elem> map) {
  Congruence c;
  c.block.resize(map.size());
  std::vector<Elem> least;
  Elem maxv = 0;
  for (Elem v : map) maxv = std::max(maxv, v);
  least.assign(static_cast<std::size_t>(maxv) + 1, UINT32_MAX);
  for (Elem i = 0; i < map.size(); ++i) {
    if (least[map[i]] == UINT32_MAX) least[map[i]] = i;
    c.block[i] = least[map[i]];
  }
  return c;
}

Congruence meet(const Congruence& a, const Congruence& b) {
  const auto n = a.size();
  std::vector<Elem> label(n);
  // Pair labels (a-block, b-block) packed into one key.
  std::vector<std::uint64_t> keys(n);
  for (std::size_t i = 0; i < n; ++i) keys[i] = (static_cast<std::uint64_t>(a.block[i]) << 32) | b.block[i];
  Congruence c;
  c.block.resize(n);
  std::vector<std::pair<std::uint64_t, Elem>> seen;
  seen.reserve(n);
  for (Elem i = 0; i < n; ++i) {
    // Block of i is the least j with the same key; j < i already labeled.
    Elem rep = i;
    if (a.block[i] != i) {
      for (Elem j = a.block[i]; j < i; ++j)
        if (keys[j] == keys[i]) {
          rep = j;
          break;
        }
    }
    c.block[i] = rep;
  }
  return c;
}

namespace {

struct UnionFind {
  std::vector<Elem> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  Elem find(Elem x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(Elem x, Elem y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (x < y) std::swap(x, y);
    parent[x] = y;
    return true;
  }
  Congruence to_congruence() {
    Congruence c;
    c.block.resize(parent.size());
    std::vector<Elem> least(parent.size(), UINT32_MAX);
    for (Elem i = 0; i < parent.size(); ++i) {
      Elem r = find(i);
      if (least[r] == UINT32_MAX) least[r] = i;
      c.block[i] = least[r];
    }
    return c;
  }
};

}  // namespace

Congruence equivalence_join(const Congruence& a, const Congruence& b) {
  UnionFind uf(a.size());
  for (Elem i = 0; i < a.size(); ++i) {
    uf.unite(i, a.block[i]);
    uf.unite(i, b.block[i]);
  }
  return uf.to_congruence();
}

bool is_compatible(const Algebra& a, const Congruence& c) {
  if (c.size() != a.size()) return false;
  const auto n = a.size();
  for (std::size_t k = 0; k < a.sig.size(); ++k) {
    const int ar = a.sig[k].arity;
    if (ar == 0) continue;
    std::vector<Elem> args(ar, 0), alt(ar);
    const auto total = checked_pow(n, ar, UINT64_MAX / 2);
    // Compatibility with single-coordinate changes suffices.
    for (std::uint64_t t = 0; t < total; ++t) {
      Elem base = c.block[a.apply(k, args.data())];
      for (int p = 0; p < ar; ++p) {
        if (c.block[args[p]] == args[p]) {
          alt = args;
          for (Elem y = args[p] + 1; y < n; ++y) {
            if (c.block[y] != args[p]) continue;
            alt[p] = y;
            if (c.block[a.apply(k, alt.data())] != base) return false;
          }
        }
      }
      for (int p = ar - 1; p >= 0; --p) {
        if (++args[p] < n) break;
        args[p] = 0;
      }
    }
  }
  return true;
}

json to_json(const Congruence& c) { return json(c.block); }

// ---- principal congruences ----

Congruence cg(const Algebra& a, std::span<const Pair> pairs) {
  const auto n = a.size();
  UnionFind uf(n);
  std::vector<Pair> work;
  for (auto [x, y] : pairs) {
    if (x >= n || y >= n) throw Error("pair outside the carrier");
    if (uf.unite(x, y)) work.push_back({x, y});
  }
  std::vector<Elem> args(static_cast<std::size_t>(std::max(1, a.sig.max_arity())));
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    for (std::size_t k = 0; k < a.sig.size(); ++k) {
      const int ar = a.sig[k].arity;
      for (int p = 0; p < ar; ++p) {
        // All tuples with x resp. y at position p.
        const auto others = checked_pow(n, ar - 1, UINT64_MAX / 2);
        std::vector<Elem> rest(ar - 1, 0);
        for (std::uint64_t t = 0; t < others; ++t) {
          for (int q = 0, r = 0; q < ar; ++q)
            if (q != p) args[q] = rest[r++];
          args[p] = x;
          Elem u = a.apply(k, args.data());
          args[p] = y;
          Elem v = a.apply(k, args.data());
          if (uf.unite(u, v)) work.push_back({u, v});
          for (int q = ar - 2; q >= 0; --q) {
            if (++rest[q] < n) break;
            rest[q] = 0;
          }
        }
      }
    }
  }
  return uf.to_congruence();
}

Congruence cg(const Algebra& a, Elem x, Elem y) {
  Pair p{x, y};
  return cg(a, std::span<const Pair>(&p, 1));
}

// ---- lattices ----

CongruenceLattice::CongruenceLattice(std::size_t algebra_size, std::vector<Congruence> members, bool relative)
    : n_(algebra_size), members_(std::move(members)), relative_(relative) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (members_.empty()) throw Error("empty congruence lattice");
  // Bottom is the meet of everything; it is a member of a meet-closed family.
  Congruence b = members_[0];
  for (const auto& c : members_) b = quasilab::meet(b, c);
  auto bi = find(b);
  auto ti = find(Congruence::all(n_));
  if (!bi || !ti) throw Error("congruence family is not a lattice");
  bottom_ = *bi;
  top_ = *ti;
}

std::optional<std::size_t> CongruenceLattice::find(const Congruence& c) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), c);
  if (it == members_.end() || !(*it == c)) return std::nullopt;
  return static_cast<std::size_t>(it - members_.begin());
}

bool CongruenceLattice::contains_identity() const { return find(Congruence::identity(n_)).has_value(); }

std::size_t CongruenceLattice::meet(std::size_t i, std::size_t j) const {
  auto r = find(quasilab::meet(members_[i], members_[j]));
  if (!r) throw Error("congruence family is not meet-closed");
  return *r;
}

std::size_t CongruenceLattice::join(std::size_t i, std::size_t j) const {
  if (!relative_) {
    auto r = find(equivalence_join(members_[i], members_[j]));
    if (r) return *r;
  }
  Congruence acc = Congruence::all(n_);
  for (const auto& c : members_)
    if (members_[i].leq(c) && members_[j].leq(c)) acc = quasilab::meet(acc, c);
  return *find(acc);
}

std::size_t CongruenceLattice::principal(Elem x, Elem y) const {
  Congruence acc = Congruence::all(n_);
  for (const auto& c : members_)
    if (c.related(x, y)) acc = quasilab::meet(acc, c);
  return *find(acc);
}

void CongruenceLattice::build_order() const {
  if (ordered_) return;
  const auto m = members_.size();
  up_.assign(m, {});
  down_.assign(m, {});
  std::vector<std::vector<char>> lt(m, std::vector<char>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j && members_[i].leq(members_[j])) lt[i][j] = 1;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (!lt[i][j]) continue;
      bool cover = true;
      for (std::size_t k = 0; k < m && cover; ++k)
        if (lt[i][k] && lt[k][j]) cover = false;
      if (cover) {
        up_[i].push_back(j);
        down_[j].push_back(i);
      }
    }
  }
  ordered_ = true;
}

const std::vector<std::size_t>& CongruenceLattice::upper_covers(std::size_t i) const {
  build_order();
  return up_[i];
}

const std::vector<std::size_t>& CongruenceLattice::lower_covers(std::size_t i) const {
  build_order();
  return down_[i];
}

bool CongruenceLattice::atom(std::size_t i) const {
  const auto& d = lower_covers(i);
  return d.size() == 1 && d[0] == bottom_;
}

bool CongruenceLattice::distributive(std::size_t* x, std::size_t* y, std::size_t* z) const {
  const auto m = members_.size();
  std::vector<std::size_t> jt(m * m), mt(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      jt[i * m + j] = jt[j * m + i] = join(i, j);
      mt[i * m + j] = mt[j * m + i] = meet(i, j);
    }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        std::size_t lhs = mt[i * m + jt[j * m + k]];
        std::size_t rhs = jt[mt[i * m + j] * m + mt[i * m + k]];
        if (lhs != rhs) {
          if (x) *x = i;
          if (y) *y = j;
          if (z) *z = k;
          return false;
        }
      }
  return true;
}

json CongruenceLattice::to_json() const {
  json nodes = json::array();
  for (std::size_t i = 0; i < members_.size(); ++i) {
    nodes.push_back({{"blocks", quasilab::to_json(members_[i])},
                     {"meet_irreducible", meet_irreducible(i)},
                     {"atom", atom(i)},
                     {"upper_covers", upper_covers(i)}});
  }
  return {{"relative", relative_}, {"size", members_.size()}, {"bottom", bottom_}, {"top", top_}, {"nodes", nodes}};
}

namespace {

std::vector<Congruence> close_under(std::vector<Congruence> gens, bool use_join, std::size_t n, std::size_t cap) {
  std::set<Congruence> seen(gens.begin(), gens.end());
  std::vector<Congruence> all(seen.begin(), seen.end());
  std::vector<Congruence> base = all;
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = 0; j < base.size(); ++j) {
      Congruence c = use_join ? equivalence_join(all[i], base[j]) : meet(all[i], base[j]);
      if (seen.insert(c).second) {
        all.push_back(c);
        if (all.size() > cap) throw BudgetExceeded("lattice_size", cap);
      }
    }
  }
  (void)n;
  return all;
}

}  // namespace

CongruenceLattice con_all(const Algebra& a, const Budget& budget) {
  const auto n = a.size();
  std::set<Congruence> principals;
  for (Elem i = 0; i < n; ++i)
    for (Elem j = i + 1; j < n; ++j) principals.insert(cg(a, i, j));
  std::vector<Congruence> gens(principals.begin(), principals.end());
  gens.push_back(Congruence::identity(n));
  gens.push_back(Congruence::all(n));
  return CongruenceLattice(n, close_under(gens, true, n, budget.lattice_size), false);
}

std::vector<Congruence> hom_kernels(const Algebra& a, const std::vector<Algebra>& K, const Budget& budget) {
  std::set<Congruence> ks;
  for (const auto& b : K) {
    HomSearch s(a, b, {}, budget);
    if (s.run([&](const HomMap& h) {
          ks.insert(kernel(h));
          return true;
        }) == SearchStatus::budget)
      throw BudgetExceeded("hom_nodes", budget.hom_nodes);
  }
  return {ks.begin(), ks.end()};
}

CongruenceLattice con_q(const Algebra& a, const std::vector<Algebra>& K, const Budget& budget) {
  auto gens = hom_kernels(a, K, budget);
  gens.push_back(Congruence::all(a.size()));
  return CongruenceLattice(a.size(), close_under(gens, false, a.size(), budget.lattice_size), true);
}

bool in_isp(const Algebra& a, const std::vector<Algebra>& K, const Budget& budget) {
  Congruence acc = Congruence::all(a.size());
  for (const auto& k : hom_kernels(a, K, budget)) acc = meet(acc, k);
  return acc.is_identity();
}

Report q_irreducible(const Algebra& a, const std::vector<Algebra>& K, const Budget& budget) {
  Report r;
  r.question = "q_irreducible";
  r.inputs = {{"algebra", a.name}, {"K", detail::names_of(K)}};
  try {
    auto L = con_q(a, K, budget);
    if (!L.contains_identity()) throw PreconditionError("not a Q-member: '" + a.name + "' is not in ISP(K)");
    if (a.size() == 1) {
      r.answer = Answer::no;
      r.witness = {{"reason", "trivial algebra"}};
      return r;
    }
    const auto delta = *L.find(Congruence::identity(a.size()));
    Congruence mu = Congruence::all(a.size());
    std::vector<std::size_t> minimal;
    for (std::size_t i = 0; i < L.size(); ++i) {
      if (i == delta) continue;
      mu = meet(mu, L[i]);
    }
    if (mu.is_identity()) {
      r.answer = Answer::no;
      json atoms = json::array();
      for (std::size_t i = 0; i < L.size(); ++i)
        if (L.atom(i)) atoms.push_back(to_json(L[i]));
      r.witness = {{"atoms", atoms}};
      return r;
    }
    Elem x = 0, y = 0;
    mu.least_pair(x, y);
    r.answer = Answer::yes;
    r.witness = {{"monolith", to_json(mu)}, {"pair", {x, y}}};
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

Congruence max_separating_congruence(const Algebra& a, std::span<const Elem> sub, const std::vector<Algebra>& K,
                                     const Budget& budget) {
  std::vector<Elem> s(sub.begin(), sub.end());
  if (generated_subalgebra(a, s).size() != std::set<Elem>(s.begin(), s.end()).size())
    throw PreconditionError("carrier is not a subuniverse");
  auto L = con_q(a, K, budget);
  std::vector<std::size_t> cands;
  for (std::size_t i = 0; i < L.size(); ++i) {
    bool sep = true;
    for (std::size_t p = 0; p < s.size() && sep; ++p)
      for (std::size_t q = p + 1; q < s.size() && sep; ++q)
        if (s[p] != s[q] && L[i].related(s[p], s[q])) sep = false;
    if (sep) cands.push_back(i);
  }
  if (cands.empty()) throw PreconditionError("no separating Q-congruence");
  // Members are sorted, so the first maximal candidate is the least one.
  for (std::size_t i : cands) {
    bool maximal = true;
    for (std::size_t j : cands)
      if (j != i && L.leq(i, j)) maximal = false;
    if (maximal) return L[i];
  }
  return L[cands[0]];
}

Congruence gamma_pseudocomplement(const Algebra& a, const std::vector<Algebra>& K, Pair pair, const Budget& budget) {
  auto L = con_q(a, K, budget);
  if (!L.distributive()) throw PreconditionError("not relatively congruence distributive");
  Congruence g = Congruence::all(a.size());
  for (std::size_t i = 0; i < L.size(); ++i)
    if (L.meet_irreducible(i) && !L[i].related(pair.first, pair.second)) g = meet(g, L[i]);
  const auto gi = *L.find(g);
  const auto ci = L.principal(pair.first, pair.second);
  if (L.meet(gi, ci) != L.bottom()) throw PreconditionError("not relatively congruence distributive");
  for (std::size_t i = 0; i < L.size(); ++i)
    if (L.meet(i, ci) == L.bottom() && !L.leq(i, gi))
      throw PreconditionError("not relatively congruence distributive");
  return g;
}

Report is_filtral(const std::vector<Algebra>& factors, const std::vector<std::vector<Elem>>& coords,
                  const Congruence& theta) {
  Report r;
  r.question = "filtral";
  r.assumptions.push_back(kImproperFilter);
  const auto m = factors.size();
  if (m > 16) throw PreconditionError("too many factors for filter enumeration");
  if (theta.size() != coords.size()) throw Error("congruence size does not match the subdirect product");
  for (const auto& c : coords) {
    if (c.size() != m) throw Error("coordinate tuple of the wrong length");
    for (std::size_t i = 0; i < m; ++i)
      if (c[i] >= factors[i].size()) throw Error("coordinate out of range");
  }
  r.inputs = {{"factors", detail::names_of(factors)}, {"theta", to_json(theta)}};
  json tried = json::array();
  for (std::uint32_t S = 0; S < (1u << m); ++S) {
    std::vector<Elem> labels(coords.size());
    // theta_S relates tuples that agree on every index in S.
    std::vector<std::vector<Elem>> keys;
    for (std::size_t e = 0; e < coords.size(); ++e) {
      std::vector<Elem> key;
      for (std::size_t i = 0; i < m; ++i)
        if (S >> i & 1) key.push_back(coords[e][i]);
      auto it = std::find(keys.begin(), keys.end(), key);
      if (it == keys.end()) {
        labels[e] = static_cast<Elem>(keys.size());
        keys.push_back(key);
      } else {
        labels[e] = static_cast<Elem>(it - keys.begin());
      }
    }
    std::vector<std::size_t> gen;
    for (std::size_t i = 0; i < m; ++i)
      if (S >> i & 1) gen.push_back(i);
    if (Congruence::from_labels(labels) == theta) {
      r.answer = Answer::yes;
      r.witness = {{"filter_generator", gen}, {"proper", S != 0}};
      if (S == 0) r.note = "induced by the improper filter";
      return r;
    }
  }
  r.answer = Answer::no;
  r.witness = {{"filters_checked", 1u << m}};
  return r;
}

namespace {

using Rel = std::vector<std::vector<std::uint64_t>>;

Rel relation_of(const Congruence& c) {
  const auto n = c.size();
  Rel r(n, std::vector<std::uint64_t>((n + 63) / 64, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (c.related(static_cast<Elem>(i), static_cast<Elem>(j))) r[i][j / 64] |= 1ULL << (j % 64);
  return r;
}

Rel compose(const Rel& a, const Rel& b) {
  const auto n = a.size();
  Rel out(n, std::vector<std::uint64_t>(a.empty() ? 0 : a[0].size(), 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k / 64] >> (k % 64) & 1)
        for (std::size_t w = 0; w < out[i].size(); ++w) out[i][w] |= b[k][w];
  return out;
}

}  // namespace

Report three_permute(const Algebra& a, const std::vector<Algebra>& K, const Budget& budget) {
  Report r;
  r.question = "three_permute";
  r.inputs = {{"algebra", a.name}, {"K", detail::names_of(K)}};
  try {
    auto L = K.empty() ? con_all(a, budget) : con_q(a, K, budget);
    std::vector<Rel> rel;
    for (const auto& c : L.members()) rel.push_back(relation_of(c));
    for (std::size_t i = 0; i < L.size(); ++i)
      for (std::size_t j = 0; j < L.size(); ++j) {
        auto comp = compose(compose(rel[i], rel[j]), rel[i]);
        const auto& jn = rel[L.join(i, j)];
        for (std::size_t x = 0; x < a.size(); ++x)
          if (comp[x] != jn[x]) {
            for (std::size_t y = 0; y < a.size(); ++y)
              if ((jn[x][y / 64] >> (y % 64) & 1) && !(comp[x][y / 64] >> (y % 64) & 1)) {
                r.answer = Answer::no;
                r.witness = {{"theta", to_json(L[i])}, {"phi", to_json(L[j])}, {"pair", {x, y}}};
                return r;
              }
          }
      }
    r.answer = Answer::yes;
    r.witness = {{"lattice_size", L.size()}};
  } catch (const BudgetExceeded& e) {
    return budget_report(r, e);
  }
  return r;
}

}  // namespace quasilab
