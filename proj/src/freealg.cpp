#include "quasilab/freealg.hpp"

#include <algorithm>
#include <cstring>

#include "detail.hpp"
#include "quasilab/error.hpp"

namespace quasilab {

// Element vectors live in one flat word array. With at most 64 coordinates
// and small members an element is stored as one bit mask per value
// ("value v at coordinate c" = bit c of word v), which turns an op
// application into a few AND/OR operations per argument tuple of values.
// Otherwise each coordinate takes one byte.
struct FreeAlgebra::Store {
  bool masks = false;
  std::size_t coords = 0;
  std::size_t width = 0;  // words per element
  std::size_t values = 0;  // mask mode: number of value words
  std::vector<std::uint64_t> data;
  std::vector<std::uint32_t> slots;
  std::size_t count = 0;

  const std::uint64_t* get(std::size_t i) const { return data.data() + i * width; }

  std::uint64_t hash(const std::uint64_t* w) const {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (std::size_t i = 0; i < width; ++i) h = detail::mix64(h, w[i]);
    return h;
  }

  std::optional<std::uint32_t> find(const std::uint64_t* w) const {
    if (slots.empty()) return std::nullopt;
    const std::size_t mask = slots.size() - 1;
    for (std::size_t s = hash(w) & mask;; s = (s + 1) & mask) {
      if (slots[s] == UINT32_MAX) return std::nullopt;
      if (std::memcmp(get(slots[s]), w, width * 8) == 0) return slots[s];
    }
  }

  void rehash(std::size_t cap) {
    slots.assign(cap, UINT32_MAX);
    const std::size_t mask = cap - 1;
    for (std::uint32_t i = 0; i < count; ++i) {
      std::size_t s = hash(get(i)) & mask;
      while (slots[s] != UINT32_MAX) s = (s + 1) & mask;
      slots[s] = i;
    }
  }

  // Returns the index and whether it was inserted.
  std::pair<std::uint32_t, bool> insert(const std::uint64_t* w) {
    if (auto f = find(w)) return {*f, false};
    if ((count + 1) * 2 > slots.size()) rehash(std::max<std::size_t>(1024, slots.size() * 2));
    data.insert(data.end(), w, w + width);
    const auto idx = static_cast<std::uint32_t>(count++);
    const std::size_t mask = slots.size() - 1;
    std::size_t s = hash(w) & mask;
    while (slots[s] != UINT32_MAX) s = (s + 1) & mask;
    slots[s] = idx;
    return {idx, true};
  }

  void encode(std::span<const Elem> vals, std::uint64_t* out) const {
    std::fill(out, out + width, 0);
    for (std::size_t c = 0; c < coords; ++c) {
      if (masks) {
        out[vals[c]] |= 1ULL << c;
      } else {
        reinterpret_cast<std::uint8_t*>(out)[c] = static_cast<std::uint8_t>(vals[c]);
      }
    }
  }

  Elem decode(const std::uint64_t* w, std::size_t c) const {
    if (!masks) return reinterpret_cast<const std::uint8_t*>(w)[c];
    for (std::size_t v = 0; v < values; ++v)
      if (w[v] >> c & 1) return static_cast<Elem>(v);
    return 0;
  }
};

namespace {

struct Applier {
  const std::vector<Algebra>& K;
  const FreeAlgebra::Store& st;
  std::vector<std::size_t> member_of;            // per coordinate
  std::vector<std::uint64_t> member_mask;        // per member, mask mode
  std::vector<std::pair<std::size_t, std::size_t>> member_range;  // coordinate ranges

  Applier(const std::vector<Algebra>& k, const FreeAlgebra::Store& s, const std::vector<FreeAlgebra::Coordinate>& coords)
      : K(k), st(s) {
    member_mask.assign(K.size(), 0);
    member_range.assign(K.size(), {0, 0});
    for (std::size_t c = 0; c < coords.size(); ++c) {
      member_of.push_back(coords[c].member);
      if (st.masks) member_mask[coords[c].member] |= 1ULL << c;
    }
    std::size_t c = 0;
    for (std::size_t m = 0; m < K.size(); ++m) {
      std::size_t start = c;
      while (c < coords.size() && coords[c].member == m) ++c;
      member_range[m] = {start, c};
    }
  }

  void apply(std::size_t op, const std::uint64_t* const* args, std::uint64_t* out) const {
    const int ar = K.front().sig[op].arity;
    std::fill(out, out + st.width, 0);
    if (!st.masks) {
      auto* ob = reinterpret_cast<std::uint8_t*>(out);
      Elem vals[16];
      for (std::size_t m = 0; m < K.size(); ++m) {
        const auto& B = K[m];
        for (std::size_t c = member_range[m].first; c < member_range[m].second; ++c) {
          for (int i = 0; i < ar; ++i) vals[i] = reinterpret_cast<const std::uint8_t*>(args[i])[c];
          ob[c] = static_cast<std::uint8_t>(B.apply(op, vals));
        }
      }
      return;
    }
    for (std::size_t m = 0; m < K.size(); ++m) {
      const auto& B = K[m];
      const std::uint64_t cm = member_mask[m];
      if (!cm) continue;
      const auto n = B.size();
      const auto& t = B.tables[op];
      if (ar == 1) {
        for (std::size_t x = 0; x < n; ++x) out[t[x]] |= args[0][x] & cm;
      } else if (ar == 2) {
        for (std::size_t x = 0; x < n; ++x) {
          const std::uint64_t m1 = args[0][x] & cm;
          if (!m1) continue;
          for (std::size_t y = 0; y < n; ++y) out[t[x * n + y]] |= m1 & args[1][y];
        }
      } else if (ar == 3) {
        for (std::size_t x = 0; x < n; ++x) {
          const std::uint64_t m1 = args[0][x] & cm;
          if (!m1) continue;
          for (std::size_t y = 0; y < n; ++y) {
            const std::uint64_t m2 = m1 & args[1][y];
            if (!m2) continue;
            for (std::size_t z = 0; z < n; ++z) out[t[(x * n + y) * n + z]] |= m2 & args[2][z];
          }
        }
      } else {
        std::vector<std::size_t> v(ar, 0);
        const auto total = checked_pow(n, ar, UINT64_MAX / 2);
        for (std::uint64_t idx = 0; idx < total; ++idx) {
          std::uint64_t mm = cm;
          for (int i = 0; i < ar && mm; ++i) mm &= args[i][v[i]];
          if (mm) out[t[idx]] |= mm;
          for (int i = ar - 1; i >= 0; --i) {
            if (++v[i] < n) break;
            v[i] = 0;
          }
        }
      }
    }
  }
};

bool commutative(const std::vector<Algebra>& K, std::size_t op) {
  if (K.front().sig[op].arity != 2) return false;
  for (const auto& B : K) {
    const auto n = B.size();
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y)
        if (B.tables[op][x * n + y] != B.tables[op][y * n + x]) return false;
  }
  return true;
}

}  // namespace

FreeAlgebra free_algebra(const std::vector<Algebra>& K, std::uint32_t n, const Budget& budget) {
  if (K.empty()) throw PreconditionError("empty generator class");
  for (const auto& B : K) {
    if (!(B.sig == K.front().sig)) throw PreconditionError("generator class members have different signatures");
    if (B.size() > 255) throw PreconditionError("generator class member too large for free-algebra coordinates");
  }
  if (K.front().sig.max_arity() > 16) throw PreconditionError("arity too large");
  FreeAlgebra F;
  F.K_ = K;
  F.rank_ = n;
  std::uint64_t ncoords = 0;
  for (std::size_t m = 0; m < K.size(); ++m) {
    const auto cnt = checked_pow(K[m].size(), static_cast<int>(n), 1'000'000);
    ncoords += cnt;
    if (ncoords > 1'000'000) throw BudgetExceeded("table_entries", 1'000'000);
    std::vector<Elem> asg(n, 0);
    for (std::uint64_t i = 0; i < cnt; ++i) {
      F.coords_.push_back({m, asg});
      for (int j = static_cast<int>(n) - 1; j >= 0; --j) {
        if (++asg[j] < K[m].size()) break;
        asg[j] = 0;
      }
    }
  }
  auto store = std::make_shared<FreeAlgebra::Store>();
  store->coords = F.coords_.size();
  std::size_t maxsize = 0;
  for (const auto& B : K) maxsize = std::max(maxsize, B.size());
  store->masks = store->coords <= 64 && maxsize <= 16;
  store->values = maxsize;
  store->width = store->masks ? maxsize : (store->coords + 7) / 8;
  if (store->width == 0) store->width = 1;
  Applier ap(F.K_, *store, F.coords_);

  const auto& sig = K.front().sig;
  const std::uint64_t cap = budget.free_size;
  std::vector<std::uint64_t> buf(store->width);
  std::vector<Elem> vals(store->coords);

  auto add = [&](const std::uint64_t* w, int op, std::vector<Elem> args, Term witness) -> bool {
    auto [idx, fresh] = store->insert(w);
    if (!fresh) return true;
    F.recipe_op_.push_back(op);
    F.recipe_first_.push_back(static_cast<std::uint32_t>(F.recipe_args_.size()));
    F.recipe_args_.insert(F.recipe_args_.end(), args.begin(), args.end());
    F.witness_.push_back(std::move(witness));
    (void)idx;
    return store->count < cap;
  };

  bool room = true;
  std::uint64_t steps = 0;
  for (std::uint32_t i = 0; i < n && room; ++i) {
    for (std::size_t c = 0; c < store->coords; ++c) vals[c] = F.coords_[c].assignment[i];
    store->encode(vals, buf.data());
    auto before = store->count;
    room = add(buf.data(), -1, {i}, variable(i));
    F.generators_.push_back(store->find(buf.data()).value());
    (void)before;
  }
  for (std::size_t k = 0; k < sig.size() && room; ++k) {
    if (sig[k].arity != 0) continue;
    for (std::size_t c = 0; c < store->coords; ++c) vals[c] = K[F.coords_[c].member].tables[k][0];
    store->encode(vals, buf.data());
    room = add(buf.data(), static_cast<int>(k), {}, apply(static_cast<int>(k), {}));
  }
  if (store->count == 0) throw PreconditionError("no elements: rank 0 and no constants");

  std::vector<bool> comm(sig.size());
  for (std::size_t k = 0; k < sig.size(); ++k) comm[k] = commutative(K, k);
  std::size_t lo = 0;
  std::vector<const std::uint64_t*> argp(std::max(1, sig.max_arity()));
  std::vector<Elem> args(argp.size());
  while (room && lo < store->count) {
    const std::size_t hi = store->count;
    for (std::size_t k = 0; k < sig.size() && room; ++k) {
      const int ar = sig[k].arity;
      if (ar == 0) continue;
      detail::for_each_new_tuple(ar, lo, hi, [&](const std::uint32_t* idx) {
        if (!room) return;
        if (comm[k] && idx[0] > idx[1]) return;
        if (++steps > budget.closure_steps) {
          room = false;
          F.tripped_ = "closure_steps";
          return;
        }
        // Pointers are re-fetched per tuple since insertion may reallocate.
        for (int i = 0; i < ar; ++i) argp[i] = store->get(idx[i]);
        ap.apply(k, argp.data(), buf.data());
        if (store->find(buf.data())) return;
        std::vector<Term> targs(ar);
        for (int i = 0; i < ar; ++i) {
          args[i] = idx[i];
          targs[i] = F.witness_[idx[i]];
        }
        room = add(buf.data(), static_cast<int>(k), std::vector<Elem>(args.begin(), args.begin() + ar),
                   apply(static_cast<int>(k), std::move(targs)));
      });
    }
    lo = hi;
  }
  F.truncated_ = !room;
  if (F.truncated_ && F.tripped_.empty()) {
    F.tripped_ = "free_size";
    // A cap hit exactly at closure is not a truncation.
    F.truncated_ = false;
    const std::size_t hi = store->count;
    for (std::size_t k = 0; k < sig.size() && !F.truncated_; ++k) {
      const int ar = sig[k].arity;
      if (ar == 0) continue;
      detail::for_each_new_tuple(ar, 0, hi, [&](const std::uint32_t* idx) {
        if (F.truncated_) return;
        for (int i = 0; i < ar; ++i) argp[i] = store->get(idx[i]);
        ap.apply(k, argp.data(), buf.data());
        if (!store->find(buf.data())) F.truncated_ = true;
      });
    }
    if (!F.truncated_) F.tripped_.clear();
  }
  F.store_ = store;
  return F;
}

void FreeAlgebra::require_complete(const Budget& budget) const {
  if (truncated_) throw BudgetExceeded(tripped_, budget.get(tripped_));
}

std::vector<Elem> FreeAlgebra::values(std::size_t e) const {
  std::vector<Elem> out(coords_.size());
  for (std::size_t c = 0; c < coords_.size(); ++c) out[c] = store_->decode(store_->get(e), c);
  return out;
}

Elem FreeAlgebra::value(std::size_t e, std::size_t coord) const { return store_->decode(store_->get(e), coord); }

std::optional<Elem> FreeAlgebra::find(std::span<const Elem> vals) const {
  if (vals.size() != coords_.size()) return std::nullopt;
  std::vector<std::uint64_t> buf(store_->width);
  store_->encode(vals, buf.data());
  auto r = store_->find(buf.data());
  if (!r) return std::nullopt;
  return *r;
}

std::optional<Elem> FreeAlgebra::element_of(const Term& t) const {
  if (var_bound(t) > rank_) throw Error("term has more variables than the free algebra's rank");
  std::vector<Elem> vals(coords_.size());
  std::vector<std::unique_ptr<Evaluator>> evs;
  for (const auto& B : K_) evs.push_back(std::make_unique<Evaluator>(B, std::span<const Term>(&t, 1)));
  for (std::size_t c = 0; c < coords_.size(); ++c) {
    auto& ev = *evs[coords_[c].member];
    ev.run(coords_[c].assignment.data());
    vals[c] = ev.value(0);
  }
  return find(vals);
}

std::span<const Elem> FreeAlgebra::recipe_args(std::size_t e) const {
  const auto first = recipe_first_[e];
  const auto last = e + 1 < recipe_first_.size() ? recipe_first_[e + 1] : recipe_args_.size();
  return {recipe_args_.data() + first, last - first};
}

const Algebra& FreeAlgebra::algebra(const Budget& budget) const {
  require_complete(budget);
  if (materialized_) return *materialized_;
  auto a = std::make_shared<Algebra>();
  a->name = "F" + std::to_string(rank_);
  a->sig = sig();
  const auto n = size();
  for (std::size_t i = 0; i < n; ++i) a->labels.push_back("e" + std::to_string(i));
  Applier ap(K_, *store_, coords_);
  std::vector<std::uint64_t> buf(store_->width);
  std::vector<const std::uint64_t*> argp(std::max(1, sig().max_arity()));
  for (std::size_t k = 0; k < sig().size(); ++k) {
    const int ar = sig()[k].arity;
    if (ar == 0) {
      std::vector<Elem> vals(coords_.size());
      for (std::size_t c = 0; c < coords_.size(); ++c) vals[c] = K_[coords_[c].member].tables[k][0];
      a->tables.push_back({find(vals).value()});
      continue;
    }
    const auto total = checked_pow(n, ar, budget.table_entries);
    if (total > budget.table_entries) throw BudgetExceeded("table_entries", budget.table_entries);
    std::vector<Elem> table(total);
    std::vector<std::uint32_t> idx(ar, 0);
    for (std::uint64_t t = 0; t < total; ++t) {
      for (int i = 0; i < ar; ++i) argp[i] = store_->get(idx[i]);
      ap.apply(k, argp.data(), buf.data());
      auto r = store_->find(buf.data());
      if (!r) throw Error("free algebra is not closed");
      table[t] = *r;
      for (int i = ar - 1; i >= 0; --i) {
        if (++idx[i] < n) break;
        idx[i] = 0;
      }
    }
    a->tables.push_back(std::move(table));
  }
  materialized_ = a;
  return *materialized_;
}

json FreeAlgebra::witnesses_json() const {
  json j = json::array();
  std::vector<std::string> names;
  for (std::uint32_t i = 0; i < rank_; ++i) names.push_back(default_var_name(i));
  for (std::size_t e = 0; e < size(); ++e) j.push_back(print_term(witness_[e], sig(), names));
  return j;
}

HomMap eval_hom(const FreeAlgebra& F, const Algebra& target, std::span<const Elem> images, const Budget& budget,
                bool check) {
  if (!(target.sig == F.sig())) throw PreconditionError("signature mismatch");
  if (images.size() != F.rank()) throw Error("need one image per generator");
  F.require_complete(budget);
  HomMap h(F.size());
  std::vector<Elem> args(std::max(1, F.sig().max_arity()));
  for (std::size_t e = 0; e < F.size(); ++e) {
    auto ra = F.recipe_args(e);
    if (F.recipe_op(e) < 0) {
      h[e] = images[ra[0]];
      continue;
    }
    for (std::size_t i = 0; i < ra.size(); ++i) args[i] = h[ra[i]];
    h[e] = target.apply(static_cast<std::size_t>(F.recipe_op(e)), args.data());
  }
  if (check && !is_homomorphism(F.algebra(budget), target, h)) throw PreconditionError("target outside Q(K)");
  return h;
}

PresentedAlgebra finitely_presented(const std::vector<Algebra>& K, std::uint32_t n,
                                    const std::vector<Equation>& relations, const Budget& budget) {
  auto F = std::make_shared<FreeAlgebra>(free_algebra(K, n, budget));
  F->require_complete(budget);
  std::vector<std::pair<Elem, Elem>> pairs;
  for (const auto& r : relations) pairs.push_back({F->element_of(r.lhs).value(), F->element_of(r.rhs).value()});
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < F->coordinates().size(); ++c) {
    bool ok = true;
    for (auto [x, y] : pairs) ok = ok && F->value(x, c) == F->value(y, c);
    if (ok) keep.push_back(c);
  }
  // Kernel of the projection onto the kept coordinates.
  std::vector<std::vector<Elem>> proj(F->size());
  for (std::size_t e = 0; e < F->size(); ++e)
    for (auto c : keep) proj[e].push_back(F->value(e, c));
  std::vector<Elem> labels(F->size());
  std::vector<std::vector<Elem>> seen;
  for (std::size_t e = 0; e < F->size(); ++e) {
    auto it = std::find(seen.begin(), seen.end(), proj[e]);
    if (it == seen.end()) {
      labels[e] = static_cast<Elem>(seen.size());
      seen.push_back(proj[e]);
    } else {
      labels[e] = static_cast<Elem>(it - seen.begin());
    }
  }
  PresentedAlgebra P;
  P.base = F;
  P.relations = relations;
  P.theta = Congruence::from_labels(labels);
  auto q = quotient(F->algebra(budget), P.theta);
  P.quotient = std::move(q.algebra);
  P.map = std::move(q.map);
  return P;
}

}  // namespace quasilab
