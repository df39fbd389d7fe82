#pragma once

#include <cstdint>
#include <vector>

#include "quasilab/algebra.hpp"
#include "quasilab/report.hpp"

namespace quasilab::detail {

// Calls fn(idx) for every tuple in [0,m1)^ar having some coordinate >= m0,
// grouped by the position of the first such coordinate.
template <class F>
void for_each_new_tuple(int ar, std::size_t m0, std::size_t m1, F&& fn) {
  if (ar == 0 || m1 <= m0) return;
  std::vector<std::uint32_t> idx(ar), lo(ar), hi(ar);
  for (int first = 0; first < ar; ++first) {
    bool empty = false;
    for (int p = 0; p < ar; ++p) {
      lo[p] = p == first ? static_cast<std::uint32_t>(m0) : 0;
      hi[p] = static_cast<std::uint32_t>(p < first ? m0 : m1);
      if (lo[p] >= hi[p]) empty = true;
    }
    if (empty) continue;
    idx = lo;
    while (true) {
      fn(idx.data());
      int p = ar - 1;
      while (p >= 0) {
        if (++idx[p] < hi[p]) break;
        idx[p] = lo[p];
        --p;
      }
      if (p < 0) break;
    }
  }
}

inline std::uint64_t mix64(std::uint64_t h, std::uint64_t v) {
  v *= 0x9e3779b97f4a7c15ULL;
  v ^= v >> 29;
  return (h ^ v) * 0xbf58476d1ce4e5b9ULL + 0x94d049bb133111ebULL;
}

inline json names_of(const std::vector<Algebra>& K) {
  json j = json::array();
  for (const auto& b : K) j.push_back(b.name);
  return j;
}

}  // namespace quasilab::detail
