#pragma once

// Brute-force reference implementations used only by the tests. They work on
// raw value vectors and share no code paths with the library.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "narylab/op_table.hpp"

namespace oracle {

using narylab::Element;
using Values = std::vector<Element>;

inline std::size_t ipow(std::size_t m, std::size_t n) {
  std::size_t r = 1;
  while (n--) r *= m;
  return r;
}

// Tuple k of length n in lex order, x_1 most significant.
inline Values tuple_of(std::size_t k, std::size_t m, std::size_t n) {
  Values t(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[n - 1 - i] = static_cast<Element>(k % m);
    k /= m;
  }
  return t;
}

inline Element apply(const Values& table, std::size_t m, const Values& t) {
  std::size_t k = 0;
  for (Element x : t) k = k * m + x;
  return table[k];
}

inline std::vector<Values> all_tuples(std::size_t m, std::size_t n) {
  std::vector<Values> out;
  for (std::size_t k = 0; k < ipow(m, n); ++k) out.push_back(tuple_of(k, m, n));
  return out;
}

inline bool associative(const Values& f, std::size_t m, std::size_t n) {
  if (n < 2) return true;
  for (const auto& x : all_tuples(m, 2 * n - 1)) {
    Element reference = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Values inner(x.begin() + static_cast<long>(i), x.begin() + static_cast<long>(i + n));
      Values outer(x.begin(), x.begin() + static_cast<long>(i));
      outer.push_back(apply(f, m, inner));
      outer.insert(outer.end(), x.begin() + static_cast<long>(i + n), x.end());
      const Element v = apply(f, m, outer);
      if (i == 0) reference = v;
      else if (v != reference) return false;
    }
  }
  return true;
}

inline bool idempotent(const Values& f, std::size_t m, std::size_t n) {
  for (Element x = 0; x < m; ++x)
    if (apply(f, m, Values(n, x)) != x) return false;
  return true;
}

inline bool symmetric(const Values& f, std::size_t m, std::size_t n) {
  for (auto t : all_tuples(m, n)) {
    const Element v = apply(f, m, t);
    std::sort(t.begin(), t.end());
    do {
      if (apply(f, m, t) != v) return false;
    } while (std::next_permutation(t.begin(), t.end()));
  }
  return true;
}

inline bool quasitrivial(const Values& f, std::size_t m, std::size_t n) {
  for (const auto& t : all_tuples(m, n)) {
    if (std::find(t.begin(), t.end(), apply(f, m, t)) == t.end()) return false;
  }
  return true;
}

inline bool nondecreasing(const Values& f, std::size_t m, std::size_t n) {
  const auto ts = all_tuples(m, n);
  for (const auto& a : ts)
    for (const auto& b : ts) {
      bool dominates = true;
      for (std::size_t i = 0; i < n; ++i) dominates = dominates && a[i] >= b[i];
      if (dominates && apply(f, m, a) < apply(f, m, b)) return false;
    }
  return true;
}

inline bool monotone(const Values& f, std::size_t m, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& base : all_tuples(m, n)) {
      if (base[i] != 0) continue;
      bool preserving = true;
      bool reversing = true;
      for (Element x = 0; x < m; ++x)
        for (Element y = 0; y < m; ++y) {
          if (x >= y) continue;
          auto tx = base;
          auto ty = base;
          tx[i] = x;
          ty[i] = y;
          preserving = preserving && apply(f, m, tx) <= apply(f, m, ty);
          reversing = reversing && apply(f, m, tx) >= apply(f, m, ty);
        }
      if (!preserving && !reversing) return false;
    }
  }
  return true;
}

inline std::vector<Element> neutrals(const Values& f, std::size_t m, std::size_t n) {
  std::vector<Element> out;
  for (Element e = 0; e < m; ++e) {
    bool ok = true;
    for (Element x = 0; x < m && ok; ++x)
      for (std::size_t i = 0; i < n && ok; ++i) {
        Values t(n, e);
        t[i] = x;
        ok = apply(f, m, t) == x;
      }
    if (ok) out.push_back(e);
  }
  return out;
}

// Left fold of a binary table, no associativity assumed.
inline Values fold(const Values& g, std::size_t m, std::size_t n) {
  Values out;
  for (const auto& t : all_tuples(m, n)) {
    Element acc = t[0];
    for (std::size_t i = 1; i < n; ++i) acc = g[acc * m + t[i]];
    out.push_back(acc);
  }
  return out;
}

inline Values dual(const Values& f, std::size_t m, std::size_t n) {
  Values out;
  for (auto t : all_tuples(m, n)) {
    for (auto& x : t) x = static_cast<Element>(m - 1 - x);
    out.push_back(static_cast<Element>(m - 1 - apply(f, m, t)));
  }
  return out;
}

// Visits all m^(m^n) tables in lex order.
inline void each_table(std::size_t m, std::size_t n, const std::function<void(const Values&)>& visit) {
  const std::size_t cells = ipow(m, n);
  Values v(cells, 0);
  while (true) {
    visit(v);
    std::size_t i = cells;
    while (i > 0) {
      --i;
      if (v[i] + 1 < m) {
        ++v[i];
        break;
      }
      v[i] = 0;
      if (i == 0) return;
    }
    if (cells == 0) return;
  }
}

struct Flags {
  bool a = false, i = false, s = false, q = false, d = false, mo = false, e = false;
};

inline bool member(const Values& f, std::size_t m, std::size_t n, const Flags& fl) {
  if (fl.a && !associative(f, m, n)) return false;
  if (fl.i && !idempotent(f, m, n)) return false;
  if (fl.s && !symmetric(f, m, n)) return false;
  if (fl.q && !quasitrivial(f, m, n)) return false;
  if (fl.d && !nondecreasing(f, m, n)) return false;
  if (fl.mo && !monotone(f, m, n)) return false;
  if (fl.e && neutrals(f, m, n).empty()) return false;
  return true;
}

// Every associative binary G (among all m^(m^2) tables) whose n-fold is f.
inline std::vector<Values> reductions(const Values& f, std::size_t m, std::size_t n) {
  std::vector<Values> out;
  each_table(m, 2, [&](const Values& g) {
    if (fold(g, m, n) == f && associative(g, m, 2)) out.push_back(g);
  });
  return out;
}

}  // namespace oracle
