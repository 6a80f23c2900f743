#pragma once

#include <algorithm>
#include <vector>

#include "narylab/class_spec.hpp"
#include "narylab/op_table.hpp"
#include "oracles.hpp"

namespace fx {

using narylab::Chain;
using narylab::ClassSpec;
using narylab::Element;
using narylab::Flag;
using narylab::OpTable;

inline OpTable table(std::size_t m, std::size_t n, std::vector<Element> values) {
  return OpTable(Chain(m), n, std::move(values));
}

inline OpTable min_op(std::size_t m, std::size_t n) {
  return OpTable::tabulate(Chain(m), n, [](auto t) { return *std::min_element(t.begin(), t.end()); });
}

inline OpTable max_op(std::size_t m, std::size_t n) {
  return OpTable::tabulate(Chain(m), n, [](auto t) { return *std::max_element(t.begin(), t.end()); });
}

inline OpTable proj1(std::size_t m, std::size_t n) {
  return OpTable::tabulate(Chain(m), n, [](auto t) { return t[0]; });
}

inline OpTable xor_op(std::size_t n) {
  return OpTable::tabulate(Chain(2), n, [](auto t) {
    Element s = 0;
    for (Element x : t) s ^= x;
    return s;
  });
}

inline OpTable median3(std::size_t m) {
  return OpTable::tabulate(Chain(m), 3, [](auto t) {
    std::vector<Element> v(t.begin(), t.end());
    std::sort(v.begin(), v.end());
    return v[1];
  });
}

inline oracle::Flags flags_of(ClassSpec s) {
  oracle::Flags f;
  f.a = s.has(Flag::assoc);
  f.i = s.has(Flag::idem);
  f.s = s.has(Flag::symm);
  f.q = s.has(Flag::quasitrivial);
  f.d = s.has(Flag::nondecreasing);
  f.mo = s.has(Flag::monotone);
  f.e = s.has(Flag::has_neutral);
  return f;
}

/// Brute-force class members as library tables, in lex order of values.
inline std::vector<OpTable> brute_members(std::size_t m, std::size_t n, ClassSpec s) {
  std::vector<OpTable> out;
  const auto fl = flags_of(s);
  oracle::each_table(m, n, [&](const oracle::Values& v) {
    if (oracle::member(v, m, n, fl)) out.push_back(table(m, n, v));
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fx
