#include "narylab/properties.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <sstream>

namespace narylab {

std::string_view to_string(Property p) noexcept {
  switch (p) {
    case Property::associativity: return "associativity";
    case Property::idempotency: return "idempotency";
    case Property::symmetry: return "symmetry";
    case Property::quasitriviality: return "quasitriviality";
    case Property::nondecreasing: return "nondecreasing";
    case Property::monotonicity: return "monotonicity";
    case Property::neutral: return "neutral";
  }
  return "unknown";
}

namespace {

std::string witness_message(const Witness& w) {
  std::ostringstream os;
  os << "operation is not associative: tuple (";
  for (std::size_t k = 0; k < w.tuple.size(); ++k) os << (k ? "," : "") << w.tuple[k];
  os << "), i = " << w.position;
  if (w.values.size() == 2) os << ": " << w.values[0] << " vs " << w.values[1];
  return os.str();
}

// Leftmost grouping and i-th grouping of the n-associativity law for a (2n-1)-tuple x.
std::pair<Element, Element> groupings(const OpTable& f, std::span<const Element> x,
                                      std::size_t i) {
  const std::size_t n = f.arity();
  std::vector<Element> outer(n);
  outer[0] = f(x.subspan(0, n));
  std::copy(x.begin() + n, x.end(), outer.begin() + 1);
  const Element left = f(outer);
  std::copy(x.begin(), x.begin() + i, outer.begin());
  outer[i] = f(x.subspan(i, n));
  std::copy(x.begin() + i + n, x.end(), outer.begin() + i + 1);
  return {left, f(outer)};
}

bool is_peak_or_valley(Element a, Element b, Element c) {
  return (a < b && b > c) || (a > b && b < c);
}

// Lex-least x<y<z on which the section is neither preserving nor reversing.
std::optional<std::array<Element, 3>> broken_triple(std::span<const Element> section) {
  const auto m = static_cast<Element>(section.size());
  for (Element x = 0; x < m; ++x)
    for (Element y = x + 1; y < m; ++y)
      for (Element z = y + 1; z < m; ++z)
        if (is_peak_or_valley(section[x], section[y], section[z])) return std::array{x, y, z};
  return std::nullopt;
}

}  // namespace

NotAssociative::NotAssociative(Witness w) : Error(witness_message(w)), witness_(std::move(w)) {}

Verdict is_associative(const OpTable& f) {
  const std::size_t n = f.arity();
  if (n < 2) return {};
  const TupleIndex idx(f.size(), 2 * n - 1);
  std::vector<Element> x(2 * n - 1, 0);
  do {
    for (std::size_t i = 1; i < n; ++i) {
      const auto [left, right] = groupings(f, x, i);
      if (left != right) {
        return Verdict(Witness{Property::associativity, x, i, {left, right}, {}});
      }
    }
  } while (idx.next(x));
  return {};
}

Verdict is_idempotent(const OpTable& f) {
  std::vector<Element> t(f.arity());
  for (Element x = 0; x < f.size(); ++x) {
    std::fill(t.begin(), t.end(), x);
    if (const Element v = f(t); v != x) {
      return Verdict(Witness{Property::idempotency, t, 0, {v}, {}});
    }
  }
  return {};
}

Verdict is_symmetric(const OpTable& f) {
  const std::size_t n = f.arity();
  const auto idx = f.indexer();
  std::vector<Element> t(n, 0);
  std::vector<Element> s(n);
  do {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      s = t;
      std::swap(s[p], s[p + 1]);
      const Element a = f(t);
      const Element b = f(s);
      if (a != b) return Verdict(Witness{Property::symmetry, t, p + 1, {a, b}, {}});
    }
  } while (idx.next(t));
  return {};
}

Verdict is_quasitrivial(const OpTable& f) {
  const auto idx = f.indexer();
  std::vector<Element> t(f.arity(), 0);
  do {
    const Element v = f(t);
    if (std::find(t.begin(), t.end(), v) == t.end()) {
      return Verdict(Witness{Property::quasitriviality, t, 0, {v}, {}});
    }
  } while (idx.next(t));
  return {};
}

Verdict is_nondecreasing(const OpTable& f) {
  const std::size_t n = f.arity();
  const auto idx = f.indexer();
  std::vector<Element> t(n, 0);
  std::size_t k = 0;
  do {
    const Element v = f.at(k);
    for (std::size_t j = 0; j < n; ++j) {
      if (t[j] + 1 >= f.size()) continue;
      const Element up = f.at(k + idx.stride(j));
      if (up < v) return Verdict(Witness{Property::nondecreasing, t, j + 1, {v, up}, {}});
    }
    ++k;
  } while (idx.next(t));
  return {};
}

Verdict is_monotone(const OpTable& f) {
  const std::size_t n = f.arity();
  const std::size_t m = f.size();
  const auto idx = f.indexer();
  std::vector<Element> t(n, 0);
  std::vector<Element> section(m);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(t.begin(), t.end(), 0);
    do {
      if (t[j] != 0) continue;
      const std::size_t base = idx.index(t);
      bool up = true;
      bool down = true;
      for (std::size_t x = 0; x < m; ++x) {
        section[x] = f.at(base + x * idx.stride(j));
        if (x > 0) {
          up = up && section[x - 1] <= section[x];
          down = down && section[x - 1] >= section[x];
        }
      }
      if (up || down) continue;
      const auto tri = broken_triple(section).value();
      return Verdict(Witness{Property::monotonicity, t, j + 1,
                             {section[tri[0]], section[tri[1]], section[tri[2]]},
                             {tri[0], tri[1], tri[2]}});
    } while (idx.next(t));
  }
  return {};
}

std::optional<Witness> neutral_failure(const OpTable& f, Element e) {
  const std::size_t n = f.arity();
  std::vector<Element> t(n);
  for (Element x = 0; x < f.size(); ++x) {
    for (std::size_t i = 0; i < n; ++i) {
      std::fill(t.begin(), t.end(), e);
      t[i] = x;
      if (const Element v = f(t); v != x) {
        return Witness{Property::neutral, t, i + 1, {v}, {e, x}};
      }
    }
  }
  return std::nullopt;
}

std::vector<Element> neutral_elements(const OpTable& f) {
  std::vector<Element> out;
  for (Element e = 0; e < f.size(); ++e) {
    if (!neutral_failure(f, e)) out.push_back(e);
  }
  return out;
}

bool reproduces(const OpTable& f, const Witness& w) {
  const std::size_t n = f.arity();
  const std::size_t m = f.size();
  auto in_range = [&](std::span<const Element> t) {
    return std::all_of(t.begin(), t.end(), [&](Element x) { return x < m; });
  };
  if (!in_range(w.tuple) || !in_range(w.points)) return false;
  switch (w.kind) {
    case Property::associativity: {
      if (w.tuple.size() != 2 * n - 1 || w.position < 1 || w.position >= n) return false;
      const auto [l, r] = groupings(f, w.tuple, w.position);
      return l != r && w.values == std::vector<Element>{l, r};
    }
    case Property::idempotency: {
      if (w.tuple.size() != n) return false;
      const bool diagonal = std::all_of(w.tuple.begin(), w.tuple.end(),
                                        [&](Element x) { return x == w.tuple[0]; });
      return diagonal && f(w.tuple) != w.tuple[0] && w.values == std::vector{f(w.tuple)};
    }
    case Property::symmetry: {
      if (w.tuple.size() != n || w.position < 1 || w.position >= n) return false;
      auto s = w.tuple;
      std::swap(s[w.position - 1], s[w.position]);
      return f(w.tuple) != f(s) && w.values == std::vector{f(w.tuple), f(s)};
    }
    case Property::quasitriviality: {
      if (w.tuple.size() != n) return false;
      const Element v = f(w.tuple);
      return std::find(w.tuple.begin(), w.tuple.end(), v) == w.tuple.end() &&
             w.values == std::vector{v};
    }
    case Property::nondecreasing: {
      if (w.tuple.size() != n || w.position < 1 || w.position > n) return false;
      auto up = w.tuple;
      if (++up[w.position - 1] >= m) return false;
      return f(w.tuple) > f(up) && w.values == std::vector{f(w.tuple), f(up)};
    }
    case Property::monotonicity: {
      if (w.tuple.size() != n || w.position < 1 || w.position > n || w.points.size() != 3)
        return false;
      if (!(w.points[0] < w.points[1] && w.points[1] < w.points[2])) return false;
      std::vector<Element> vals;
      auto t = w.tuple;
      for (Element x : w.points) {
        t[w.position - 1] = x;
        vals.push_back(f(t));
      }
      return is_peak_or_valley(vals[0], vals[1], vals[2]) && vals == w.values;
    }
    case Property::neutral: {
      if (w.tuple.size() != n || w.position < 1 || w.position > n || w.points.size() != 2)
        return false;
      const Element e = w.points[0];
      const Element x = w.points[1];
      for (std::size_t i = 0; i < n; ++i) {
        if (w.tuple[i] != (i + 1 == w.position ? x : e)) return false;
      }
      return f(w.tuple) != x && w.values == std::vector{f(w.tuple)};
    }
  }
  return false;
}

const Verdict& PropertyReport::verdict(Property p) const {
  switch (p) {
    case Property::associativity: return associative;
    case Property::idempotency: return idempotent;
    case Property::symmetry: return symmetric;
    case Property::quasitriviality: return quasitrivial;
    case Property::nondecreasing: return nondecreasing;
    case Property::monotonicity: return monotone;
    case Property::neutral: break;
  }
  throw Error("neutral elements are reported as a list, not a verdict");
}

PropertyReport classify(const OpTable& f) {
  return PropertyReport{is_associative(f),   is_idempotent(f),    is_symmetric(f),
                        is_quasitrivial(f),  is_nondecreasing(f), is_monotone(f),
                        neutral_elements(f)};
}

}  // namespace narylab
