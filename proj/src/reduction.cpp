#include "narylab/reduction.hpp"

#include <algorithm>
#include <sstream>

#include "narylab/parallel.hpp"
#include "table_search.hpp"

namespace narylab {

namespace {

void require_arity(const OpTable& f, std::size_t at_least, std::string_view what) {
  if (f.arity() < at_least) {
    std::ostringstream os;
    os << what << " needs arity at least " << at_least << ", got " << f.arity();
    throw Error(os.str());
  }
}

std::string neutral_message(Element e) {
  std::ostringstream os;
  os << "element " << e << " is not neutral";
  return os.str();
}

// derive(g, n) == f, including the associativity precondition.
bool derives(const OpTable& g, const OpTable& f) {
  if (g.size() != f.size() || g.arity() != 2) return false;
  if (!is_associative(g)) return false;
  return fold_unchecked(g, f.arity()) == f;
}

}  // namespace

std::variant<OpTable, CandidateMismatch> candidate_binary(const OpTable& f) {
  require_arity(f, 2, "candidate_binary");
  if (f.arity() == 2) return f;
  const std::size_t n = f.arity();
  const std::size_t m = f.size();
  std::vector<Element> values(m * m);
  std::vector<Element> t(n);
  for (Element a = 0; a < m; ++a) {
    for (Element c = 0; c < m; ++c) {
      std::fill(t.begin(), t.end(), c);
      t[0] = a;
      const Element right_heavy = f(t);
      std::fill(t.begin(), t.end(), a);
      t[n - 1] = c;
      const Element left_heavy = f(t);
      if (right_heavy != left_heavy) return CandidateMismatch{a, c, right_heavy, left_heavy};
      values[a * m + c] = right_heavy;
    }
  }
  return OpTable(f.carrier(), 2, std::move(values));
}

NotNeutral::NotNeutral(Element e, Witness w) : Error(neutral_message(e)), witness_(std::move(w)) {}

OpTable neutral_reduction(const OpTable& f, Element e) {
  require_arity(f, 2, "neutral_reduction");
  if (!f.carrier().contains(e)) throw Error("neutral candidate is outside the chain");
  if (auto w = neutral_failure(f, e)) throw NotNeutral(e, std::move(*w));
  const std::size_t n = f.arity();
  std::vector<Element> t(n, e);
  return OpTable::tabulate(f.carrier(), 2, [&](std::span<const Element> ab) {
    t.front() = ab[0];
    t.back() = ab[1];
    return f(t);
  });
}

AdjoinedTable::AdjoinedTable(OpTable table, Element adjoined)
    : table_(std::move(table)), adjoined_(adjoined) {}

OpTable AdjoinedTable::placed_at(Element position) const {
  const std::size_t m = table_.size();
  if (position >= m) throw Error("adjoined element position must lie in 0..m");
  auto relabel = [&](Element x) -> Element {
    if (x == adjoined_) return position;
    return x < position ? x : x + 1;
  };
  std::vector<Element> values(m * m);
  for (Element x = 0; x < m; ++x)
    for (Element y = 0; y < m; ++y)
      values[relabel(x) * m + relabel(y)] = relabel(table_.at(x * m + y));
  return OpTable(table_.carrier(), 2, std::move(values));
}

AdjoinedTable adjoin_neutral_binary(const OpTable& g) {
  if (g.arity() != 2) throw Error("adjoin_neutral_binary expects a binary table");
  if (auto v = is_associative(g); !v) throw NotAssociative(v.witness());
  const std::size_t m = g.size();
  const auto e = static_cast<Element>(m);
  auto extended = OpTable::tabulate(Chain(m + 1), 2, [&](std::span<const Element> xy) {
    if (xy[0] == e) return xy[1];
    if (xy[1] == e) return xy[0];
    return g.at(xy[0] * m + xy[1]);
  });
  if (!is_associative(extended)) throw Error("internal: adjoined table lost associativity");
  return AdjoinedTable(std::move(extended), e);
}

Verdict is_nondecreasing(const AdjoinedTable& g, std::optional<Element> position) {
  if (!position) throw UnplacedElement("nondecreasing is order-dependent; place the adjoined element first");
  return is_nondecreasing(g.placed_at(*position));
}

Verdict is_monotone(const AdjoinedTable& g, std::optional<Element> position) {
  if (!position) throw UnplacedElement("monotonicity is order-dependent; place the adjoined element first");
  return is_monotone(g.placed_at(*position));
}

std::variant<OpTable, PlacementMismatch> arity_reduce(const OpTable& f) {
  require_arity(f, 3, "arity_reduce");
  const std::size_t n = f.arity();
  const TupleIndex small(f.size(), n - 1);
  std::vector<Element> x(n - 1, 0);
  std::vector<Element> doubled(n);
  std::vector<Element> values(small.count());
  auto with_double = [&](std::size_t i) {
    // x_i appears twice, at positions i and i+1.
    std::copy(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(i + 1), doubled.begin());
    std::copy(x.begin() + static_cast<std::ptrdiff_t>(i), x.end(),
              doubled.begin() + static_cast<std::ptrdiff_t>(i + 1));
    return f(doubled);
  };
  std::size_t k = 0;
  do {
    const Element first = with_double(0);
    for (std::size_t j = 1; j + 1 < n; ++j) {
      if (const Element other = with_double(j); other != first) {
        return PlacementMismatch{1, j + 1, x, first, other};
      }
    }
    values[k++] = first;
  } while (small.next(x));
  return OpTable(f.carrier(), n - 1, std::move(values));
}

bool satisfies_ackerman(const OpTable& f, const AckermanWitness& w) {
  const std::size_t n = f.arity();
  if (n % 2 == 0 || w.b1 == w.b2 || !f.carrier().contains(w.b1) || !f.carrier().contains(w.b2))
    return false;
  std::vector<Element> t(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::size_t ones = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool second = ((mask >> (n - 1 - i)) & 1U) != 0;
      t[i] = second ? w.b2 : w.b1;
      ones += second ? 1 : 0;
    }
    // n is odd, so exactly one of the two elements occurs an odd number of times.
    const Element odd = (ones % 2 == 1) ? w.b2 : w.b1;
    if (f(t) != odd) return false;
  }
  return true;
}

std::optional<AckermanWitness> ackerman_witness(const OpTable& f) {
  if (f.arity() % 2 == 0) return std::nullopt;
  if (f.arity() >= 63) throw Error("arity too large for the Ackerman scan");
  for (Element b1 = 0; b1 < f.size(); ++b1)
    for (Element b2 = b1 + 1; b2 < f.size(); ++b2)
      if (satisfies_ackerman(f, {b1, b2})) return AckermanWitness{b1, b2};
  return std::nullopt;
}

OracleResult oracle_reduce(const OpTable& f, ClassSpec g_class, const OracleOptions& options) {
  require_arity(f, 2, "oracle_reduce");
  if (f.size() > options.carrier_cap) {
    std::ostringstream os;
    os << "oracle carrier cap " << options.carrier_cap << " exceeded: m = " << f.size();
    throw CarrierCapExceeded(os.str());
  }
  OracleResult result;
  if (!is_associative(f)) {
    result.note = "operation is not associative, so no binary reduction exists";
    return result;
  }
  const detail::SearchProblem problem{f.size(), 2, g_class.with(Flag::assoc), &f};
  auto collect = [&](std::optional<detail::TableSearch::Pin> pin) {
    std::vector<OpTable> found;
    detail::TableSearch search(problem);
    search.run(
        [&](std::span<const Element> values) {
          OpTable g(f.carrier(), 2, std::vector<Element>(values.begin(), values.end()));
          if (!g_class.has(Flag::has_neutral) || !neutral_elements(g).empty())
            found.push_back(std::move(g));
          return true;
        },
        pin);
    return found;
  };
  detail::TableSearch probe(problem);
  const auto split = probe.split_cell();
  if (effective_threads(options.threads) <= 1 || !split) {
    result.reductions = collect(std::nullopt);
  } else {
    const auto& domain = probe.static_domain(*split);
    auto parts = parallel_map(domain.size(), options.threads, [&](std::size_t i) {
      return collect(detail::TableSearch::Pin{*split, domain[i]});
    });
    for (auto& part : parts)
      for (auto& g : part) result.reductions.push_back(std::move(g));
  }
  return result;
}

// Neutral-element route: extend a reduction by a fresh identity, check that the
// extended n-ary table restricts to F with the new element neutral, and read
// the binary table back off through that neutral element.
std::optional<OpTable> reduce_through_adjoined(const OpTable& f, const OpTable& g) {
  if (!derives(g, f)) return std::nullopt;
  const AdjoinedTable ext = adjoin_neutral_binary(g);
  const OpTable big = fold_unchecked(ext.table(), f.arity());
  const std::size_t m = f.size();
  const TupleIndex small(m, f.arity());
  std::vector<Element> t(f.arity(), 0);
  do {
    if (big(t) != f(t)) return std::nullopt;
  } while (small.next(t));
  if (neutral_failure(big, ext.adjoined())) return std::nullopt;
  const OpTable back = neutral_reduction(big, ext.adjoined());
  std::vector<Element> values(m * m);
  for (Element a = 0; a < m; ++a)
    for (Element b = 0; b < m; ++b) values[a * m + b] = back.at(a * (m + 1) + b);
  OpTable recovered(f.carrier(), 2, std::move(values));
  if (!derives(recovered, f)) return std::nullopt;
  return recovered;
}

std::string_view to_string(Strategy s) noexcept {
  switch (s) {
    case Strategy::automatic: return "auto";
    case Strategy::candidate: return "candidate";
    case Strategy::neutral: return "neutral";
    case Strategy::adjoin: return "adjoin";
    case Strategy::oracle: return "oracle";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view text) {
  for (Strategy s : {Strategy::automatic, Strategy::candidate, Strategy::neutral, Strategy::adjoin,
                     Strategy::oracle}) {
    if (text == to_string(s)) return s;
  }
  throw Error("unknown strategy '" + std::string(text) + "'");
}

namespace {

std::optional<OpTable> try_candidate(const OpTable& f, ClassSpec g_class, std::string& reason) {
  auto c = candidate_binary(f);
  if (const auto* mm = std::get_if<CandidateMismatch>(&c)) {
    std::ostringstream os;
    os << "F(a,(n-1)c) != F((n-1)a,c) at (a,c) = (" << mm->a << "," << mm->c << ")";
    reason = os.str();
    return std::nullopt;
  }
  OpTable g = std::get<OpTable>(std::move(c));
  if (!derives(g, f)) {
    reason = "candidate binary table does not derive the operation";
    return std::nullopt;
  }
  if (!g_class.admits(g)) {
    reason = "candidate binary table is outside the requested class " + g_class.to_string();
    return std::nullopt;
  }
  return g;
}

std::optional<std::pair<OpTable, Element>> try_neutral(const OpTable& f, ClassSpec g_class,
                                                       std::string& reason) {
  const auto neutral = neutral_elements(f);
  if (neutral.empty()) reason = "operation has no neutral element";
  for (Element e : neutral) {
    OpTable g = neutral_reduction(f, e);
    if (derives(g, f) && g_class.admits(g)) return std::pair{std::move(g), e};
    reason = "no neutral element yields a verified reduction";
  }
  return std::nullopt;
}

ReductionResult reduced(OpTable g, Strategy s, std::optional<Element> e = std::nullopt) {
  return ReductionResult{Reduced{std::move(g), s, e}, true};
}

ReductionResult irreducible(const OpTable& f, ClassSpec g_class) {
  return ReductionResult{Irreducible{g_class, ackerman_witness(f)}, false};
}

}  // namespace

ReductionResult reduce(const OpTable& f, const ReduceOptions& options) {
  require_arity(f, 2, "reduce");
  std::string reason;
  const ClassSpec g_class = options.g_class;
  const bool associative = static_cast<bool>(is_associative(f));

  switch (options.strategy) {
    case Strategy::candidate:
      if (auto g = try_candidate(f, g_class, reason)) return reduced(std::move(*g), Strategy::candidate);
      return {NotFound{Strategy::candidate, reason}, false};
    case Strategy::neutral:
      if (auto r = try_neutral(f, g_class, reason))
        return reduced(std::move(r->first), Strategy::neutral, r->second);
      return {NotFound{Strategy::neutral, reason}, false};
    case Strategy::adjoin: {
      if (!associative) return irreducible(f, g_class);
      const auto found = oracle_reduce(f, g_class, options.oracle);
      for (const OpTable& g : found.reductions) {
        if (auto back = reduce_through_adjoined(f, g)) return reduced(std::move(*back), Strategy::adjoin);
      }
      if (found.reductions.empty()) return irreducible(f, g_class);
      return {NotFound{Strategy::adjoin, "adjoined extension did not restrict to the operation"},
              false};
    }
    case Strategy::oracle: {
      if (!associative) return irreducible(f, g_class);
      auto found = oracle_reduce(f, g_class, options.oracle);
      if (found.reductions.empty()) return irreducible(f, g_class);
      return reduced(std::move(found.reductions.front()), Strategy::oracle);
    }
    case Strategy::automatic:
      break;
  }

  // Derived operations are always associative, so nothing else can reduce.
  if (!associative) return irreducible(f, g_class);
  if (auto g = try_candidate(f, g_class, reason)) return reduced(std::move(*g), Strategy::candidate);
  if (auto r = try_neutral(f, g_class, reason))
    return reduced(std::move(r->first), Strategy::neutral, r->second);
  auto found = oracle_reduce(f, g_class, options.oracle);
  if (!found.reductions.empty())
    return reduced(std::move(found.reductions.front()), Strategy::oracle);
  return irreducible(f, g_class);
}

std::optional<OpTable> extremal_witness(const OpTable& f, ExtremalMode mode) {
  const std::size_t m = f.size();
  constexpr auto kUnset = static_cast<Element>(-1);
  std::vector<Element> slots(m * m, kUnset);
  std::vector<Element> second(m * m, kUnset);
  const auto idx = f.indexer();
  std::vector<Element> t(f.arity(), 0);
  std::size_t k = 0;
  do {
    const auto [lo_it, hi_it] = std::minmax_element(t.begin(), t.end());
    const Element lo = *lo_it;
    const Element hi = *hi_it;
    const Element v = f.at(k++);
    Element& first = slots[lo * m + hi];
    if (first == kUnset) {
      first = v;
    } else if (first != v) {
      if (mode == ExtremalMode::global_minmax || lo == hi) return std::nullopt;
      Element& other = second[lo * m + hi];
      if (other == kUnset) {
        other = v;
      } else if (other != v) {
        return std::nullopt;  // three distinct values in one (min, max) group
      }
    }
  } while (idx.next(t));

  std::vector<Element> g(m * m);
  for (Element a = 0; a < m; ++a) {
    for (Element c = a; c < m; ++c) {
      const Element v = slots[a * m + c];
      // Only unary tables leave off-diagonal groups empty.
      const Element low_high = v == kUnset ? a : v;
      const Element other = second[a * m + c];
      g[a * m + c] = low_high;
      g[c * m + a] = (a == c || other == kUnset) ? low_high : other;
    }
  }
  return OpTable(f.carrier(), 2, std::move(g));
}

bool explains_extremally(const OpTable& f, const OpTable& g, ExtremalMode mode) {
  if (g.arity() != 2 || g.size() != f.size()) return false;
  const std::size_t m = f.size();
  const auto idx = f.indexer();
  std::vector<Element> t(f.arity(), 0);
  std::size_t k = 0;
  do {
    const auto [lo, hi] = std::minmax_element(t.begin(), t.end());
    const Element v = f.at(k++);
    const Element forward = g.at(*lo * m + *hi);
    const Element backward = g.at(*hi * m + *lo);
    if (mode == ExtremalMode::global_minmax ? v != forward : (v != forward && v != backward))
      return false;
  } while (idx.next(t));
  return true;
}

}  // namespace narylab
