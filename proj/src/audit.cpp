#include "narylab/audit.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "narylab/enumeration.hpp"
#include "narylab/parallel.hpp"
#include "narylab/reduction.hpp"

namespace narylab {

namespace {

constexpr ClassSpec kAQD{Flag::assoc, Flag::quasitrivial, Flag::nondecreasing};
constexpr ClassSpec kAQSD{Flag::assoc, Flag::quasitrivial, Flag::symm, Flag::nondecreasing};
constexpr ClassSpec kAQ{Flag::assoc, Flag::quasitrivial};
constexpr ClassSpec kAIM{Flag::assoc, Flag::idem, Flag::monotone};
constexpr ClassSpec kAIME{Flag::assoc, Flag::idem, Flag::monotone, Flag::has_neutral};
constexpr ClassSpec kAIMES{Flag::assoc, Flag::idem, Flag::monotone, Flag::has_neutral, Flag::symm};

constexpr std::array<TheoremInfo, 18> kTheorems{{
    {TheoremId::L41, "L41", "F(a,(n-1)c) = F((n-1)a,c) for all a, c", kAIN, false},
    {TheoremId::R42, "R42", "F(k a,(n-k) c) does not depend on k in 1..n-1", kAIN, false},
    {TheoremId::L42G, "L42G", "G(a,c) = F(a,(n-1)c) is associative, idempotent, nondecreasing", kAIN,
     false},
    {TheoremId::T45, "T45", "ternary F is derived from the unique G(a,c) = F(a,c,c) = F(a,a,c)", kAIN,
     false},
    {TheoremId::L46, "L46", "all doubling placements of an (n-1)-tuple agree", kAIN, false},
    {TheoremId::C47, "C47", "doubling reduction H is well defined, idempotent, nondecreasing", kAIN,
     false},
    {TheoremId::L48, "L48", "doubling reduction H is associative", kAIN, false},
    {TheoremId::T49, "T49",
     "F is derived from the unique idempotent G(a,c) = F(a,(n-1)c), which lies in the same class",
     kAIN, false},
    {TheoremId::C410, "C410", "associative idempotent monotone F is reducible iff nondecreasing", kAIM,
     true},
    {TheoremId::T33QS, "T33QS",
     "G(x,y) = F((n-1)x,y) = F(x,(n-1)y) reduces F and F(t) = G(min t, max t)", kAQSD, false},
    {TheoremId::T38QA, "T38QA", "associative quasitrivial nondecreasing F is reducible", kAQD, true},
    {TheoremId::T37AKK, "T37AKK", "an odd-count witness pair rules out a binary reduction", kAQ, true},
    {TheoremId::DM34, "DM34",
     "F is reducible iff it has a neutral element or one can be adjoined", ClassSpec{Flag::assoc},
     true},
    {TheoremId::P35, "P35",
     "G(a,b) = F(a,(n-2)e,b) reduces F and is associative, idempotent, monotone with neutral e",
     kAIME, true},
    {TheoremId::C35ND, "C35ND", "associative idempotent monotone F with a neutral element is nondecreasing",
     kAIME, true},
    {TheoremId::OBS_SYM, "OBS-SYM", "G(a,b) = F(a,(n-2)e,b) is symmetric when F is", kAIMES, false},
    {TheoremId::L36NEQT, "L36NEQT",
     "associative idempotent monotone F with a neutral element is quasitrivial", kAIME, true},
    {TheoremId::D51_PROJ, "D51-PROJ", "the first-coordinate projection is not extremal (m >= 3)",
     ClassSpec{}, false},
}};

std::string tuple_text(std::span<const Element> t) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << ")";
  return os.str();
}

Finding finding(const OpTable& f, std::string code, std::string detail,
                std::optional<Witness> w = std::nullopt) {
  return Finding{f, std::move(code), std::move(detail), std::move(w)};
}

std::optional<Finding> first_failure(const OpTable& f, const OpTable& g, ClassSpec required,
                                     std::string_view subject) {
  struct Check {
    Flag flag;
    Verdict (*fn)(const OpTable&);
    std::string_view word;
  };
  const std::array<Check, 6> checks{{
      {Flag::assoc, &is_associative, "associative"},
      {Flag::idem, &is_idempotent, "idempotent"},
      {Flag::symm, &is_symmetric, "symmetric"},
      {Flag::quasitrivial, &is_quasitrivial, "quasitrivial"},
      {Flag::nondecreasing, &is_nondecreasing, "nondecreasing"},
      {Flag::monotone, &is_monotone, "monotone"},
  }};
  for (const auto& c : checks) {
    if (!required.has(c.flag)) continue;
    if (auto v = c.fn(g); !v) {
      return finding(f, std::string(subject) + "-not-" + std::string(c.word),
                     std::string(subject) + " table " + describe(g) + " is not " +
                         std::string(c.word),
                     v.witness());
    }
  }
  return std::nullopt;
}

// First tuple on which derive(g, n) and f differ.
std::optional<Finding> derive_mismatch(const OpTable& f, const OpTable& g, std::string_view code) {
  if (!is_associative(g)) {
    return finding(f, std::string(code), "binary table " + describe(g) + " is not associative");
  }
  const OpTable folded = fold_unchecked(g, f.arity());
  for (std::size_t k = 0; k < f.cell_count(); ++k) {
    if (folded.at(k) != f.at(k)) {
      std::ostringstream os;
      os << "fold of " << describe(g) << " gives " << folded.at(k) << " at "
         << tuple_text(f.indexer().unindex(k)) << ", table has " << f.at(k);
      return finding(f, std::string(code), os.str());
    }
  }
  return std::nullopt;
}

std::optional<Finding> candidate_or_finding(const OpTable& f, OpTable& out) {
  auto c = candidate_binary(f);
  if (const auto* mm = std::get_if<CandidateMismatch>(&c)) {
    std::ostringstream os;
    os << "F(a,(n-1)c) = " << mm->right_heavy << " but F((n-1)a,c) = " << mm->left_heavy
       << " at (a,c) = (" << mm->a << "," << mm->c << ")";
    return finding(f, "heavy-sides-differ", os.str());
  }
  out = std::get<OpTable>(std::move(c));
  return std::nullopt;
}

std::optional<Finding> unique_among(const OpTable& f, const OpTable& g, ClassSpec g_class,
                                    const AuditOptions& options) {
  const auto found = oracle_reduce(f, g_class, {options.oracle_cap, 1});
  if (found.reductions.size() == 1 && found.reductions.front() == g) return std::nullopt;
  std::ostringstream os;
  os << "expected exactly one " << g_class.to_string() << " reduction " << describe(g) << ", found "
     << found.reductions.size();
  return finding(f, "reduction-not-unique", os.str());
}

std::optional<Finding> arity_reduction(const OpTable& f, std::optional<OpTable>& h) {
  auto r = arity_reduce(f);
  if (const auto* mm = std::get_if<PlacementMismatch>(&r)) {
    std::ostringstream os;
    os << "doubling position " << mm->first << " gives " << mm->first_value << ", position "
       << mm->second << " gives " << mm->second_value << " at " << tuple_text(mm->tuple);
    return finding(f, "doubling-placements-differ", os.str());
  }
  h = std::get<OpTable>(std::move(r));
  return std::nullopt;
}

std::optional<Finding> check_l41(const OpTable& f) {
  OpTable g = f;
  return candidate_or_finding(f, g);
}

std::optional<Finding> check_r42(const OpTable& f) {
  const std::size_t n = f.arity();
  std::vector<Element> t(n);
  for (Element a = 0; a < f.size(); ++a) {
    for (Element c = 0; c < f.size(); ++c) {
      Element reference = 0;
      for (std::size_t k = 1; k < n; ++k) {
        std::fill(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(k), a);
        std::fill(t.begin() + static_cast<std::ptrdiff_t>(k), t.end(), c);
        const Element v = f(t);
        if (k == 1) {
          reference = v;
        } else if (v != reference) {
          std::ostringstream os;
          os << "F(1*a,(n-1)*c) = " << reference << " but F(" << k << "*a," << n - k
             << "*c) = " << v << " at (a,c) = (" << a << "," << c << ")";
          return finding(f, "split-value-varies", os.str());
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<Finding> check_l42g(const OpTable& f) {
  OpTable g = f;
  if (auto bad = candidate_or_finding(f, g)) return bad;
  return first_failure(f, g, kAIN, "binary");
}

std::optional<Finding> check_t45(const OpTable& f, const AuditOptions& options) {
  OpTable g = f;
  if (auto bad = candidate_or_finding(f, g)) return bad;
  if (auto bad = derive_mismatch(f, g, "not-derived")) return bad;
  return unique_among(f, g, ClassSpec{Flag::idem}, options);
}

std::optional<Finding> check_l46(const OpTable& f) {
  std::optional<OpTable> h;
  return arity_reduction(f, h);
}

std::optional<Finding> check_c47(const OpTable& f) {
  std::optional<OpTable> h;
  if (auto bad = arity_reduction(f, h)) return bad;
  return first_failure(f, *h, ClassSpec{Flag::idem, Flag::nondecreasing}, "reduced");
}

std::optional<Finding> check_l48(const OpTable& f) {
  std::optional<OpTable> h;
  if (auto bad = arity_reduction(f, h)) return bad;
  return first_failure(f, *h, ClassSpec{Flag::assoc}, "reduced");
}

std::optional<Finding> check_t49(const OpTable& f, const AuditOptions& options) {
  OpTable g = f;
  if (auto bad = candidate_or_finding(f, g)) return bad;
  if (auto bad = first_failure(f, g, kAIN, "binary")) return bad;
  if (auto bad = derive_mismatch(f, g, "not-derived")) return bad;
  return unique_among(f, g, ClassSpec{Flag::idem}, options);
}

std::optional<Finding> check_c410(const OpTable& f, const AuditOptions& options) {
  const bool reducible = !oracle_reduce(f, {}, {options.oracle_cap, 1}).reductions.empty();
  const Verdict nd = is_nondecreasing(f);
  if (reducible && !nd) {
    return finding(f, "reducible-not-nondecreasing",
                   "a binary reduction exists but the operation is not nondecreasing", nd.witness());
  }
  if (!reducible && nd) {
    return finding(f, "nondecreasing-not-reducible",
                   "the operation is nondecreasing but no binary reduction exists");
  }
  return std::nullopt;
}

std::optional<Finding> check_t33qs(const OpTable& f) {
  OpTable g = f;
  if (auto bad = candidate_or_finding(f, g)) return bad;
  if (auto bad = derive_mismatch(f, g, "not-derived")) return bad;
  if (!explains_extremally(f, g, ExtremalMode::global_minmax)) {
    return finding(f, "not-extremal", "F(t) differs from G(min t, max t) for " + describe(g));
  }
  return std::nullopt;
}

std::optional<Finding> check_t38qa(const OpTable& f, const AuditOptions& options) {
  if (oracle_reduce(f, {}, {options.oracle_cap, 1}).reductions.empty()) {
    return finding(f, "not-reducible", "no associative binary table derives the operation");
  }
  return std::nullopt;
}

std::optional<Finding> check_t37akk(const OpTable& f, const AuditOptions& options) {
  const auto w = ackerman_witness(f);
  if (!w) return std::nullopt;
  const auto found = oracle_reduce(f, {}, {options.oracle_cap, 1});
  if (found.reductions.empty()) return std::nullopt;
  std::ostringstream os;
  os << "odd-count pair (" << w->b1 << "," << w->b2 << ") exists, yet "
     << describe(found.reductions.front()) << " derives the operation";
  return finding(f, "witness-but-reducible", os.str());
}

std::optional<Finding> check_dm34(const OpTable& f, const AuditOptions& options) {
  const auto neutral = neutral_elements(f);
  for (Element e : neutral) {
    if (auto bad = derive_mismatch(f, neutral_reduction(f, e), "neutral-reduction-fails")) {
      return bad;
    }
  }
  const auto found = oracle_reduce(f, {}, {options.oracle_cap, 1});
  if (found.reductions.empty()) {
    if (!neutral.empty()) {
      return finding(f, "neutral-but-irreducible", "neutral element present but no reduction exists");
    }
    return std::nullopt;
  }
  if (!reduce_through_adjoined(f, found.reductions.front())) {
    return finding(f, "adjoin-fails",
                   "adjoining an identity to " + describe(found.reductions.front()) +
                       " does not give a neutral extension restricting to the operation");
  }
  return std::nullopt;
}

std::optional<Finding> check_p35(const OpTable& f) {
  for (Element e : neutral_elements(f)) {
    const OpTable g = neutral_reduction(f, e);
    if (auto bad = derive_mismatch(f, g, "not-derived")) return bad;
    if (auto bad = first_failure(f, g, kAIM, "binary")) return bad;
    if (auto w = neutral_failure(g, e)) {
      return finding(f, "binary-loses-neutral",
                     "element " + std::to_string(e) + " is not neutral for " + describe(g), *w);
    }
  }
  return std::nullopt;
}

std::optional<Finding> check_c35nd(const OpTable& f) {
  if (auto v = is_nondecreasing(f); !v) {
    return finding(f, "not-nondecreasing", "operation is not nondecreasing", v.witness());
  }
  return std::nullopt;
}

std::optional<Finding> check_obs_sym(const OpTable& f) {
  for (Element e : neutral_elements(f)) {
    if (auto bad = first_failure(f, neutral_reduction(f, e), ClassSpec{Flag::symm}, "binary")) {
      return bad;
    }
  }
  return std::nullopt;
}

std::optional<Finding> check_l36neqt(const OpTable& f) {
  if (auto v = is_quasitrivial(f); !v) {
    return finding(f, "not-quasitrivial", "operation is not quasitrivial", v.witness());
  }
  return std::nullopt;
}

std::optional<Finding> check_d51(const OpTable& f) {
  for (auto mode : {ExtremalMode::either, ExtremalMode::global_minmax}) {
    if (auto g = extremal_witness(f, mode)) {
      return finding(f, "projection-extremal",
                     std::string("extremal in ") +
                         (mode == ExtremalMode::either ? "either" : "global") + " mode via " +
                         describe(*g));
    }
  }
  return std::nullopt;
}

OpTable first_projection(std::size_t m, std::size_t n) {
  return OpTable::tabulate(Chain(m), n, [](std::span<const Element> t) { return t[0]; });
}

}  // namespace

std::span<const TheoremInfo> all_theorems() { return kTheorems; }

const TheoremInfo& theorem_info(TheoremId id) {
  for (const auto& t : kTheorems)
    if (t.id == id) return t;
  throw Error("unknown theorem id");
}

std::string_view theorem_name(TheoremId id) { return theorem_info(id).name; }

TheoremId parse_theorem(std::string_view name) {
  for (const auto& t : kTheorems)
    if (t.name == name) return t.id;
  throw Error("unknown theorem id '" + std::string(name) + "'");
}

bool applies(TheoremId id, std::size_t m, std::size_t n) {
  switch (id) {
    case TheoremId::T45: return n == 3;
    case TheoremId::L46:
    case TheoremId::C47:
    case TheoremId::L48: return n >= 3;
    case TheoremId::T37AKK: return n % 2 == 1;
    case TheoremId::D51_PROJ: return m >= 3 && n >= 3;
    default: return true;
  }
}

std::optional<Finding> check_conclusion(TheoremId id, const OpTable& f, const AuditOptions& options) {
  switch (id) {
    case TheoremId::L41: return check_l41(f);
    case TheoremId::R42: return check_r42(f);
    case TheoremId::L42G: return check_l42g(f);
    case TheoremId::T45: return check_t45(f, options);
    case TheoremId::L46: return check_l46(f);
    case TheoremId::C47: return check_c47(f);
    case TheoremId::L48: return check_l48(f);
    case TheoremId::T49: return check_t49(f, options);
    case TheoremId::C410: return check_c410(f, options);
    case TheoremId::T33QS: return check_t33qs(f);
    case TheoremId::T38QA: return check_t38qa(f, options);
    case TheoremId::T37AKK: return check_t37akk(f, options);
    case TheoremId::DM34: return check_dm34(f, options);
    case TheoremId::P35: return check_p35(f);
    case TheoremId::C35ND: return check_c35nd(f);
    case TheoremId::OBS_SYM: return check_obs_sym(f);
    case TheoremId::L36NEQT: return check_l36neqt(f);
    case TheoremId::D51_PROJ: return check_d51(f);
  }
  throw Error("unknown theorem id");
}

AuditReport audit(TheoremId id, std::size_t m, std::size_t n, const AuditOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  check_budget(m, n, options.budget);
  AuditReport report;
  report.id = id;
  report.m = m;
  report.n = n;
  if (!applies(id, m, n)) {
    std::ostringstream os;
    switch (id) {
      case TheoremId::T45: os << "stated for n = 3 only"; break;
      case TheoremId::T37AKK: os << "stated for odd n only"; break;
      case TheoremId::D51_PROJ: os << "stated for m >= 3 and n >= 3 only"; break;
      default: os << "stated for n >= 3 only"; break;
    }
    report.note = os.str();
    report.runtime = std::chrono::steady_clock::now() - start;
    return report;
  }
  std::vector<OpTable> instances;
  if (id == TheoremId::D51_PROJ) {
    instances.push_back(first_projection(m, n));
  } else {
    instances = enumerate(m, n, theorem_info(id).hypothesis,
                          EnumerationOptions{options.budget, options.threads, Dedup::none});
  }
  report.instances = instances.size();
  auto results = parallel_map(instances.size(), options.threads,
                              [&](std::size_t i) { return check_conclusion(id, instances[i], options); });
  for (auto& r : results)
    if (r) report.violations.push_back(std::move(*r));
  report.runtime = std::chrono::steady_clock::now() - start;
  return report;
}

std::vector<ExpectedDiscrepancy> parse_expected_discrepancies(std::string_view json) {
  std::vector<ExpectedDiscrepancy> out;
  try {
    const auto doc = nlohmann::json::parse(json);
    for (const auto& item : doc.at("discrepancies")) {
      const auto m = item.at("m").get<std::size_t>();
      const auto n = item.at("n").get<std::size_t>();
      OpTable table(Chain(m), n, item.at("table").get<std::vector<Element>>());
      out.push_back({parse_theorem(item.at("theorem").get<std::string>()), m, n, std::move(table),
                     item.at("code").get<std::string>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed expected-discrepancy file: ") + e.what());
  }
  return out;
}

std::vector<ExpectedDiscrepancy> load_expected_discrepancies(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open expected-discrepancy file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_expected_discrepancies(buf.str());
}

AuditComparison compare_with_expected(const AuditReport& report,
                                      std::span<const ExpectedDiscrepancy> expected) {
  AuditComparison out;
  const bool report_only = theorem_info(report.id).report_only;
  std::vector<const ExpectedDiscrepancy*> relevant;
  for (const auto& e : expected) {
    if (e.id == report.id && e.m == report.m && e.n == report.n) relevant.push_back(&e);
  }
  std::vector<bool> seen(relevant.size(), false);
  for (const auto& v : report.violations) {
    bool matched = false;
    if (report_only) {
      for (std::size_t i = 0; i < relevant.size(); ++i) {
        if (relevant[i]->table == v.table && relevant[i]->code == v.code) {
          seen[i] = true;
          matched = true;
        }
      }
    }
    (matched ? out.expected : out.unexpected).push_back(v);
  }
  for (std::size_t i = 0; i < relevant.size(); ++i)
    if (!seen[i]) out.missing.push_back(*relevant[i]);
  return out;
}

}  // namespace narylab
