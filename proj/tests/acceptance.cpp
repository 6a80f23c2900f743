// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "narylab/audit.hpp"
#include "narylab/cli.hpp"
#include "narylab/enumeration.hpp"
#include "narylab/properties.hpp"
#include "narylab/reduction.hpp"

#ifndef NARYLAB_DATA_DIR
#error "NARYLAB_DATA_DIR must point at the shipped data directory"
#endif

using namespace narylab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Collects sub-checks of one criterion; any failed sub-check fails the criterion.
class Criterion {
 public:
  explicit Criterion(int number, std::string title) : number_(number), title_(std::move(title)) {}

  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void note(const std::string& text) { notes_.push_back(text); }

  bool report() const {
    const bool ok = failures_.empty();
    std::printf("criterion %d: %s  %s\n", number_, ok ? "PASS" : "FAIL", title_.c_str());
    for (const auto& f : failures_) std::printf("    failed: %s\n", f.c_str());
    for (const auto& n : notes_) std::printf("    note: %s\n", n.c_str());
    std::fflush(stdout);
    return ok;
  }

 private:
  int number_;
  std::string title_;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string grid(std::size_t m, std::size_t n) {
  return "m=" + std::to_string(m) + " n=" + std::to_string(n);
}

std::string tables_text(const std::vector<OpTable>& ts) {
  std::string s = "{";
  for (std::size_t i = 0; i < ts.size(); ++i) s += (i ? ", " : "") + describe(ts[i]);
  return s + "}";
}

const std::pair<std::size_t, std::size_t> kMainGrids[] = {{2, 3}, {3, 3}, {2, 4}};

bool criterion1() {
  Criterion c(1, "main theorem audit (T49) with candidate round trip");
  for (auto [m, n] : kMainGrids) {
    const auto start = Clock::now();
    const auto r = audit(TheoremId::T49, m, n, {81, 4, 4});
    const double secs = seconds_since(start);
    c.expect(r.violations.empty(), "T49 violations at " + grid(m, n));
    const double limit = m == 2 ? 1.0 : 120.0;
    c.expect(secs < limit, "T49 runtime at " + grid(m, n) + " is " + std::to_string(secs) + " s");
    c.note("T49 " + grid(m, n) + ": " + std::to_string(r.instances) + " instances, " +
           std::to_string(r.violations.size()) + " violations, " + std::to_string(secs) + " s");
    for (const auto& f : enumerate(m, n, kAIN)) {
      const auto g = candidate_binary(f);
      const bool ok = std::holds_alternative<OpTable>(g) && derive(std::get<OpTable>(g), n) == f;
      c.expect(ok, "candidate round trip fails on " + describe(f));
    }
  }
  // Reference count: filter all 256 ternary tables on the 2-chain directly.
  std::size_t brute = 0;
  oracle::each_table(2, 3, [&](const oracle::Values& v) {
    if (oracle::member(v, 2, 3, fx::flags_of(kAIN))) ++brute;
  });
  const auto inst = audit(TheoremId::T49, 2, 3).instances;
  c.expect(brute == 4 && inst == 4, "instance count at m=2 n=3 is " + std::to_string(inst) +
                                        " (brute force " + std::to_string(brute) + ", expected 4)");
  return c.report();
}

bool criterion2() {
  Criterion c(2, "lemma suite (L41 R42 L42G L46 C47 L48 T45) clean");
  for (auto id : {TheoremId::L41, TheoremId::R42, TheoremId::L42G, TheoremId::L46, TheoremId::C47,
                  TheoremId::L48, TheoremId::T45}) {
    for (auto [m, n] : kMainGrids) {
      const auto r = audit(id, m, n, {81, 4, 4});
      c.expect(r.violations.empty(), std::string(theorem_name(id)) + " violations at " + grid(m, n));
      if (!r.note.empty())
        c.note(std::string(theorem_name(id)) + " at " + grid(m, n) + ": " + r.note);
    }
  }
  return c.report();
}

bool criterion3() {
  Criterion c(3, "bijection count for the AIN class");
  const std::pair<std::size_t, std::size_t> grids[] = {{2, 2}, {2, 3}, {3, 2}, {3, 3}, {2, 4}};
  for (auto [m, n] : grids) {
    const auto cn = count(m, n, kAIN);
    const auto c2 = count(m, 2, kAIN);
    c.expect(cn == c2, "count at " + grid(m, n) + " is " + std::to_string(cn) + ", binary count " +
                           std::to_string(c2));
    std::vector<OpTable> images;
    for (const auto& g : enumerate(m, 2, kAIN)) {
      const auto f = derive(g, n);
      const auto back = candidate_binary(f);
      c.expect(std::holds_alternative<OpTable>(back) && std::get<OpTable>(back) == g,
               "candidate does not invert derive for " + describe(g));
      images.push_back(f);
    }
    std::sort(images.begin(), images.end());
    c.expect(images == enumerate(m, n, kAIN), "derive is not onto the class at " + grid(m, n));
    c.note(grid(m, n) + ": " + std::to_string(cn) + " tables");
  }
  return c.report();
}

bool criterion4() {
  Criterion c(4, "quasitrivial theorems (T33QS, T38QA) clean");
  for (std::size_t m : {1, 2, 3}) {
    for (auto id : {TheoremId::T33QS, TheoremId::T38QA}) {
      const auto r = audit(id, m, 3, {81, 4, 4});
      c.expect(r.violations.empty(), std::string(theorem_name(id)) + " violations at " + grid(m, 3));
      c.note(std::string(theorem_name(id)) + " " + grid(m, 3) + ": " + std::to_string(r.instances) +
             " instances");
    }
  }
  return c.report();
}

bool criterion5() {
  Criterion c(5, "oracle exactness against naive filters");
  const auto start = Clock::now();
  // m = 2: every ternary table against all 16 binary tables.
  std::size_t disagreements = 0;
  oracle::each_table(2, 3, [&](const oracle::Values& v) {
    const auto f = fx::table(2, 3, v);
    std::vector<OpTable> naive;
    oracle::each_table(2, 2, [&](const oracle::Values& g) {
      if (oracle::associative(g, 2, 2) && oracle::fold(g, 2, 3) == v) naive.push_back(fx::table(2, 2, g));
    });
    if (oracle_reduce(f, ClassSpec{}).reductions != naive) ++disagreements;
  });
  c.expect(disagreements == 0, std::to_string(disagreements) + " of 256 ternary tables disagree at m=2");

  // m = 3: 100 sampled associative ternary tables against all 19683 binary tables.
  std::vector<std::pair<OpTable, oracle::Values>> binaries;
  oracle::each_table(3, 2, [&](const oracle::Values& g) {
    if (oracle::associative(g, 3, 2)) binaries.emplace_back(fx::table(3, 2, g), oracle::fold(g, 3, 3));
  });
  auto pool = enumerate(3, 3, ClassSpec{Flag::assoc});
  std::mt19937 rng(20261015);
  std::shuffle(pool.begin(), pool.end(), rng);
  if (pool.size() > 100) pool.erase(pool.begin() + 100, pool.end());
  std::size_t bad3 = 0;
  for (const auto& f : pool) {
    std::vector<OpTable> naive;
    for (const auto& [g, folded] : binaries)
      if (folded == f.values()) naive.push_back(g);
    if (oracle_reduce(f, ClassSpec{}).reductions != naive) ++bad3;
  }
  c.expect(pool.size() == 100, "only " + std::to_string(pool.size()) + " associative tables to sample");
  c.expect(bad3 == 0, std::to_string(bad3) + " of 100 sampled tables disagree at m=3");
  const double secs = seconds_since(start);
  c.expect(secs < 60.0, "runtime " + std::to_string(secs) + " s");
  c.note("sampled 100 of " + std::to_string(count(3, 3, ClassSpec{Flag::assoc})) +
         " associative ternary tables; " + std::to_string(secs) + " s total");
  return c.report();
}

bool criterion6() {
  Criterion c(6, "known-instance certificates for ternary parity");
  const auto xor3 = fx::xor_op(3);
  const auto xor2 = fx::xor_op(2);

  const auto w = ackerman_witness(xor3);
  c.expect(w && *w == AckermanWitness{0, 1}, "odd-count witness is not (0,1)");

  const auto unrestricted = oracle_reduce(xor3, ClassSpec{}).reductions;
  c.expect(unrestricted == std::vector<OpTable>{xor2},
           "unrestricted oracle returned " + tables_text(unrestricted) + ", criterion demands exactly {" +
               describe(xor2) + "}");
  for (const auto& g : unrestricted) {
    if (g != xor2) {
      c.note(describe(g) + " is associative: " + (is_associative(g).holds() ? "yes" : "no") +
             "; derive(.,3) equals xor3: " + (derive(g, 3) == xor3 ? "yes" : "no"));
    }
  }
  const auto quasi = oracle_reduce(xor3, ClassSpec{Flag::quasitrivial}).reductions;
  c.expect(quasi.empty(), "quasitrivial-restricted oracle returned " + tables_text(quasi));

  const auto nd = is_nondecreasing(xor3);
  c.expect(!nd.holds(), "nondecreasing holds");
  const Witness stated{Property::nondecreasing, {1, 0, 0}, 2, {1, 0}, {}};
  c.expect(reproduces(xor3, stated), "stated witness ((1,0,0), coord 2) does not reproduce");
  if (!nd.holds()) {
    const auto& got = nd.witness();
    c.expect(reproduces(xor3, got), "returned witness does not reproduce");
    std::ostringstream os;
    os << "returned (lex-least) witness ((";
    for (std::size_t i = 0; i < got.tuple.size(); ++i) os << (i ? "," : "") << got.tuple[i];
    os << "), coord " << got.position << "); stated witness ((1,0,0), coord 2) reproduces";
    c.note(os.str());
  }
  c.expect(is_monotone(xor3).holds(), "monotone fails");
  c.expect(neutral_elements(xor3) == std::vector<Element>{0, 1}, "neutral elements are not {0,1}");
  return c.report();
}

bool criterion7() {
  Criterion c(7, "expected-discrepancy audit at m=2 n=3");
  const auto list = load_expected_discrepancies(std::string(NARYLAB_DATA_DIR) + "/expected_discrepancies.json");
  const auto xor3 = fx::xor_op(3);
  for (auto id : {TheoremId::C410, TheoremId::P35, TheoremId::C35ND, TheoremId::T37AKK}) {
    const auto r = audit(id, 2, 3);
    const auto cmp = compare_with_expected(r, list);
    const std::string name(theorem_name(id));
    c.expect(cmp.unexpected.empty(), name + ": " + std::to_string(cmp.unexpected.size()) + " unexpected");
    c.expect(cmp.missing.empty(), name + ": " + std::to_string(cmp.missing.size()) + " missing");
    std::size_t listed = 0;
    for (const auto& e : list) {
      if (e.id == id && e.m == 2 && e.n == 3) {
        ++listed;
        c.expect(e.table == xor3, name + " lists a table outside the parity family");
      }
    }
    c.expect(listed == 1 && r.violations.size() == 1,
             name + ": " + std::to_string(r.violations.size()) + " violations, " + std::to_string(listed) +
                 " listed");
    for (const auto& v : r.violations) c.note(name + ": " + v.code + " on " + describe(v.table));
  }
  return c.report();
}

bool criterion8() {
  Criterion c(8, "extremality");
  const auto p = fx::proj1(3, 3);
  c.expect(!extremal_witness(p, ExtremalMode::either), "projection extremal in the either mode");
  c.expect(!extremal_witness(p, ExtremalMode::global_minmax), "projection extremal in the global mode");
  const auto g = extremal_witness(fx::min_op(3, 3), ExtremalMode::global_minmax);
  c.expect(g && *g == fx::min_op(3, 2), "ternary min not explained by binary min");
  const auto r = audit(TheoremId::D51_PROJ, 3, 3);
  c.expect(r.instances == 1 && r.violations.empty(), "D51-PROJ audit not clean at m=3 n=3");
  return c.report();
}

bool criterion9() {
  Criterion c(9, "deterministic reports across thread counts");
  const std::string data = NARYLAB_DATA_DIR;
  const std::vector<std::vector<std::string>> commands = {
      {"check", data + "/tables/min3.json"},
      {"check", data + "/tables/xor3.json", "--props", "a,i,d"},
      {"reduce", data + "/tables/xor3.json"},
      {"reduce", data + "/tables/xor3.json", "--strategy", "adjoin"},
      {"derive", data + "/tables/xor2.json", "--arity", "4"},
      {"arity-reduce", data + "/tables/min3.json"},
      {"extremal", data + "/tables/proj1.json"},
      {"enumerate", "--m", "3", "--n", "3", "--class", "a"},
      {"enumerate", "--m", "3", "--n", "3", "--class", "a,i", "--dedup", "dual"},
      {"oracle", data + "/tables/xor3.json"},
      {"audit", "--all", "--m", "3", "--n", "3"},
      {"audit", "--all", "--m", "2", "--n", "4"},
  };
  for (const auto& base : commands) {
    std::vector<std::string> outputs;
    for (const char* threads : {"1", "8", "1", "8"}) {
      for (const char* format : {"json", "text"}) {
        auto args = base;
        args.insert(args.end(), {"--threads", threads, "--format", format});
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run(args, out, err);
        outputs.push_back(std::to_string(code) + "\n" + out.str());
      }
    }
    bool same = true;
    for (std::size_t i = 2; i < outputs.size(); ++i) same = same && outputs[i] == outputs[i % 2];
    std::string line;
    for (const auto& a : base) line += a.rfind(data, 0) == 0 ? a.substr(data.size() + 1) + " " : a + " ";
    c.expect(same, "output differs: " + line);
  }
  c.note(std::to_string(commands.size()) + " invocations, 2 formats, threads 1/8, repeated twice");
  return c.report();
}

}  // namespace

int main() {
  const std::vector<std::function<bool()>> criteria = {criterion1, criterion2, criterion3,
                                                       criterion4, criterion5, criterion6,
                                                       criterion7, criterion8, criterion9};
  std::size_t passed = 0;
  for (const auto& run : criteria) passed += run() ? 1 : 0;
  std::printf("%zu of %zu criteria passed\n", passed, criteria.size());
  return passed == criteria.size() ? 0 : 1;
}
