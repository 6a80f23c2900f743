#include "narylab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "narylab/audit.hpp"
#include "narylab/class_spec.hpp"
#include "narylab/enumeration.hpp"
#include "narylab/properties.hpp"
#include "narylab/reduction.hpp"
#include "narylab/table_io.hpp"

#ifndef NARYLAB_DEFAULT_EXPECTED
#define NARYLAB_DEFAULT_EXPECTED "data/expected_discrepancies.json"
#endif

namespace narylab::cli {

namespace {

using Json = nlohmann::ordered_json;

/// Raised for bad input that the parser could not catch; maps to exit 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Globals {
  std::string format = "json";
  unsigned threads = 0;
  std::size_t budget = 81;
};

/// A report plus its exit code. Text rendering is produced alongside the JSON
/// so both formats come from the same data.
struct Outcome {
  Json report;
  std::vector<std::string> text;
  int code = 0;
};

unsigned parse_thread_count(std::string_view text) {
  unsigned value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || value == 0)
    throw UsageError("NARYLAB_THREADS must be a positive integer, got '" + std::string(text) + "'");
  return value;
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1U, std::thread::hardware_concurrency());
}

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  buf << in.rdbuf();
  return buf.str();
}

TableDocument load(const std::string& path) { return parse_table(read_input(path)); }

std::string join(std::span<const Element> xs, const char* sep = ",") {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? sep : "") << xs[i];
  return os.str();
}

std::string tuple_text(std::span<const Element> xs) { return "(" + join(xs) + ")"; }

std::string table_text(const OpTable& t) {
  return "m=" + std::to_string(t.size()) + " n=" + std::to_string(t.arity()) + " [" +
         join(t.values(), " ") + "]";
}

/// Carries labels over to a result on the same carrier.
TableDocument same_carrier(const TableDocument& source, OpTable table) {
  TableDocument doc{std::move(table), {}, {}};
  if (doc.table.size() == source.table.size()) doc.labels = source.labels;
  return doc;
}

Json witness_json(const Witness& w) {
  Json j;
  j["kind"] = to_string(w.kind);
  j["tuple"] = w.tuple;
  if (w.position != 0) j["position"] = w.position;
  j["values"] = w.values;
  if (!w.points.empty()) j["points"] = w.points;
  return j;
}

std::string witness_text(const Witness& w) {
  std::string s = std::string(to_string(w.kind)) + " fails at " + tuple_text(w.tuple);
  if (w.position != 0) s += " position " + std::to_string(w.position);
  if (!w.points.empty()) s += " points " + tuple_text(w.points);
  s += " values " + tuple_text(w.values);
  return s;
}

/// Moves the single unplaced element to chain position `pos`, keeping the
/// relative order of the others.
OpTable place_unplaced(const TableDocument& doc, Element pos) {
  if (doc.unplaced.size() != 1)
    throw UsageError("--place needs exactly one unplaced element in the document");
  const std::size_t m = doc.table.size();
  if (pos >= m) throw UsageError("--place must lie in 0.." + std::to_string(m - 1));
  const Element u = doc.unplaced.front();
  std::vector<Element> relabel(m);
  for (Element x = 0, next = 0; x < m; ++x) {
    if (x == u) continue;
    if (next == pos) ++next;
    relabel[x] = next++;
  }
  relabel[u] = pos;
  const auto idx = doc.table.indexer();
  std::vector<Element> values(doc.table.cell_count());
  std::vector<Element> t(doc.table.arity());
  std::vector<Element> moved(doc.table.arity());
  for (std::size_t k = 0; k < values.size(); ++k) {
    idx.unindex(k, t);
    for (std::size_t i = 0; i < t.size(); ++i) moved[i] = relabel[t[i]];
    values[idx.index(moved)] = relabel[doc.table.at(k)];
  }
  return OpTable(doc.table.carrier(), doc.table.arity(), std::move(values));
}

// ---- check ----

Outcome cmd_check(const TableDocument& doc, const std::string& props_text,
                  std::optional<Element> place) {
  const ClassSpec requested = ClassSpec::parse(props_text);
  const bool everything = requested.empty();
  const ClassSpec props = everything ? ClassSpec::parse("a,i,s,q,d,m,e") : requested;
  const bool order_dependent =
      !everything && (props.has(Flag::nondecreasing) || props.has(Flag::monotone));
  OpTable f = doc.table;
  if (place) {
    f = place_unplaced(doc, *place);
  } else if (order_dependent && !doc.unplaced.empty()) {
    throw UsageError("element " + std::to_string(doc.unplaced.front()) +
                     " has no chain position; order-dependent checks need --place");
  }

  Outcome o;
  o.report["command"] = "check";
  o.report["table"] = to_json(doc);
  if (place) o.report["placed"] = to_json(f);
  o.report["props"] = props.to_string();
  if (everything && !place && !doc.unplaced.empty()) o.report["skipped"] = "d,m";
  Json results = Json::object();
  bool all = true;

  struct Entry {
    Flag flag;
    const char* key;
    Verdict (*fn)(const OpTable&);
  };
  static constexpr Entry kEntries[] = {
      {Flag::assoc, "associative", &is_associative},
      {Flag::idem, "idempotent", &is_idempotent},
      {Flag::symm, "symmetric", &is_symmetric},
      {Flag::quasitrivial, "quasitrivial", &is_quasitrivial},
      {Flag::nondecreasing, "nondecreasing", &is_nondecreasing},
      {Flag::monotone, "monotone", &is_monotone},
  };
  for (const auto& e : kEntries) {
    if (!props.has(e.flag)) continue;
    if (everything && !place && !doc.unplaced.empty() &&
        (e.flag == Flag::nondecreasing || e.flag == Flag::monotone))
      continue;
    const Verdict v = e.fn(f);
    Json r;
    r["holds"] = v.holds();
    if (!v.holds()) r["witness"] = witness_json(v.witness());
    results[e.key] = r;
    all = all && v.holds();
    o.text.push_back(std::string(e.key) + ": " + (v.holds() ? "holds" : witness_text(v.witness())));
  }
  if (props.has(Flag::has_neutral)) {
    const auto neutral = neutral_elements(f);
    Json r;
    r["holds"] = !neutral.empty();
    r["elements"] = neutral;
    results["has_neutral"] = r;
    all = all && !neutral.empty();
    o.text.push_back("has_neutral: " + (neutral.empty() ? std::string("fails") : "elements " + join(neutral)));
  }
  o.report["results"] = results;
  o.report["all_hold"] = all;
  o.code = all ? 0 : 1;
  return o;
}

// ---- reduce / oracle ----

Outcome cmd_reduce(const TableDocument& doc, const std::string& strategy_text,
                   const std::string& g_class_text, const Globals& g) {
  ReduceOptions options;
  options.strategy = parse_strategy(strategy_text);
  options.g_class = ClassSpec::parse(g_class_text);
  options.oracle.threads = g.threads;
  const ReductionResult result = reduce(doc.table, options);

  Outcome o;
  o.report["command"] = "reduce";
  o.report["table"] = to_json(doc);
  o.report["requested"] = to_string(options.strategy);
  o.report["g_class"] = options.g_class.to_string();
  if (const auto* r = std::get_if<Reduced>(&result.outcome)) {
    o.report["outcome"] = "reduced";
    o.report["strategy"] = to_string(r->strategy);
    if (r->neutral) o.report["neutral"] = *r->neutral;
    o.report["binary"] = to_json(same_carrier(doc, r->binary));
    if (r->strategy == Strategy::adjoin) {
      const auto ext = adjoin_neutral_binary(r->binary);
      o.report["extension"] = to_json(TableDocument{ext.table(), {}, {ext.adjoined()}});
    }
    o.text.push_back("reduced via " + std::string(to_string(r->strategy)) +
                     (r->neutral ? " (e = " + std::to_string(*r->neutral) + ")" : std::string()));
    o.text.push_back("binary " + table_text(r->binary));
  } else if (const auto* ir = std::get_if<Irreducible>(&result.outcome)) {
    o.report["outcome"] = "irreducible";
    o.report["evidence"] = "oracle-exhaustion";
    o.report["ackerman"] =
        ir->ackerman ? Json(std::vector<Element>{ir->ackerman->b1, ir->ackerman->b2}) : Json(nullptr);
    o.text.push_back("irreducible within class " + ir->searched.to_string());
    if (ir->ackerman)
      o.text.push_back("odd-count witness (" + std::to_string(ir->ackerman->b1) + "," +
                       std::to_string(ir->ackerman->b2) + ")");
    o.code = 1;
  } else {
    const auto& nf = std::get<NotFound>(result.outcome);
    o.report["outcome"] = "not-found";
    o.report["strategy"] = to_string(nf.strategy);
    o.report["reason"] = nf.reason;
    o.text.push_back("strategy " + std::string(to_string(nf.strategy)) + " found nothing: " + nf.reason);
    o.code = 1;
  }
  o.report["verified"] = result.verified;
  return o;
}

Outcome cmd_oracle(const TableDocument& doc, const std::string& g_class_text, const Globals& g) {
  const ClassSpec g_class = ClassSpec::parse(g_class_text);
  const OracleResult result = oracle_reduce(doc.table, g_class, OracleOptions{4, g.threads});
  Outcome o;
  o.report["command"] = "oracle";
  o.report["table"] = to_json(doc);
  o.report["g_class"] = g_class.to_string();
  o.report["count"] = result.reductions.size();
  Json list = Json::array();
  for (const auto& r : result.reductions) {
    list.push_back(to_json(same_carrier(doc, r)));
    o.text.push_back("binary " + table_text(r));
  }
  o.report["reductions"] = list;
  if (!result.note.empty()) {
    o.report["note"] = result.note;
    o.text.push_back(result.note);
  }
  o.text.insert(o.text.begin(), std::to_string(result.reductions.size()) + " reduction(s)");
  o.code = result.reductions.empty() ? 1 : 0;
  return o;
}

// ---- derive / arity-reduce / extremal ----

Outcome cmd_derive(const TableDocument& doc, std::size_t arity) {
  if (doc.table.arity() != 2) throw UsageError("derive expects a binary table");
  if (arity < 2) throw UsageError("--arity must be at least 2");
  Outcome o;
  o.report["command"] = "derive";
  o.report["binary"] = to_json(doc);
  o.report["arity"] = arity;
  try {
    const OpTable f = derive(doc.table, arity);
    o.report["table"] = to_json(same_carrier(doc, f));
    o.text.push_back(table_text(f));
  } catch (const NotAssociative& e) {
    o.report["error"] = "not-associative";
    o.report["witness"] = witness_json(e.witness());
    o.text.push_back(witness_text(e.witness()));
    o.code = 1;
  }
  return o;
}

Outcome cmd_arity_reduce(const TableDocument& doc) {
  Outcome o;
  o.report["command"] = "arity-reduce";
  o.report["table"] = to_json(doc);
  auto result = arity_reduce(doc.table);
  if (auto* h = std::get_if<OpTable>(&result)) {
    o.report["reduced"] = to_json(same_carrier(doc, *h));
    o.text.push_back(table_text(*h));
  } else {
    const auto& mm = std::get<PlacementMismatch>(result);
    Json j;
    j["placements"] = std::vector<std::size_t>{mm.first, mm.second};
    j["tuple"] = mm.tuple;
    j["values"] = std::vector<Element>{mm.first_value, mm.second_value};
    o.report["mismatch"] = j;
    o.text.push_back("doubling coordinate " + std::to_string(mm.first) + " vs " +
                     std::to_string(mm.second) + " of " + tuple_text(mm.tuple) + " gives " +
                     std::to_string(mm.first_value) + " vs " + std::to_string(mm.second_value));
    o.code = 1;
  }
  return o;
}

Outcome cmd_extremal(const TableDocument& doc, const std::string& mode_text) {
  const ExtremalMode mode = mode_text == "global" ? ExtremalMode::global_minmax : ExtremalMode::either;
  Outcome o;
  o.report["command"] = "extremal";
  o.report["table"] = to_json(doc);
  o.report["mode"] = mode_text;
  const auto g = extremal_witness(doc.table, mode);
  o.report["extremal"] = g.has_value();
  if (g) {
    o.report["binary"] = to_json(same_carrier(doc, *g));
    o.text.push_back("extremal, binary " + table_text(*g));
  } else {
    o.text.push_back("not extremal");
    o.code = 1;
  }
  return o;
}

// ---- enumerate ----

Outcome cmd_enumerate(std::size_t m, std::size_t n, const std::string& class_text,
                      const std::string& dedup_text, bool count_only, const Globals& g) {
  const ClassSpec spec = ClassSpec::parse(class_text);
  const Dedup dedup = dedup_text == "dual" ? Dedup::dual : Dedup::none;
  const EnumerationOptions options{g.budget, g.threads, dedup};
  Outcome o;
  if (count_only && dedup == Dedup::none) {
    const auto c = count(m, n, spec, options);
    o.report["count"] = c;
    o.text.push_back(std::to_string(c));
    return o;
  }
  const auto tables = enumerate(m, n, spec, options);
  if (count_only) {
    o.report["count"] = tables.size();
    o.text.push_back(std::to_string(tables.size()));
    return o;
  }
  o.report["command"] = "enumerate";
  o.report["m"] = m;
  o.report["n"] = n;
  o.report["class"] = spec.to_string();
  o.report["dedup"] = dedup_text;
  o.report["count"] = tables.size();
  Json list = Json::array();
  for (const auto& t : tables) {
    list.push_back(to_json(t));
    o.text.push_back(join(t.values(), " "));
  }
  o.report["tables"] = list;
  return o;
}

// ---- audit ----

Json finding_json(const Finding& f, bool expected) {
  Json j;
  j["table"] = to_json(f.table);
  j["code"] = f.code;
  j["detail"] = f.detail;
  if (f.witness) j["witness"] = witness_json(*f.witness);
  j["expected"] = expected;
  return j;
}

Outcome cmd_audit(const std::string& theorem, bool all, std::size_t m, std::size_t n,
                  const std::string& expected_path, const Globals& g, std::ostream& err) {
  if (all == !theorem.empty()) throw UsageError("give exactly one of --theorem ID and --all");
  std::vector<TheoremId> ids;
  if (all) {
    for (const auto& info : all_theorems()) ids.push_back(info.id);
  } else {
    ids.push_back(parse_theorem(theorem));
  }
  const auto expected = load_expected_discrepancies(expected_path);
  const AuditOptions options{g.budget, g.threads, 4};

  Outcome o;
  o.report["command"] = "audit";
  o.report["m"] = m;
  o.report["n"] = n;
  Json audits = Json::array();
  bool acceptable = true;
  for (TheoremId id : ids) {
    const auto& info = theorem_info(id);
    const AuditReport report = audit(id, m, n, options);
    const AuditComparison cmp = compare_with_expected(report, expected);
    const std::string status = !cmp.acceptable()            ? "unexpected"
                               : report.violations.empty() ? "clean"
                                                           : "expected";
    acceptable = acceptable && cmp.acceptable();

    Json a;
    a["theorem"] = info.name;
    a["summary"] = info.summary;
    a["hypothesis"] = info.hypothesis.to_string();
    a["report_only"] = info.report_only;
    a["instances"] = report.instances;
    a["status"] = status;
    if (!report.note.empty()) a["note"] = report.note;
    Json violations = Json::array();
    for (const auto& v : report.violations) {
      const bool is_expected =
          std::any_of(cmp.expected.begin(), cmp.expected.end(),
                      [&](const Finding& e) { return e.table == v.table && e.code == v.code; });
      violations.push_back(finding_json(v, is_expected));
    }
    a["violations"] = violations;
    Json missing = Json::array();
    for (const auto& e : cmp.missing) {
      Json j;
      j["table"] = to_json(e.table);
      j["code"] = e.code;
      missing.push_back(j);
    }
    a["missing"] = missing;
    audits.push_back(a);

    std::string line = std::string(info.name) + ": " + status + ", " +
                       std::to_string(report.instances) + " instances, " +
                       std::to_string(report.violations.size()) + " violations";
    if (!report.note.empty()) line += " (" + report.note + ")";
    o.text.push_back(line);
    for (const auto& v : report.violations)
      o.text.push_back("  " + v.code + " on " + table_text(v.table) + ": " + v.detail);
    for (const auto& e : cmp.missing)
      o.text.push_back("  missing expected " + e.code + " on " + table_text(e.table));

    // Timings vary run to run, so they stay out of the report.
    err << "audit " << info.name << " m=" << m << " n=" << n << ": "
        << std::chrono::duration<double>(report.runtime).count() << " s\n";
  }
  o.report["audits"] = audits;
  o.report["acceptable"] = acceptable;
  o.code = acceptable ? 0 : 1;
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite n-ary semigroup toolkit: properties, reductions, enumeration, audits",
               "narylab"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--format", g.format, "Report format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  auto* threads_opt =
      app.add_option("--threads", g.threads,
                     "Worker threads (default: $NARYLAB_THREADS, else hardware concurrency)")
          ->check(CLI::PositiveNumber);
  app.add_option("--budget", g.budget, "Largest table size m^n to enumerate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string file;
  std::string props;
  std::optional<Element> place;
  std::string strategy = "auto";
  std::string g_class = "none";
  std::size_t arity = 0;
  std::string mode = "either";
  std::size_t m = 0;
  std::size_t n = 0;
  std::string class_text = "none";
  std::string dedup = "none";
  bool count_only = false;
  std::string theorem;
  bool all = false;
  std::string expected_path = NARYLAB_DEFAULT_EXPECTED;

  auto* check = app.add_subcommand("check", "Evaluate property predicates on a table");
  check->add_option("file", file, "Table file (JSON or text; - for stdin)")->required();
  check->add_option("--props", props, "Comma-separated flags from a,i,s,q,d,m,e (default: all)");
  check->add_option("--place", place, "Chain position for the unplaced element");

  auto* reduce_cmd = app.add_subcommand("reduce", "Find a binary operation that derives the table");
  reduce_cmd->add_option("file", file, "Table file")->required();
  reduce_cmd->add_option("--strategy", strategy)
      ->check(CLI::IsMember({"auto", "candidate", "neutral", "adjoin", "oracle"}))
      ->capture_default_str();
  reduce_cmd->add_option("--g-class", g_class, "Restrict the binary operation to this class")
      ->capture_default_str();

  auto* derive_cmd = app.add_subcommand("derive", "n-fold a binary associative table");
  derive_cmd->add_option("file", file, "Binary table file")->required();
  derive_cmd->add_option("--arity", arity, "Target arity")->required();

  auto* arity_cmd = app.add_subcommand("arity-reduce", "Reduce arity by one by doubling an argument");
  arity_cmd->add_option("file", file, "Table file")->required();

  auto* extremal_cmd = app.add_subcommand("extremal", "Test whether F depends only on min and max");
  extremal_cmd->add_option("file", file, "Table file")->required();
  extremal_cmd->add_option("--mode", mode)
      ->check(CLI::IsMember({"either", "global"}))
      ->capture_default_str();

  auto* enumerate_cmd = app.add_subcommand("enumerate", "List every table in a class");
  enumerate_cmd->add_option("--m", m, "Chain size")->required()->check(CLI::PositiveNumber);
  enumerate_cmd->add_option("--n", n, "Arity")->required()->check(CLI::Range(2, 64));
  enumerate_cmd->add_option("--class", class_text, "Required properties")->capture_default_str();
  enumerate_cmd->add_option("--dedup", dedup)
      ->check(CLI::IsMember({"none", "dual"}))
      ->capture_default_str();
  enumerate_cmd->add_flag("--count-only", count_only, "Print only the count");

  auto* oracle_cmd = app.add_subcommand("oracle", "All binary reductions by exhaustive search");
  oracle_cmd->add_option("file", file, "Table file")->required();
  oracle_cmd->add_option("--g-class", g_class)->capture_default_str();

  auto* audit_cmd = app.add_subcommand("audit", "Check a stated conclusion on every table in its class");
  audit_cmd->add_option("--theorem", theorem, "Statement identifier");
  audit_cmd->add_flag("--all", all, "Run every audit");
  audit_cmd->add_option("--m", m, "Chain size")->required()->check(CLI::PositiveNumber);
  audit_cmd->add_option("--n", n, "Arity")->required()->check(CLI::Range(2, 64));
  audit_cmd->add_option("--expected", expected_path, "Expected-discrepancy file")
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "narylab: " << e.what() << "\n";
    return 2;
  }
  if (threads_opt->count() == 0) {
    if (const char* env = std::getenv("NARYLAB_THREADS")) {
      try {
        g.threads = parse_thread_count(env);
      } catch (const UsageError& e) {
        err << "narylab: " << e.what() << "\n";
        return 2;
      }
    }
  }
  g.threads = resolve_threads(g.threads);

  Outcome o;
  try {
    if (check->parsed()) {
      o = cmd_check(load(file), props, place);
    } else if (reduce_cmd->parsed()) {
      o = cmd_reduce(load(file), strategy, g_class, g);
    } else if (derive_cmd->parsed()) {
      o = cmd_derive(load(file), arity);
    } else if (arity_cmd->parsed()) {
      o = cmd_arity_reduce(load(file));
    } else if (extremal_cmd->parsed()) {
      o = cmd_extremal(load(file), mode);
    } else if (enumerate_cmd->parsed()) {
      o = cmd_enumerate(m, n, class_text, dedup, count_only, g);
    } else if (oracle_cmd->parsed()) {
      o = cmd_oracle(load(file), g_class, g);
    } else {
      o = cmd_audit(theorem, all, m, n, expected_path, g, err);
    }
  } catch (const Error& e) {
    err << "narylab: " << e.what() << "\n";
    return 2;
  }

  if (g.format == "json") {
    out << o.report.dump() << "\n";
  } else {
    for (const auto& line : o.text) out << line << "\n";
  }
  return o.code;
}

}  // namespace narylab::cli
