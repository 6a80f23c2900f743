#pragma once

#include <chrono>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "narylab/class_spec.hpp"
#include "narylab/op_table.hpp"
#include "narylab/properties.hpp"

namespace narylab {

/// One decidable check per statement being audited. The identifiers are the
/// command-line names (see theorem_name()).
enum class TheoremId {
  L41,
  R42,
  L42G,
  T45,
  L46,
  C47,
  L48,
  T49,
  C410,
  T33QS,
  T38QA,
  T37AKK,
  DM34,
  P35,
  C35ND,
  OBS_SYM,
  L36NEQT,
  D51_PROJ,
};

struct TheoremInfo {
  TheoremId id;
  std::string_view name;       // command-line identifier, e.g. "OBS-SYM"
  std::string_view summary;    // one-line description of the conclusion
  ClassSpec hypothesis;
  /// Report-only checks surface violations for comparison against the
  /// expected-discrepancy list; the others must be clean.
  bool report_only;
};

[[nodiscard]] std::span<const TheoremInfo> all_theorems();
[[nodiscard]] const TheoremInfo& theorem_info(TheoremId id);
[[nodiscard]] std::string_view theorem_name(TheoremId id);
[[nodiscard]] TheoremId parse_theorem(std::string_view name);

/// A table on which a conclusion failed.
struct Finding {
  OpTable table;
  std::string code;    // stable machine-readable kind, e.g. "reducible-not-nondecreasing"
  std::string detail;  // human-readable explanation
  std::optional<Witness> witness;
};

struct AuditOptions {
  std::size_t budget = 81;
  unsigned threads = 1;
  std::size_t oracle_cap = 4;
};

struct AuditReport {
  TheoremId id;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t instances = 0;
  std::vector<Finding> violations;  // lex order of tables
  std::chrono::nanoseconds runtime{0};
  std::string note;  // set when the hypothesis excludes this (m, n)
};

/// Whether (m, n) lies inside the statement's stated range (e.g. n = 3 only).
[[nodiscard]] bool applies(TheoremId id, std::size_t m, std::size_t n);

/// Evaluates the conclusion on one table that satisfies the hypothesis.
[[nodiscard]] std::optional<Finding> check_conclusion(TheoremId id, const OpTable& f,
                                                      const AuditOptions& options = {});

/// Enumerates the hypothesis class at (m, n) and checks every member.
[[nodiscard]] AuditReport audit(TheoremId id, std::size_t m, std::size_t n,
                                const AuditOptions& options = {});

struct ExpectedDiscrepancy {
  TheoremId id;
  std::size_t m = 0;
  std::size_t n = 0;
  OpTable table;
  std::string code;
};

/// Parses the expected-discrepancy data file (JSON).
[[nodiscard]] std::vector<ExpectedDiscrepancy> parse_expected_discrepancies(std::string_view json);
[[nodiscard]] std::vector<ExpectedDiscrepancy> load_expected_discrepancies(const std::string& path);

struct AuditComparison {
  std::vector<Finding> expected;    // violations matched by an expected entry
  std::vector<Finding> unexpected;  // violations not on the list (or any hard-tier violation)
  std::vector<ExpectedDiscrepancy> missing;  // listed for this (id, m, n) but not observed

  [[nodiscard]] bool acceptable() const noexcept { return unexpected.empty() && missing.empty(); }
};

[[nodiscard]] AuditComparison compare_with_expected(const AuditReport& report,
                                                    std::span<const ExpectedDiscrepancy> expected);

}  // namespace narylab
