#pragma once

// Backtracking search over operation tables with incremental constraint checks.
// Shared by the enumerator (n-ary tables in a class) and the reduction oracle
// (binary tables whose n-fold equals a target).

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "narylab/class_spec.hpp"
#include "narylab/op_table.hpp"

namespace narylab::detail {

struct SearchProblem {
  std::size_t m = 1;
  std::size_t n = 2;
  // Structural flags are pruned during search; has_neutral is ignored here.
  ClassSpec spec;
  // When set, n must be 2 and every complete table G satisfies
  // fold(G, target.arity()) == target.
  const OpTable* fold_target = nullptr;
};

class TableSearch {
 public:
  explicit TableSearch(const SearchProblem& problem);

  /// Receives each complete table in lex order; return false to stop.
  using Visitor = std::function<bool(std::span<const Element>)>;

  struct Pin {
    std::size_t cell;
    Element value;
  };

  /// Runs the search; with a pin, only tables having that cell value are visited.
  void run(const Visitor& visit, std::optional<Pin> pin = std::nullopt);

  /// First cell with a genuine choice, used to split the tree among workers.
  [[nodiscard]] std::optional<std::size_t> split_cell() const;
  [[nodiscard]] const std::vector<Element>& static_domain(std::size_t cell) const {
    return domains_[cell];
  }
  [[nodiscard]] std::size_t cell_count() const noexcept { return cells_; }

 private:
  struct AssocCheck {
    std::uint32_t inner_left;
    std::uint32_t outer_left_rest;
    std::uint32_t inner_right;
    std::uint32_t outer_right_rest;
    std::uint32_t outer_right_stride;
  };
  struct FoldCheck {
    std::uint32_t tuple;
    Element expected;
  };
  // forced: every other cell of the check is known, so `cell` must equal `value`.
  enum class Status { ok, conflict, blocked, forced };
  struct Outcome {
    Status status;
    std::uint32_t cell = 0;
    Element value = 0;
  };

  Outcome evaluate(std::uint32_t check) const;
  bool locally_consistent(std::size_t cell, Element v) const;
  bool admissible(std::size_t cell, Element v) const;
  bool propagate(std::size_t cell);
  void undo(std::size_t mark, std::size_t forced_mark);
  bool descend(std::size_t cell, const Visitor& visit);

  std::size_t m_;
  std::size_t n_;
  std::size_t cells_;
  ClassSpec spec_;
  const OpTable* target_;
  std::vector<std::size_t> strides_;
  std::uint32_t outer_left_stride_ = 0;

  std::vector<Element> digits_;                 // cells_ x n_
  std::vector<std::vector<Element>> domains_;   // static per-cell domains
  std::vector<std::int64_t> symmetric_source_;  // sorted-tuple cell or -1

  std::vector<AssocCheck> assoc_;
  std::vector<FoldCheck> fold_;
  std::vector<Element> fold_digits_;
  std::size_t fold_arity_ = 0;

  std::vector<std::int32_t> values_;
  std::vector<std::vector<std::uint32_t>> watch_;
  std::vector<std::uint32_t> trail_;
  std::vector<std::uint32_t> forced_;  // cells assigned by propagation, undone on backtrack
  std::vector<std::uint32_t> queue_;
  std::optional<Pin> pin_;
};

}  // namespace narylab::detail
