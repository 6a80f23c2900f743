#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "narylab/class_spec.hpp"
#include "narylab/op_table.hpp"
#include "narylab/properties.hpp"

namespace narylab {

/// F(a,(n-1)*c) and F((n-1)*a,c) differ at (a, c).
struct CandidateMismatch {
  Element a = 0;
  Element c = 0;
  Element right_heavy = 0;  // F(a,(n-1)*c)
  Element left_heavy = 0;   // F((n-1)*a,c)
  friend bool operator==(const CandidateMismatch&, const CandidateMismatch&) = default;
};

/// Doubling coordinate `first` and doubling coordinate `second` (1-based) of
/// the (n-1)-tuple give different values.
struct PlacementMismatch {
  std::size_t first = 0;
  std::size_t second = 0;
  std::vector<Element> tuple;
  Element first_value = 0;
  Element second_value = 0;
  friend bool operator==(const PlacementMismatch&, const PlacementMismatch&) = default;
};

/// G(a,c) = F(a,(n-1)*c), cross-checked against F((n-1)*a,c). Associativity
/// of G is not checked here; use reduce() for a verified answer.
[[nodiscard]] std::variant<OpTable, CandidateMismatch> candidate_binary(const OpTable& f);

/// G(a,b) = F(a,(n-2)*e,b) for a neutral element e.
[[nodiscard]] OpTable neutral_reduction(const OpTable& f, Element e);

class NotNeutral : public Error {
 public:
  NotNeutral(Element e, Witness w);
  [[nodiscard]] const Witness& witness() const noexcept { return witness_; }

 private:
  Witness witness_;
};

/// A binary table extended by a fresh identity element. The new element has
/// no position in the chain, so order-dependent predicates refuse the table
/// until a position is chosen with placed_at().
class AdjoinedTable {
 public:
  AdjoinedTable(OpTable table, Element adjoined);

  /// The extended table with the new element labelled m (order-free use only).
  [[nodiscard]] const OpTable& table() const noexcept { return table_; }
  [[nodiscard]] Element adjoined() const noexcept { return adjoined_; }

  /// Relabels so the new element sits at chain position `position` (0..m).
  [[nodiscard]] OpTable placed_at(Element position) const;

 private:
  OpTable table_;
  Element adjoined_;
};

class UnplacedElement : public Error {
 public:
  using Error::Error;
};

[[nodiscard]] AdjoinedTable adjoin_neutral_binary(const OpTable& g);

/// Order-dependent predicates on an adjoined table need a chain position.
[[nodiscard]] Verdict is_nondecreasing(const AdjoinedTable& g, std::optional<Element> position);
[[nodiscard]] Verdict is_monotone(const AdjoinedTable& g, std::optional<Element> position);

/// H(x_1..x_{n-1}) = F(2*x_1, x_2, ..., x_{n-1}), after checking that every
/// doubling placement agrees.
[[nodiscard]] std::variant<OpTable, PlacementMismatch> arity_reduce(const OpTable& f);

/// A pair b1 < b2 on which F returns the element occurring an odd number of times.
struct AckermanWitness {
  Element b1 = 0;
  Element b2 = 0;
  friend bool operator==(const AckermanWitness&, const AckermanWitness&) = default;
};

[[nodiscard]] std::optional<AckermanWitness> ackerman_witness(const OpTable& f);
[[nodiscard]] bool satisfies_ackerman(const OpTable& f, const AckermanWitness& w);

struct OracleOptions {
  std::size_t carrier_cap = 4;
  unsigned threads = 1;
};

struct OracleResult {
  std::vector<OpTable> reductions;  // lex order
  std::string note;
};

class CarrierCapExceeded : public Error {
 public:
  using Error::Error;
};

/// Every associative binary G in g_class with derive(G, n) == F.
[[nodiscard]] OracleResult oracle_reduce(const OpTable& f, ClassSpec g_class,
                                         const OracleOptions& options = {});

/// Extends g by a fresh identity, checks that the n-fold of the extension
/// restricts to f with the new element neutral, and reads the binary table
/// back through that element. Returns nullopt if g does not reduce f or any
/// step fails.
[[nodiscard]] std::optional<OpTable> reduce_through_adjoined(const OpTable& f, const OpTable& g);

enum class Strategy { automatic, candidate, neutral, adjoin, oracle };

[[nodiscard]] std::string_view to_string(Strategy s) noexcept;
[[nodiscard]] Strategy parse_strategy(std::string_view text);

struct Reduced {
  OpTable binary;
  Strategy strategy;
  std::optional<Element> neutral;  // set for the neutral strategy
};

/// No binary reduction exists (within the searched class).
struct Irreducible {
  ClassSpec searched;
  std::optional<AckermanWitness> ackerman;
};

/// A single requested strategy did not produce a verified reduction; this is
/// not a proof of irreducibility.
struct NotFound {
  Strategy strategy;
  std::string reason;
};

struct ReductionResult {
  std::variant<Reduced, Irreducible, NotFound> outcome;
  bool verified = false;

  [[nodiscard]] bool reduced() const noexcept { return std::holds_alternative<Reduced>(outcome); }
};

struct ReduceOptions {
  Strategy strategy = Strategy::automatic;
  ClassSpec g_class;
  OracleOptions oracle;
};

/// Strategy ladder: candidate, then each neutral element, then the oracle.
/// Every returned G satisfies derive(G, n) == F.
[[nodiscard]] ReductionResult reduce(const OpTable& f, const ReduceOptions& options = {});

enum class ExtremalMode { either, global_minmax };

/// G with F(t) = G(min t, max t) (global) or F(t) in {G(min,max), G(max,min)} (either).
[[nodiscard]] std::optional<OpTable> extremal_witness(const OpTable& f,
                                                      ExtremalMode mode = ExtremalMode::either);

/// Checks that g explains f in the given extremality mode.
[[nodiscard]] bool explains_extremally(const OpTable& f, const OpTable& g, ExtremalMode mode);

}  // namespace narylab
