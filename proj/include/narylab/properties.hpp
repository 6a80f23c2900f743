#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "narylab/op_table.hpp"

namespace narylab {

enum class Property {
  associativity,
  idempotency,
  symmetry,
  quasitriviality,
  nondecreasing,
  monotonicity,
  neutral,
};

[[nodiscard]] std::string_view to_string(Property p) noexcept;

/// Evidence that a table violates a property.
///
/// Field use per kind (positions are 1-based):
///   associativity:   tuple = (2n-1)-tuple, position = i (arguments ahead of the inner block),
///                    values = {leftmost grouping, i-th grouping}
///   idempotency:     tuple = n*x, values = {F(n*x)}
///   symmetry:        tuple = t, position = p (swap p,p+1), values = {F(t), F(swapped t)}
///   quasitriviality: tuple = t, values = {F(t)}
///   nondecreasing:   tuple = t, position = coordinate raised by one, values = {F(t), F(raised t)}
///   monotonicity:    tuple = t with the varied coordinate set to 0, position = coordinate,
///                    points = three section points x<y<z, values = section values there
///   neutral:         tuple = (e..x..e), position = where x sits, values = {F(tuple)};
///                    points = {e, x}
struct Witness {
  Property kind{};
  std::vector<Element> tuple;
  std::size_t position = 0;
  std::vector<Element> values;
  std::vector<Element> points;

  friend bool operator==(const Witness&, const Witness&) = default;
};

/// True when re-evaluating the witness on f reproduces the recorded violation.
[[nodiscard]] bool reproduces(const OpTable& f, const Witness& w);

/// Verdict of one predicate: holds, or fails with a witness.
class Verdict {
 public:
  Verdict() = default;
  explicit Verdict(Witness w) : failure_(std::move(w)) {}

  [[nodiscard]] bool holds() const noexcept { return !failure_.has_value(); }
  explicit operator bool() const noexcept { return holds(); }
  [[nodiscard]] const Witness& witness() const { return failure_.value(); }
  [[nodiscard]] const std::optional<Witness>& failure() const noexcept { return failure_; }

  friend bool operator==(const Verdict&, const Verdict&) = default;

 private:
  std::optional<Witness> failure_;
};

class NotAssociative : public Error {
 public:
  explicit NotAssociative(Witness w);
  [[nodiscard]] const Witness& witness() const noexcept { return witness_; }

 private:
  Witness witness_;
};

// Each scan visits tuples in lex order (x_1 most significant) and returns the
// first violation found, so witnesses are reproducible.

[[nodiscard]] Verdict is_associative(const OpTable& f);
[[nodiscard]] Verdict is_idempotent(const OpTable& f);
[[nodiscard]] Verdict is_symmetric(const OpTable& f);
[[nodiscard]] Verdict is_quasitrivial(const OpTable& f);
[[nodiscard]] Verdict is_nondecreasing(const OpTable& f);
/// Sections are read nonstrictly: a constant section is both preserving and reversing.
[[nodiscard]] Verdict is_monotone(const OpTable& f);

/// Every e with F(e,..,e,x,e,..,e) = x for all x and all positions.
[[nodiscard]] std::vector<Element> neutral_elements(const OpTable& f);
/// Why e is not neutral, or nullopt when it is.
[[nodiscard]] std::optional<Witness> neutral_failure(const OpTable& f, Element e);

struct PropertyReport {
  Verdict associative;
  Verdict idempotent;
  Verdict symmetric;
  Verdict quasitrivial;
  Verdict nondecreasing;
  Verdict monotone;
  std::vector<Element> neutral;

  [[nodiscard]] const Verdict& verdict(Property p) const;
  friend bool operator==(const PropertyReport&, const PropertyReport&) = default;
};

[[nodiscard]] PropertyReport classify(const OpTable& f);

}  // namespace narylab
