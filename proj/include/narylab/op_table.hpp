#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace narylab {

/// An element of a finite chain, identified by its rank 0..m-1.
using Element = std::uint32_t;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The chain {0, ..., m-1} under the natural order.
class Chain {
 public:
  explicit Chain(std::size_t size);

  [[nodiscard]] std::size_t size() const noexcept { return size_; }
  [[nodiscard]] bool contains(Element x) const noexcept { return x < size_; }

  /// Order reversal x -> m-1-x.
  [[nodiscard]] Element reverse(Element x) const noexcept {
    return static_cast<Element>(size_ - 1 - x);
  }

  friend bool operator==(const Chain&, const Chain&) = default;

 private:
  std::size_t size_;
};

/// m^n, throwing when the product does not fit a table we could allocate.
std::size_t checked_power(std::size_t m, std::size_t n);

/// Mixed-radix addressing of X^n with x_1 most significant.
class TupleIndex {
 public:
  TupleIndex(std::size_t m, std::size_t n);

  [[nodiscard]] std::size_t radix() const noexcept { return m_; }
  [[nodiscard]] std::size_t length() const noexcept { return n_; }
  [[nodiscard]] std::size_t count() const noexcept { return count_; }

  /// Weight of coordinate i (0-based): m^(n-1-i).
  [[nodiscard]] std::size_t stride(std::size_t i) const { return strides_.at(i); }

  [[nodiscard]] std::size_t index(std::span<const Element> t) const;
  [[nodiscard]] std::vector<Element> unindex(std::size_t k) const;
  void unindex(std::size_t k, std::span<Element> out) const;

  /// Odometer step in lex order; returns false after the last tuple.
  bool next(std::span<Element> t) const;

 private:
  std::size_t m_;
  std::size_t n_;
  std::size_t count_;
  std::vector<std::size_t> strides_;
};

/// Dense table of an n-ary operation on a finite chain.
///
/// Values are stored row-major with x_1 most significant, so the cell of
/// (x_1, ..., x_n) is sum x_i * m^(n-i). The layout is part of the file
/// format and must not change.
class OpTable {
 public:
  OpTable(Chain carrier, std::size_t arity, std::vector<Element> values);

  /// Tabulates fn over all tuples in lex order.
  static OpTable tabulate(Chain carrier, std::size_t arity,
                          const std::function<Element(std::span<const Element>)>& fn);

  [[nodiscard]] const Chain& carrier() const noexcept { return carrier_; }
  [[nodiscard]] std::size_t size() const noexcept { return carrier_.size(); }
  [[nodiscard]] std::size_t arity() const noexcept { return arity_; }
  [[nodiscard]] std::size_t cell_count() const noexcept { return values_.size(); }
  [[nodiscard]] const std::vector<Element>& values() const noexcept { return values_; }
  [[nodiscard]] TupleIndex indexer() const { return TupleIndex(size(), arity_); }

  /// Checked evaluation; throws on arity mismatch or out-of-range coordinates.
  [[nodiscard]] Element eval(std::span<const Element> t) const;
  [[nodiscard]] Element eval(std::initializer_list<Element> t) const {
    return eval(std::span<const Element>(t.begin(), t.size()));
  }

  /// Unchecked access by flat index.
  [[nodiscard]] Element at(std::size_t flat) const noexcept { return values_[flat]; }

  /// Unchecked evaluation for hot loops.
  [[nodiscard]] Element operator()(std::span<const Element> t) const noexcept;

  friend bool operator==(const OpTable&, const OpTable&) = default;

  /// Orders by (m, n, values lexicographically).
  friend std::strong_ordering operator<=>(const OpTable& a, const OpTable& b);

 private:
  Chain carrier_;
  std::size_t arity_;
  std::vector<Element> values_;
};

/// F(x_1..x_n) = r(F(r(x_1)..r(x_n))) where r reverses the chain.
[[nodiscard]] OpTable dual(const OpTable& f);

/// n-fold left fold of an associative binary table. Throws NotAssociative
/// (see properties.hpp) when g fails binary associativity.
[[nodiscard]] OpTable derive(const OpTable& g, std::size_t n);

/// derive() without the associativity precondition; used by oracles that
/// must compare against every binary table.
[[nodiscard]] OpTable fold_unchecked(const OpTable& g, std::size_t n);

/// Short human-readable description such as "m=2 n=3 [0,1,1,0,1,0,0,1]".
[[nodiscard]] std::string describe(const OpTable& f);

}  // namespace narylab
