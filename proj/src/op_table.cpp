#include "narylab/op_table.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "narylab/properties.hpp"

namespace narylab {

namespace {

// Large enough for any table the search code can realistically touch.
constexpr std::size_t kMaxCells = std::size_t{1} << 28;

}  // namespace

Chain::Chain(std::size_t size) : size_(size) {
  if (size == 0) throw Error("chain must have at least one element");
  if (size > std::numeric_limits<Element>::max()) throw Error("chain too large");
}

std::size_t checked_power(std::size_t m, std::size_t n) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (m != 0 && r > kMaxCells / m) {
      std::ostringstream os;
      os << "table with " << m << "^" << n << " cells is too large";
      throw Error(os.str());
    }
    r *= m;
  }
  return r;
}

TupleIndex::TupleIndex(std::size_t m, std::size_t n)
    : m_(m), n_(n), count_(checked_power(m, n)), strides_(n) {
  std::size_t s = 1;
  for (std::size_t i = n; i-- > 0;) {
    strides_[i] = s;
    s *= m;
  }
}

std::size_t TupleIndex::index(std::span<const Element> t) const {
  std::size_t k = 0;
  for (Element x : t) k = k * m_ + x;
  return k;
}

std::vector<Element> TupleIndex::unindex(std::size_t k) const {
  std::vector<Element> t(n_);
  unindex(k, t);
  return t;
}

void TupleIndex::unindex(std::size_t k, std::span<Element> out) const {
  for (std::size_t i = n_; i-- > 0;) {
    out[i] = static_cast<Element>(k % m_);
    k /= m_;
  }
}

bool TupleIndex::next(std::span<Element> t) const {
  for (std::size_t i = n_; i-- > 0;) {
    if (t[i] + 1 < m_) {
      ++t[i];
      return true;
    }
    t[i] = 0;
  }
  return false;
}

OpTable::OpTable(Chain carrier, std::size_t arity, std::vector<Element> values)
    : carrier_(carrier), arity_(arity), values_(std::move(values)) {
  if (arity_ == 0) throw Error("arity must be at least 1");
  const std::size_t expected = checked_power(carrier_.size(), arity_);
  if (values_.size() != expected) {
    std::ostringstream os;
    os << "expected " << expected << " values, got " << values_.size();
    throw Error(os.str());
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!carrier_.contains(values_[k])) {
      std::ostringstream os;
      os << "value " << values_[k] << " at index " << k << " is outside 0.."
         << carrier_.size() - 1;
      throw Error(os.str());
    }
  }
}

OpTable OpTable::tabulate(Chain carrier, std::size_t arity,
                          const std::function<Element(std::span<const Element>)>& fn) {
  TupleIndex idx(carrier.size(), arity);
  std::vector<Element> values(idx.count());
  std::vector<Element> t(arity, 0);
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] = fn(t);
    idx.next(t);
  }
  return OpTable(carrier, arity, std::move(values));
}

Element OpTable::eval(std::span<const Element> t) const {
  if (t.size() != arity_) {
    std::ostringstream os;
    os << "arity mismatch: table has arity " << arity_ << ", tuple has length " << t.size();
    throw Error(os.str());
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!carrier_.contains(t[i])) {
      std::ostringstream os;
      os << "coordinate " << i + 1 << " = " << t[i] << " is outside 0.." << size() - 1;
      throw Error(os.str());
    }
  }
  return (*this)(t);
}

Element OpTable::operator()(std::span<const Element> t) const noexcept {
  std::size_t k = 0;
  const std::size_t m = size();
  for (Element x : t) k = k * m + x;
  return values_[k];
}

std::strong_ordering operator<=>(const OpTable& a, const OpTable& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  if (auto c = a.arity_ <=> b.arity_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.values_.begin(), a.values_.end(),
                                                b.values_.begin(), b.values_.end());
}

OpTable dual(const OpTable& f) {
  const Chain& c = f.carrier();
  const auto idx = f.indexer();
  std::vector<Element> values(f.cell_count());
  // Reversing every coordinate maps flat index k to count-1-k.
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] = c.reverse(f.at(idx.count() - 1 - k));
  }
  return OpTable(c, f.arity(), std::move(values));
}

OpTable fold_unchecked(const OpTable& g, std::size_t n) {
  if (g.arity() != 2) throw Error("derive expects a binary table");
  if (n < 2) throw Error("derive expects a target arity of at least 2");
  if (n == 2) return g;
  const std::size_t m = g.size();
  return OpTable::tabulate(g.carrier(), n, [&](std::span<const Element> t) {
    Element acc = t[0];
    for (std::size_t i = 1; i < t.size(); ++i) acc = g.at(acc * m + t[i]);
    return acc;
  });
}

OpTable derive(const OpTable& g, std::size_t n) {
  if (g.arity() != 2) throw Error("derive expects a binary table");
  if (auto v = is_associative(g); !v) throw NotAssociative(v.witness());
  return fold_unchecked(g, n);
}

std::string describe(const OpTable& f) {
  std::ostringstream os;
  os << "m=" << f.size() << " n=" << f.arity() << " [";
  for (std::size_t k = 0; k < f.cell_count(); ++k) os << (k ? "," : "") << f.at(k);
  os << "]";
  return os.str();
}

}  // namespace narylab
