#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "narylab/class_spec.hpp"
#include "narylab/op_table.hpp"

namespace narylab {

enum class Dedup { none, dual };

struct EnumerationOptions {
  /// Largest admissible cell count m^n.
  std::size_t budget = 81;
  unsigned threads = 1;
  Dedup dedup = Dedup::none;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Throws BudgetExceeded when m^n is over budget; also validates m >= 1, n >= 2.
void check_budget(std::size_t m, std::size_t n, std::size_t budget);

/// Streams every table on {0..m-1} of arity n satisfying spec, in lex order of
/// tables. The order is the same for any thread count.
void enumerate_each(std::size_t m, std::size_t n, ClassSpec spec, const EnumerationOptions& options,
                    const std::function<void(const OpTable&)>& sink);

[[nodiscard]] std::vector<OpTable> enumerate(std::size_t m, std::size_t n, ClassSpec spec,
                                             const EnumerationOptions& options = {});

/// Number of tables enumerate() would yield without deduplication.
[[nodiscard]] std::uint64_t count(std::size_t m, std::size_t n, ClassSpec spec,
                                  const EnumerationOptions& options = {});

}  // namespace narylab
