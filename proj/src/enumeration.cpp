#include "narylab/enumeration.hpp"

#include <algorithm>
#include <sstream>

#include "narylab/parallel.hpp"
#include "narylab/properties.hpp"
#include "table_search.hpp"

namespace narylab {

void check_budget(std::size_t m, std::size_t n, std::size_t budget) {
  if (m == 0) throw Error("carrier size must be at least 1");
  if (n < 2) throw Error("arity must be at least 2");
  // Avoid overflow: stop multiplying once the budget is passed.
  std::size_t cells = 1;
  for (std::size_t i = 0; i < n; ++i) {
    cells *= m;
    if (cells > budget) {
      std::ostringstream os;
      os << "cell budget " << budget << " exceeded: " << m << "^" << n << " > " << budget;
      throw BudgetExceeded(os.str());
    }
  }
}

namespace {

bool passes_post_filters(const OpTable& f, ClassSpec spec, Dedup dedup) {
  if (spec.has(Flag::has_neutral) && neutral_elements(f).empty()) return false;
  if (dedup == Dedup::dual && dual(f) < f) return false;
  return true;
}

// Runs the search, either whole or split on the first free cell, and hands
// each subtree's raw tables to `consume` in lex order.
template <class Consume>
void search_partitioned(std::size_t m, std::size_t n, ClassSpec spec, unsigned threads,
                        Consume&& consume) {
  detail::SearchProblem problem{m, n, spec, nullptr};
  detail::TableSearch probe(problem);
  const auto split = probe.split_cell();
  if (effective_threads(threads) <= 1 || !split) {
    probe.run([&](std::span<const Element> values) {
      consume(values);
      return true;
    });
    return;
  }
  const auto& domain = probe.static_domain(*split);
  auto parts = parallel_map(domain.size(), threads, [&](std::size_t i) {
    detail::TableSearch search(problem);
    std::vector<std::vector<Element>> found;
    search.run(
        [&](std::span<const Element> values) {
          found.emplace_back(values.begin(), values.end());
          return true;
        },
        detail::TableSearch::Pin{*split, domain[i]});
    return found;
  });
  for (const auto& part : parts)
    for (const auto& values : part) consume(std::span<const Element>(values));
}

}  // namespace

void enumerate_each(std::size_t m, std::size_t n, ClassSpec spec, const EnumerationOptions& options,
                    const std::function<void(const OpTable&)>& sink) {
  check_budget(m, n, options.budget);
  const Chain chain(m);
  search_partitioned(m, n, spec, options.threads, [&](std::span<const Element> values) {
    OpTable f(chain, n, std::vector<Element>(values.begin(), values.end()));
    if (passes_post_filters(f, spec, options.dedup)) sink(f);
  });
}

std::vector<OpTable> enumerate(std::size_t m, std::size_t n, ClassSpec spec,
                               const EnumerationOptions& options) {
  std::vector<OpTable> out;
  enumerate_each(m, n, spec, options, [&](const OpTable& f) { out.push_back(f); });
  return out;
}

std::uint64_t count(std::size_t m, std::size_t n, ClassSpec spec,
                    const EnumerationOptions& options) {
  check_budget(m, n, options.budget);
  const Chain chain(m);
  const detail::SearchProblem problem{m, n, spec, nullptr};
  auto count_from = [&](std::optional<detail::TableSearch::Pin> pin) {
    detail::TableSearch search(problem);
    std::uint64_t total = 0;
    search.run(
        [&](std::span<const Element> values) {
          if (spec.has(Flag::has_neutral)) {
            OpTable f(chain, n, std::vector<Element>(values.begin(), values.end()));
            if (neutral_elements(f).empty()) return true;
          }
          ++total;
          return true;
        },
        pin);
    return total;
  };
  detail::TableSearch probe(problem);
  const auto split = probe.split_cell();
  if (effective_threads(options.threads) <= 1 || !split) return count_from(std::nullopt);
  const auto& domain = probe.static_domain(*split);
  const auto parts = parallel_map(domain.size(), options.threads, [&](std::size_t i) {
    return count_from(detail::TableSearch::Pin{*split, domain[i]});
  });
  std::uint64_t total = 0;
  for (auto c : parts) total += c;
  return total;
}

}  // namespace narylab
