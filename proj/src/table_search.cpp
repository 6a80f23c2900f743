#include "table_search.hpp"

#include <algorithm>

namespace narylab::detail {

TableSearch::TableSearch(const SearchProblem& problem)
    : m_(problem.m),
      n_(problem.n),
      cells_(checked_power(problem.m, problem.n)),
      spec_(problem.spec),
      target_(problem.fold_target) {
  if (target_ != nullptr && n_ != 2) throw Error("fold targets require a binary search");
  const TupleIndex idx(m_, n_);
  strides_.resize(n_);
  for (std::size_t j = 0; j < n_; ++j) strides_[j] = idx.stride(j);

  digits_.resize(cells_ * n_);
  domains_.resize(cells_);
  symmetric_source_.assign(cells_, -1);
  std::vector<Element> t(n_, 0);
  for (std::size_t k = 0; k < cells_; ++k) {
    std::copy(t.begin(), t.end(), digits_.begin() + static_cast<std::ptrdiff_t>(k * n_));
    auto& dom = domains_[k];
    const bool diagonal = std::all_of(t.begin(), t.end(), [&](Element x) { return x == t[0]; });
    if (spec_.has(Flag::idem) && diagonal) {
      dom = {t[0]};
    } else if (spec_.has(Flag::quasitrivial)) {
      dom = t;
      std::sort(dom.begin(), dom.end());
      dom.erase(std::unique(dom.begin(), dom.end()), dom.end());
    } else {
      for (Element v = 0; v < m_; ++v) dom.push_back(v);
    }
    if (spec_.has(Flag::symm) && !std::is_sorted(t.begin(), t.end())) {
      auto s = t;
      std::sort(s.begin(), s.end());
      symmetric_source_[k] = static_cast<std::int64_t>(idx.index(s));
    }
    idx.next(t);
  }

  if (spec_.has(Flag::assoc) && n_ >= 2) {
    const std::size_t len = 2 * n_ - 1;
    const TupleIndex wide(m_, len);
    outer_left_stride_ = static_cast<std::uint32_t>(strides_[0]);
    std::vector<Element> x(len, 0);
    do {
      const auto inner_left = static_cast<std::uint32_t>(idx.index(std::span(x).subspan(0, n_)));
      std::uint32_t outer_left_rest = 0;
      for (std::size_t j = n_; j < len; ++j) outer_left_rest = outer_left_rest * m_ + x[j];
      for (std::size_t i = 1; i < n_; ++i) {
        AssocCheck c{};
        c.inner_left = inner_left;
        c.outer_left_rest = outer_left_rest;
        c.inner_right = static_cast<std::uint32_t>(idx.index(std::span(x).subspan(i, n_)));
        std::uint32_t rest = 0;
        for (std::size_t j = 0; j < i; ++j) rest = rest * m_ + x[j];
        rest *= static_cast<std::uint32_t>(m_);  // slot for the inner value
        for (std::size_t j = i + n_; j < len; ++j) rest = rest * m_ + x[j];
        c.outer_right_rest = rest;
        c.outer_right_stride = static_cast<std::uint32_t>(strides_[i]);
        // Identical groupings can never disagree.
        if (c.inner_left == c.inner_right && c.outer_left_rest == c.outer_right_rest &&
            outer_left_stride_ == c.outer_right_stride) {
          continue;
        }
        assoc_.push_back(c);
      }
    } while (wide.next(x));
  }

  if (target_ != nullptr) {
    if (target_->size() != m_) throw Error("fold target lives on a different chain");
    fold_arity_ = target_->arity();
    const TupleIndex tidx(m_, fold_arity_);
    fold_digits_.resize(target_->cell_count() * fold_arity_);
    std::vector<Element> u(fold_arity_, 0);
    for (std::size_t k = 0; k < target_->cell_count(); ++k) {
      std::copy(u.begin(), u.end(),
                fold_digits_.begin() + static_cast<std::ptrdiff_t>(k * fold_arity_));
      fold_.push_back({static_cast<std::uint32_t>(k), target_->at(k)});
      tidx.next(u);
    }
  }
}

std::optional<std::size_t> TableSearch::split_cell() const {
  for (std::size_t k = 0; k < cells_; ++k) {
    if (domains_[k].size() > 1 && symmetric_source_[k] < 0) return k;
  }
  return std::nullopt;
}

TableSearch::Outcome TableSearch::evaluate(std::uint32_t check) const {
  if (check < assoc_.size()) {
    const AssocCheck& c = assoc_[check];
    const std::int32_t a = values_[c.inner_left];
    if (a < 0) return {Status::blocked, c.inner_left};
    const std::int32_t b = values_[c.inner_right];
    if (b < 0) return {Status::blocked, c.inner_right};
    const std::uint32_t left_cell = static_cast<std::uint32_t>(a) * outer_left_stride_ + c.outer_left_rest;
    const std::uint32_t right_cell =
        static_cast<std::uint32_t>(b) * c.outer_right_stride + c.outer_right_rest;
    const std::int32_t left = values_[left_cell];
    const std::int32_t right = values_[right_cell];
    if (left < 0 && right < 0) return {Status::blocked, left_cell};
    if (left < 0) return {Status::forced, left_cell, static_cast<Element>(right)};
    if (right < 0) return {Status::forced, right_cell, static_cast<Element>(left)};
    return {left == right ? Status::ok : Status::conflict};
  }
  const FoldCheck& f = fold_[check - assoc_.size()];
  const Element* t = fold_digits_.data() + static_cast<std::size_t>(f.tuple) * fold_arity_;
  std::uint32_t acc = t[0];
  for (std::size_t j = 1; j < fold_arity_; ++j) {
    const auto cell = static_cast<std::uint32_t>(acc * m_ + t[j]);
    const std::int32_t v = values_[cell];
    if (v < 0) {
      if (j + 1 == fold_arity_) return {Status::forced, cell, f.expected};
      return {Status::blocked, cell};
    }
    acc = static_cast<std::uint32_t>(v);
  }
  return {acc == f.expected ? Status::ok : Status::conflict};
}

bool TableSearch::locally_consistent(std::size_t cell, Element v) const {
  if (symmetric_source_[cell] >= 0 &&
      values_[static_cast<std::size_t>(symmetric_source_[cell])] != static_cast<std::int32_t>(v)) {
    return false;
  }
  const Element* t = digits_.data() + cell * n_;
  if (spec_.has(Flag::nondecreasing)) {
    // Lower neighbours have smaller indices and are already assigned.
    for (std::size_t j = 0; j < n_; ++j) {
      if (t[j] > 0 && values_[cell - strides_[j]] > static_cast<std::int32_t>(v)) return false;
    }
  }
  if (spec_.has(Flag::monotone)) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (t[j] < 2) continue;
      const std::size_t base = cell - t[j] * strides_[j];
      bool up = true;
      bool down = true;
      std::int32_t prev = values_[base];
      for (std::size_t x = 1; x <= t[j]; ++x) {
        const std::int32_t cur =
            x == t[j] ? static_cast<std::int32_t>(v) : values_[base + x * strides_[j]];
        up = up && prev <= cur;
        down = down && prev >= cur;
        prev = cur;
      }
      if (!up && !down) return false;
    }
  }
  return true;
}

bool TableSearch::admissible(std::size_t cell, Element v) const {
  const auto& dom = domains_[cell];
  if (std::find(dom.begin(), dom.end(), v) == dom.end()) return false;
  if (pin_ && pin_->cell == cell && pin_->value != v) return false;
  const std::int64_t source = symmetric_source_[cell];
  return source < 0 || values_[static_cast<std::size_t>(source)] < 0 ||
         values_[static_cast<std::size_t>(source)] == static_cast<std::int32_t>(v);
}

bool TableSearch::propagate(std::size_t cell) {
  queue_.clear();
  queue_.push_back(static_cast<std::uint32_t>(cell));
  for (std::size_t q = 0; q < queue_.size(); ++q) {
    const std::uint32_t current = queue_[q];
    // Entries pushed while scanning go to other cells, so indexing stays valid.
    for (std::size_t w = 0; w < watch_[current].size(); ++w) {
      const std::uint32_t check = watch_[current][w];
      const Outcome o = evaluate(check);
      if (o.status == Status::conflict) return false;
      if (o.status == Status::blocked) {
        watch_[o.cell].push_back(check);
        trail_.push_back(o.cell);
      } else if (o.status == Status::forced) {
        if (!admissible(o.cell, o.value)) return false;
        values_[o.cell] = static_cast<std::int32_t>(o.value);
        forced_.push_back(o.cell);
        queue_.push_back(o.cell);
      }
    }
  }
  return true;
}

void TableSearch::undo(std::size_t mark, std::size_t forced_mark) {
  while (trail_.size() > mark) {
    watch_[trail_.back()].pop_back();
    trail_.pop_back();
  }
  while (forced_.size() > forced_mark) {
    values_[forced_.back()] = -1;
    forced_.pop_back();
  }
}

bool TableSearch::descend(std::size_t cell, const Visitor& visit) {
  if (cell == cells_) {
    std::vector<Element> out(values_.begin(), values_.end());
    return visit(out);
  }
  if (values_[cell] >= 0) {
    // Forced earlier; the order-based checks could not run until now.
    if (!locally_consistent(cell, static_cast<Element>(values_[cell]))) return true;
    return descend(cell + 1, visit);
  }
  for (Element v : domains_[cell]) {
    if (pin_ && pin_->cell == cell && pin_->value != v) continue;
    if (!locally_consistent(cell, v)) continue;
    values_[cell] = static_cast<std::int32_t>(v);
    const std::size_t mark = trail_.size();
    const std::size_t forced_mark = forced_.size();
    const bool ok = propagate(cell);
    const bool keep_going = !ok || descend(cell + 1, visit);
    undo(mark, forced_mark);
    values_[cell] = -1;
    if (!keep_going) return false;
  }
  return true;
}

void TableSearch::run(const Visitor& visit, std::optional<Pin> pin) {
  values_.assign(cells_, -1);
  watch_.assign(cells_, {});
  trail_.clear();
  forced_.clear();
  pin_ = pin;
  const auto total = static_cast<std::uint32_t>(assoc_.size() + fold_.size());
  for (std::uint32_t c = 0; c < total; ++c) {
    // Nothing is assigned yet, so every check is blocked on some cell.
    const Outcome o = evaluate(c);
    watch_[o.cell].push_back(c);
  }
  descend(0, visit);
}

}  // namespace narylab::detail
