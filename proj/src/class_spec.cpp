#include "narylab/class_spec.hpp"

#include <array>
#include <utility>

#include "narylab/properties.hpp"

namespace narylab {

namespace {

constexpr std::array<std::pair<char, Flag>, 7> kLetters{{
    {'a', Flag::assoc},
    {'i', Flag::idem},
    {'s', Flag::symm},
    {'q', Flag::quasitrivial},
    {'d', Flag::nondecreasing},
    {'m', Flag::monotone},
    {'e', Flag::has_neutral},
}};

}  // namespace

ClassSpec ClassSpec::parse(std::string_view text) {
  ClassSpec spec;
  if (text == "none") return spec;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view item = text.substr(pos, end - pos);
    pos = end + 1;
    if (item.empty()) continue;
    bool found = false;
    if (item.size() == 1) {
      for (const auto& [letter, flag] : kLetters) {
        if (item[0] == letter) {
          spec = spec.with(flag);
          found = true;
        }
      }
    }
    if (!found) throw Error("unknown property flag '" + std::string(item) + "'");
  }
  return spec;
}

std::string ClassSpec::to_string() const {
  std::string out;
  for (const auto& [letter, flag] : kLetters) {
    if (!has(flag)) continue;
    if (!out.empty()) out += ',';
    out += letter;
  }
  return out.empty() ? "none" : out;
}

bool ClassSpec::admits(const OpTable& f) const {
  if (has(Flag::assoc) && !is_associative(f)) return false;
  if (has(Flag::idem) && !is_idempotent(f)) return false;
  if (has(Flag::symm) && !is_symmetric(f)) return false;
  if (has(Flag::quasitrivial) && !is_quasitrivial(f)) return false;
  if (has(Flag::nondecreasing) && !is_nondecreasing(f)) return false;
  if (has(Flag::monotone) && !is_monotone(f)) return false;
  if (has(Flag::has_neutral) && neutral_elements(f).empty()) return false;
  return true;
}

}  // namespace narylab
