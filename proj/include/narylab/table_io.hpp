#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "narylab/op_table.hpp"

namespace narylab {

/// An operation table as stored on disk. Labels are cosmetic; all values
/// are chain indices.
struct TableDocument {
  OpTable table;
  std::vector<std::string> labels;  // empty, or one per element in ascending order
  std::vector<Element> unplaced;    // elements with no chain position (adjoined identities)

  friend bool operator==(const TableDocument&, const TableDocument&) = default;
};

enum class TableFormat { json, text };

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Accepts either {"m":..,"n":..,"table":[..]} or the compact text form
///   m n
///   v_0 v_1 ... v_{m^n-1}
/// optionally followed by "labels ..." and "unplaced ..." lines.
[[nodiscard]] TableDocument parse_table(std::string_view text);

[[nodiscard]] std::string serialize(const TableDocument& doc, TableFormat format);

[[nodiscard]] nlohmann::ordered_json to_json(const TableDocument& doc);
[[nodiscard]] nlohmann::ordered_json to_json(const OpTable& table);

}  // namespace narylab
