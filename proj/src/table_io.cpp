#include "narylab/table_io.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace narylab {

namespace {

std::string_view trim_left(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  return s;
}

void validate_extras(const OpTable& table, const std::vector<std::string>& labels,
                     const std::vector<Element>& unplaced) {
  if (!labels.empty()) {
    if (labels.size() != table.size()) {
      std::ostringstream os;
      os << "expected " << table.size() << " labels, got " << labels.size();
      throw ParseError(os.str());
    }
    std::set<std::string> seen;
    for (const auto& l : labels) {
      if (!seen.insert(l).second) throw ParseError("duplicate label '" + l + "'");
    }
  }
  for (std::size_t i = 0; i < unplaced.size(); ++i) {
    if (!table.carrier().contains(unplaced[i])) {
      std::ostringstream os;
      os << "unplaced element " << unplaced[i] << " at index " << i << " is out of range";
      throw ParseError(os.str());
    }
    if (i > 0 && unplaced[i] <= unplaced[i - 1])
      throw ParseError("unplaced elements must be strictly increasing");
  }
}

OpTable build_table(std::size_t m, std::size_t n, std::vector<Element> values) {
  if (m == 0) throw ParseError("m must be at least 1");
  if (n == 0) throw ParseError("n must be at least 1");
  std::size_t expected = 0;
  try {
    expected = checked_power(m, n);
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  if (values.size() != expected) {
    std::ostringstream os;
    os << "expected " << expected << " values, got " << values.size();
    throw ParseError(os.str());
  }
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] >= m) {
      std::ostringstream os;
      os << "value " << values[k] << " at index " << k << " is out of range for m = " << m;
      throw ParseError(os.str());
    }
  }
  return OpTable(Chain(m), n, std::move(values));
}

std::size_t positive_size(const nlohmann::json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  if (!it->is_number_integer() || it->get<long long>() < 1)
    throw ParseError(std::string("field \"") + key + "\" must be a positive integer");
  return it->get<std::size_t>();
}

TableDocument parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("table document must be a JSON object");
  const std::size_t m = positive_size(doc, "m");
  const std::size_t n = positive_size(doc, "n");

  std::vector<std::string> labels;
  if (auto it = doc.find("labels"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("field \"labels\" must be an array of strings");
    for (std::size_t i = 0; i < it->size(); ++i) {
      if (!(*it)[i].is_string()) {
        throw ParseError("label at index " + std::to_string(i) + " is not a string");
      }
      labels.push_back((*it)[i].get<std::string>());
    }
  }

  const auto table_it = doc.find("table");
  if (table_it == doc.end() || !table_it->is_array())
    throw ParseError("field \"table\" must be an array");
  std::vector<Element> values;
  values.reserve(table_it->size());
  for (std::size_t k = 0; k < table_it->size(); ++k) {
    const auto& v = (*table_it)[k];
    if (v.is_number_integer()) {
      const auto x = v.get<long long>();
      if (x < 0 || static_cast<unsigned long long>(x) >= m) {
        std::ostringstream os;
        os << "value " << x << " at index " << k << " is out of range for m = " << m;
        throw ParseError(os.str());
      }
      values.push_back(static_cast<Element>(x));
    } else if (v.is_string() && !labels.empty()) {
      const auto pos = std::find(labels.begin(), labels.end(), v.get<std::string>());
      if (pos == labels.end())
        throw ParseError("unknown label at index " + std::to_string(k));
      values.push_back(static_cast<Element>(pos - labels.begin()));
    } else {
      throw ParseError("value at index " + std::to_string(k) + " is not an integer");
    }
  }

  std::vector<Element> unplaced;
  if (auto it = doc.find("unplaced"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("field \"unplaced\" must be an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto& v = (*it)[i];
      if (!v.is_number_integer() || v.get<long long>() < 0)
        throw ParseError("unplaced entry at index " + std::to_string(i) + " is not an index");
      unplaced.push_back(v.get<Element>());
    }
  }

  OpTable table = build_table(m, n, std::move(values));
  validate_extras(table, labels, unplaced);
  return TableDocument{std::move(table), std::move(labels), std::move(unplaced)};
}

unsigned long long parse_number(const std::string& token, std::string_view what) {
  if (token.empty() || !std::all_of(token.begin(), token.end(),
                                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError("malformed " + std::string(what) + " '" + token + "'");
  try {
    return std::stoull(token);
  } catch (const std::exception&) {
    throw ParseError("malformed " + std::string(what) + " '" + token + "'");
  }
}

TableDocument parse_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty input");
  std::istringstream header(line);
  std::string m_tok;
  std::string n_tok;
  std::string extra;
  if (!(header >> m_tok >> n_tok) || (header >> extra))
    throw ParseError("first line must be \"m n\"");
  const auto m = parse_number(m_tok, "m");
  const auto n = parse_number(n_tok, "n");
  if (m == 0) throw ParseError("m must be at least 1");
  if (n == 0) throw ParseError("n must be at least 1");

  std::vector<Element> values;
  std::vector<std::string> labels;
  std::vector<Element> unplaced;
  bool in_values = true;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "labels" || first == "unplaced") {
      in_values = false;
      std::string tok;
      while (ls >> tok) {
        if (first == "labels") {
          labels.push_back(tok);
        } else {
          unplaced.push_back(static_cast<Element>(parse_number(tok, "unplaced entry")));
        }
      }
      continue;
    }
    if (!in_values) throw ParseError("table values must precede labels/unplaced lines");
    std::string tok = first;
    do {
      const auto v = parse_number(tok, "value at index " + std::to_string(values.size()));
      if (v >= m) {
        std::ostringstream os;
        os << "value " << v << " at index " << values.size() << " is out of range for m = " << m;
        throw ParseError(os.str());
      }
      values.push_back(static_cast<Element>(v));
    } while (ls >> tok);
  }
  OpTable table = build_table(m, n, std::move(values));
  validate_extras(table, labels, unplaced);
  return TableDocument{std::move(table), std::move(labels), std::move(unplaced)};
}

}  // namespace

TableDocument parse_table(std::string_view text) {
  const auto body = trim_left(text);
  if (body.empty()) throw ParseError("empty input");
  return body.front() == '{' ? parse_json(body) : parse_text(body);
}

nlohmann::ordered_json to_json(const OpTable& table) {
  nlohmann::ordered_json j;
  j["m"] = table.size();
  j["n"] = table.arity();
  j["table"] = table.values();
  return j;
}

nlohmann::ordered_json to_json(const TableDocument& doc) {
  auto j = to_json(doc.table);
  if (!doc.labels.empty()) j["labels"] = doc.labels;
  if (!doc.unplaced.empty()) j["unplaced"] = doc.unplaced;
  return j;
}

std::string serialize(const TableDocument& doc, TableFormat format) {
  if (format == TableFormat::json) return to_json(doc).dump();
  std::ostringstream os;
  os << doc.table.size() << ' ' << doc.table.arity() << '\n';
  for (std::size_t k = 0; k < doc.table.cell_count(); ++k)
    os << (k ? " " : "") << doc.table.at(k);
  os << '\n';
  if (!doc.labels.empty()) {
    os << "labels";
    for (const auto& l : doc.labels) os << ' ' << l;
    os << '\n';
  }
  if (!doc.unplaced.empty()) {
    os << "unplaced";
    for (Element e : doc.unplaced) os << ' ' << e;
    os << '\n';
  }
  return os.str();
}

}  // namespace narylab
