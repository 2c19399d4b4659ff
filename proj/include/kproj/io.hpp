// Copyright 2026 The kproj Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Text formats. The normative descriptions live in docs/formats.md.
//
//   model files    JSON object with "categories", optional "combine" and
//                  "constraints" (clauses of "name = value" / "name != value")
//   data sets      comma-separated, header row of category names
//   reports        "key: value" text or JSON; numbers as decimal strings
//   traces         comma-separated, one row per generated point

#ifndef KPROJ_IO_HPP_
#define KPROJ_IO_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "kproj/coverage.hpp"
#include "kproj/generator.hpp"
#include "kproj/model.hpp"
#include "kproj/numeric.hpp"

namespace kproj {

// Syntax or semantic error in an input document. `line`/`column` are 1-based
// and 0 when unknown; `path` is a JSON pointer for model documents.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column,
             std::string path = {})
      : Error(render(message, line, column, path)),
        line_(line),
        column_(column),
        path_(std::move(path)) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& path() const { return path_; }

 private:
  static std::string render(const std::string& message, std::size_t line,
                            std::size_t column, const std::string& path) {
    std::string where;
    if (line > 0) {
      where = "line " + std::to_string(line);
      if (column > 0) where += ", column " + std::to_string(column);
    }
    if (!path.empty()) where += (where.empty() ? "at " : " at ") + path;
    return where.empty() ? message : where + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
  std::string path_;
};

namespace detail {

using ordered_json = nlohmann::ordered_json;

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text,
                                                       std::size_t offset) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

inline std::string label_of(const nlohmann::json& j, const std::string& path) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return j.dump();
  throw ParseError("value label must be a string or integer", 0, 0, path);
}

// Object key as a JSON pointer reference token.
inline std::string pointer_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

inline void reject_unknown_keys(const nlohmann::json& obj,
                                std::initializer_list<std::string_view> allowed,
                                const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (std::string_view a : allowed) known = known || key == a;
    if (!known) {
      throw ParseError("unknown key '" + key + "'", 0, 0,
                       path + "/" + pointer_token(key));
    }
  }
}

inline Literal parse_literal(std::string_view text,
                             const std::vector<Category>& categories,
                             const std::string& path) {
  std::size_t op_pos = text.find("!=");
  std::size_t op_len = 2;
  LiteralOp op = LiteralOp::kNeq;
  if (op_pos == std::string_view::npos) {
    op = LiteralOp::kEq;
    op_pos = text.find("==");
    if (op_pos == std::string_view::npos) {
      op_pos = text.find('=');
      op_len = 1;
    }
  }
  if (op_pos == std::string_view::npos) {
    throw ParseError("literal '" + std::string(text) +
                         "' must have the form 'name = value' or "
                         "'name != value'",
                     0, 0, path);
  }
  const std::string name = trim(text.substr(0, op_pos));
  const std::string value = trim(text.substr(op_pos + op_len));
  for (std::size_t i = 0; i < categories.size(); ++i) {
    if (categories[i].name != name) continue;
    const auto& values = categories[i].values;
    for (ValueIndex j = 0; j < values.size(); ++j) {
      if (values[j] == value) return Literal{i, op, j};
    }
    throw ParseError("unknown value '" + value + "' for category '" + name +
                         "' in constraint",
                     0, 0, path);
  }
  throw ParseError("unknown category '" + name + "' in constraint", 0, 0, path);
}

// Byte offset of every value in an already validated JSON text, keyed by
// JSON pointer. Used to attach line/column to semantic errors.
class JsonOffsets {
 public:
  explicit JsonOffsets(std::string_view text) : text_(text) { value(""); }

  std::optional<std::size_t> find(const std::string& pointer) const {
    auto it = offsets_.find(pointer);
    if (it == offsets_.end()) return std::nullopt;
    return it->second;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\n' || text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  std::string string() {
    std::string out;
    ++pos_;  // opening quote
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) {
        const char e = text_[++pos_];
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case 'r': out += '\r'; break;
          case 'b': out += '\b'; break;
          case 'f': out += '\f'; break;
          default: out += e;
        }
      } else {
        out += text_[pos_];
      }
      ++pos_;
    }
    ++pos_;  // closing quote
    return out;
  }

  void value(const std::string& path) {
    skip_ws();
    if (pos_ >= text_.size()) return;
    offsets_.emplace(path, pos_);
    const char c = text_[pos_];
    if (c == '{') {
      ++pos_;
      while (true) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] == '}') break;
        if (text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        const std::string key = string();
        skip_ws();
        ++pos_;  // colon
        value(path + "/" + pointer_token(key));
      }
      ++pos_;
    } else if (c == '[') {
      ++pos_;
      std::size_t index = 0;
      while (true) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] == ']') break;
        if (text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        value(path + "/" + std::to_string(index++));
      }
      ++pos_;
    } else if (c == '"') {
      string();
    } else {
      while (pos_ < text_.size() &&
             std::string_view(",]} \t\r\n").find(text_[pos_]) ==
                 std::string_view::npos) {
        ++pos_;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::map<std::string, std::size_t> offsets_;
};

}  // namespace detail

namespace detail {

inline CategorizationModel parse_model_document(const nlohmann::json& doc);

}  // namespace detail

// Parses and validates a model document. Syntax errors carry the position
// reported by the JSON parser; semantic errors carry the JSON pointer of the
// offending value and its line/column.
inline CategorizationModel parse_model(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, column] = detail::line_column(text, offset);
    std::string msg = e.what();
    // Drop nlohmann's "[json.exception.parse_error.101] parse error at ..."
    // prefix; the position is reported separately.
    if (auto p = msg.find(": "); p != std::string::npos) msg = msg.substr(p + 2);
    throw ParseError(msg, line, column);
  }
  try {
    return detail::parse_model_document(doc);
  } catch (const ParseError& e) {
    if (e.line() > 0) throw;
    const detail::JsonOffsets offsets(text);
    std::string path = e.path();
    // Walk up to the nearest value that exists in the text.
    while (true) {
      if (auto off = offsets.find(path)) {
        const auto [line, column] = detail::line_column(text, *off);
        std::string msg = e.what();
        if (auto p = msg.find(": "); !e.path().empty() && p != std::string::npos) {
          msg = msg.substr(p + 2);
        }
        throw ParseError(msg, line, column, e.path());
      }
      if (path.empty()) throw;
      path = path.substr(0, path.rfind('/'));
    }
  }
}

namespace detail {

inline CategorizationModel parse_model_document(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("model must be a JSON object", 1, 1);
  detail::reject_unknown_keys(doc, {"combine", "categories", "constraints"}, "");

  CombineOp op = CombineOp::kProduct;
  if (doc.contains("combine")) {
    const auto& c = doc["combine"];
    std::optional<CombineOp> parsed;
    if (c.is_string()) parsed = parse_combine_op(c.get<std::string>());
    if (!parsed) {
      throw ParseError("combine must be one of sum, product, max", 0, 0,
                       "/combine");
    }
    op = *parsed;
  }

  if (!doc.contains("categories") || !doc["categories"].is_array() ||
      doc["categories"].empty()) {
    throw ParseError("categories must be a non-empty array", 0, 0,
                     "/categories");
  }
  std::vector<Category> categories;
  const auto& cats = doc["categories"];
  for (std::size_t i = 0; i < cats.size(); ++i) {
    const std::string path = "/categories/" + std::to_string(i);
    const auto& c = cats[i];
    if (!c.is_object()) throw ParseError("category must be an object", 0, 0, path);
    detail::reject_unknown_keys(c, {"name", "values", "weights"}, path);
    if (!c.contains("name") || !c["name"].is_string() ||
        c["name"].get<std::string>().empty()) {
      throw ParseError("category name must be a non-empty string", 0, 0,
                       path + "/name");
    }
    Category cat;
    cat.name = c["name"].get<std::string>();
    for (const Category& prev : categories) {
      if (prev.name == cat.name) {
        throw ParseError("duplicate category '" + cat.name + "'", 0, 0,
                         path + "/name");
      }
    }
    if (!c.contains("values") || !c["values"].is_array() ||
        c["values"].empty()) {
      throw ParseError("values must be a non-empty array", 0, 0,
                       path + "/values");
    }
    for (std::size_t j = 0; j < c["values"].size(); ++j) {
      const std::string vpath = path + "/values/" + std::to_string(j);
      std::string label = detail::label_of(c["values"][j], vpath);
      if (label.empty()) throw ParseError("empty value label", 0, 0, vpath);
      for (const std::string& prev : cat.values) {
        if (prev == label) {
          throw ParseError("duplicate value '" + label + "' in category '" +
                               cat.name + "'",
                           0, 0, vpath);
        }
      }
      cat.values.push_back(std::move(label));
    }
    if (c.contains("weights")) {
      const auto& w = c["weights"];
      if (!w.is_array() || w.size() != cat.values.size()) {
        throw ParseError("weights must be an array with one entry per value",
                         0, 0, path + "/weights");
      }
      for (std::size_t j = 0; j < w.size(); ++j) {
        if (!w[j].is_number_unsigned()) {
          throw ParseError("weight must be a non-negative integer", 0, 0,
                           path + "/weights/" + std::to_string(j));
        }
        cat.weights.push_back(w[j].get<Weight>());
      }
    } else {
      cat.weights.assign(cat.values.size(), 1);
    }
    categories.push_back(std::move(cat));
  }

  ConstraintSet cs;
  if (doc.contains("constraints")) {
    const auto& clauses = doc["constraints"];
    if (!clauses.is_array()) {
      throw ParseError("constraints must be an array of clauses", 0, 0,
                       "/constraints");
    }
    for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
      const std::string path = "/constraints/" + std::to_string(ci);
      const auto& clause = clauses[ci];
      // A lone string is a unit clause.
      if (clause.is_string()) {
        cs.clauses.push_back(
            {detail::parse_literal(clause.get<std::string>(), categories, path)});
        continue;
      }
      if (!clause.is_array() || clause.empty()) {
        throw ParseError("clause must be a non-empty array of literals", 0, 0,
                         path);
      }
      Clause parsed;
      for (std::size_t li = 0; li < clause.size(); ++li) {
        const std::string lpath = path + "/" + std::to_string(li);
        if (!clause[li].is_string()) {
          throw ParseError("literal must be a string", 0, 0, lpath);
        }
        parsed.push_back(detail::parse_literal(clause[li].get<std::string>(),
                                               categories, lpath));
      }
      cs.clauses.push_back(std::move(parsed));
    }
  }
  try {
    return CategorizationModel(std::move(categories), op, std::move(cs));
  } catch (const ModelError& e) {
    throw ParseError(e.what(), 0, 0);
  }
}

}  // namespace detail

inline std::string serialize_model(const CategorizationModel& model) {
  detail::ordered_json doc;
  doc["combine"] = std::string(to_string(model.combine_op()));
  doc["categories"] = detail::ordered_json::array();
  for (const Category& c : model.categories()) {
    detail::ordered_json cat;
    cat["name"] = c.name;
    cat["values"] = c.values;
    cat["weights"] = c.weights;
    doc["categories"].push_back(std::move(cat));
  }
  doc["constraints"] = detail::ordered_json::array();
  for (const Clause& clause : model.constraints().clauses) {
    detail::ordered_json lits = detail::ordered_json::array();
    for (const Literal& lit : clause) lits.push_back(format_literal(model, lit));
    doc["constraints"].push_back(std::move(lits));
  }
  return doc.dump(2) + "\n";
}

enum class ViolationPolicy { kReject, kDrop };

struct DataSetParseResult {
  DataSet data;
  std::size_t accepted = 0;
  std::size_t dropped = 0;
  std::vector<std::string> warnings;
};

namespace detail {

struct CsvField {
  std::string text;
  std::size_t column;  // 1-based
};

// One CSV record; fields may be double-quoted with "" as escaped quote.
inline std::vector<CsvField> split_csv_line(std::string_view line,
                                            std::size_t line_no) {
  std::vector<CsvField> fields;
  std::size_t i = 0;
  while (true) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    CsvField field{{}, i + 1};
    if (i < line.size() && line[i] == '"') {
      ++i;
      bool closed = false;
      while (i < line.size()) {
        if (line[i] == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            field.text += '"';
            i += 2;
            continue;
          }
          ++i;
          closed = true;
          break;
        }
        field.text += line[i++];
      }
      if (!closed) throw ParseError("unterminated quoted field", line_no, field.column);
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i < line.size() && line[i] != ',') {
        throw ParseError("unexpected character after quoted field", line_no,
                         i + 1);
      }
    } else {
      const std::size_t end = std::min(line.find(',', i), line.size());
      field.text = trim(line.substr(i, end - i));
      i = end;
    }
    fields.push_back(std::move(field));
    if (i >= line.size()) break;
    ++i;  // comma
  }
  return fields;
}

inline std::string csv_escape(const std::string& s) {
  const bool needs_quotes =
      s.find_first_of(",\"\r\n") != std::string::npos ||
      (!s.empty() && (s.front() == ' ' || s.back() == ' ' || s.front() == '\t' ||
                      s.back() == '\t'));
  if (!needs_quotes) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

}  // namespace detail

// Header names the categories in any order; rows give value labels. Blank
// lines are skipped. Rows violating the constraints abort the parse under
// kReject and are skipped with a warning under kDrop.
inline DataSetParseResult parse_dataset(
    std::string_view text, const CategorizationModel& model,
    ViolationPolicy policy = ViolationPolicy::kReject) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  const auto lines = detail::split_lines(text);
  std::size_t header_line = 0;
  while (header_line < lines.size() &&
         detail::trim(lines[header_line]).empty()) {
    ++header_line;
  }
  if (header_line == lines.size()) throw ParseError("missing header row", 1, 1);

  const std::size_t n = model.num_categories();
  const auto header = detail::split_csv_line(lines[header_line], header_line + 1);
  if (header.size() != n) {
    throw ParseError("header has " + std::to_string(header.size()) +
                         " columns, model has " + std::to_string(n) +
                         " categories",
                     header_line + 1, 1);
  }
  // column -> category
  std::vector<std::size_t> column_category(n);
  std::vector<bool> seen(n, false);
  for (std::size_t col = 0; col < n; ++col) {
    const auto cat = model.find_category(header[col].text);
    if (!cat) {
      throw ParseError("header names unknown category '" + header[col].text + "'",
                       header_line + 1, header[col].column);
    }
    if (seen[*cat]) {
      throw ParseError("header repeats category '" + header[col].text + "'",
                       header_line + 1, header[col].column);
    }
    seen[*cat] = true;
    column_category[col] = *cat;
  }

  DataSetParseResult result;
  for (std::size_t li = header_line + 1; li < lines.size(); ++li) {
    if (detail::trim(lines[li]).empty()) continue;
    const std::size_t line_no = li + 1;
    const auto fields = detail::split_csv_line(lines[li], line_no);
    if (fields.size() != n) {
      throw ParseError("row has " + std::to_string(fields.size()) +
                           " columns, expected " + std::to_string(n),
                       line_no, 1);
    }
    std::vector<ValueIndex> values(n);
    for (std::size_t col = 0; col < n; ++col) {
      const std::size_t cat = column_category[col];
      const auto v = model.find_value(cat, fields[col].text);
      if (!v) {
        throw ParseError("unknown value '" + fields[col].text +
                             "' for category '" + model.category(cat).name + "'",
                         line_no, fields[col].column);
      }
      values[cat] = *v;
    }
    CategorizationPoint p(std::move(values));
    if (auto violation = validate_point(model, p)) {
      if (policy == ViolationPolicy::kReject) {
        throw ParseError("row " + violation->message, line_no, 1);
      }
      ++result.dropped;
      result.warnings.push_back("line " + std::to_string(line_no) +
                                ": dropped row that " + violation->message);
      continue;
    }
    result.data.add(model, p);
    ++result.accepted;
  }
  return result;
}

// Same tabular format as data set input, rows in the given order.
inline std::string write_points(const CategorizationModel& model,
                                const std::vector<CategorizationPoint>& points) {
  std::string out;
  for (std::size_t i = 0; i < model.num_categories(); ++i) {
    if (i > 0) out += ",";
    out += detail::csv_escape(model.category(i).name);
  }
  out += "\n";
  for (const CategorizationPoint& p : points) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i > 0) out += ",";
      out += detail::csv_escape(model.category(i).values.at(p[i]));
    }
    out += "\n";
  }
  return out;
}

namespace detail {

inline std::string delta_label(const CategorizationModel& model,
                               const ProjectionIndex& delta) {
  std::string out;
  for (std::size_t i = 0; i < delta.size(); ++i) {
    if (i > 0) out += ",";
    out += model.category(delta[i]).name;
  }
  return out;
}

inline std::string cell_label(const CategorizationModel& model,
                              const ProjectionIndex& delta, const Cell& cell) {
  std::string out;
  for (std::size_t i = 0; i < delta.size(); ++i) {
    if (i > 0) out += ",";
    const Category& c = model.category(delta[i]);
    out += c.name + "=" + c.values.at(cell[i]);
  }
  return out;
}

inline ordered_json cell_json(const CategorizationModel& model,
                              const CellRef& ref) {
  ordered_json j;
  ordered_json cats = ordered_json::array();
  ordered_json vals = ordered_json::array();
  for (std::size_t i = 0; i < ref.delta.size(); ++i) {
    const Category& c = model.category(ref.delta[i]);
    cats.push_back(c.name);
    vals.push_back(c.values.at(ref.cell[i]));
  }
  j["categories"] = std::move(cats);
  j["values"] = std::move(vals);
  return j;
}

}  // namespace detail

inline nlohmann::ordered_json report_json(const CategorizationModel& model,
                                          const CoverageResult& r) {
  detail::ordered_json j;
  j["coverage"] = r.full ? "full" : "k-projection";
  j["k"] = r.k;
  j["numerator"] = to_string(r.numerator);
  j["denominator"] = to_string(r.denominator);
  j["ratio"] = to_string(r.ratio);
  j["approx"] = to_decimal_string(r.ratio, 6);
  j["vacuous"] = r.vacuous;
  j["complete"] = r.is_complete();
  if (!r.full) {
    j["planes"] = detail::ordered_json::array();
    for (const PlaneCoverage& pc : r.planes) {
      detail::ordered_json p;
      p["categories"] = detail::delta_label(model, pc.delta);
      p["numerator"] = to_string(pc.numerator);
      p["denominator"] = to_string(pc.denominator);
      j["planes"].push_back(std::move(p));
    }
    j["infeasible_cell_count"] = to_string(r.infeasible_cell_count);
    j["infeasible_cells"] = detail::ordered_json::array();
    for (const CellRef& c : r.infeasible_cells) {
      j["infeasible_cells"].push_back(detail::cell_json(model, c));
    }
    j["zero_weight_cell_count"] = to_string(r.zero_weight_cell_count);
    j["zero_weight_cells"] = detail::ordered_json::array();
    for (const CellRef& c : r.zero_weight_cells) {
      j["zero_weight_cells"].push_back(detail::cell_json(model, c));
    }
  }
  return j;
}

// "key: value" report. Vacuous coverage (nothing required) reports ratio 1.
inline std::string write_report(const CategorizationModel& model,
                                const CoverageResult& r) {
  std::ostringstream out;
  out << "coverage: " << (r.full ? "full" : "k-projection") << "\n";
  out << "k: " << r.k << "\n";
  out << "numerator: " << to_string(r.numerator) << "\n";
  out << "denominator: " << to_string(r.denominator) << "\n";
  out << "ratio: " << to_string(r.ratio) << "\n";
  out << "approx: " << to_decimal_string(r.ratio, 6) << "\n";
  out << "vacuous: " << (r.vacuous ? "true" : "false") << "\n";
  out << "complete: " << (r.is_complete() ? "true" : "false") << "\n";
  if (r.full) return out.str();
  out << "planes:\n";
  for (const PlaneCoverage& pc : r.planes) {
    out << "  " << detail::delta_label(model, pc.delta) << ": "
        << to_string(pc.numerator) << "/" << to_string(pc.denominator) << "\n";
  }
  out << "infeasible_cells: " << to_string(r.infeasible_cell_count) << "\n";
  for (const CellRef& c : r.infeasible_cells) {
    out << "  " << detail::cell_label(model, c.delta, c.cell) << "\n";
  }
  out << "zero_weight_cells: " << to_string(r.zero_weight_cell_count) << "\n";
  for (const CellRef& c : r.zero_weight_cells) {
    out << "  " << detail::cell_label(model, c.delta, c.cell) << "\n";
  }
  return out.str();
}

namespace detail {

// Cell marker: "X" not coverable, "~" weight 0, "." required but empty,
// "#r c/w" first covering row r (1-based), count c of weight w.
inline std::string table_marker(const CategorizationModel& model,
                                const ProjectionPlane& plane, const Cell& cell,
                                OccupationChecker& occupation) {
  if (!occupation.feasible(plane.delta, cell)) return "X";
  const BigInt w = cell_weight(model, plane.delta, cell);
  if (w == 0) return "~";
  const CellStats* stats = plane.stats(cell);
  if (stats == nullptr || stats->count == 0) return ". 0/" + to_string(w);
  return "#" + std::to_string(stats->first_row + 1) + " " +
         std::to_string(stats->count) + "/" + to_string(w);
}

}  // namespace detail

// Per-plane coverage tables. Two-category planes are drawn as grids (rows:
// first category, columns: second); other sizes are listed cell by cell.
inline std::string write_tables(const CategorizationModel& model,
                                const ProjectionTables& tables) {
  OccupationChecker occupation(model);
  std::ostringstream out;
  for (const ProjectionPlane& plane : tables.planes()) {
    out << "[" << detail::delta_label(model, plane.delta) << "]\n";
    if (plane.delta.size() == 2) {
      const Category& rows = model.category(plane.delta[0]);
      const Category& cols = model.category(plane.delta[1]);
      std::vector<std::vector<std::string>> grid(rows.size() + 1);
      grid[0].push_back("");
      for (const auto& v : cols.values) grid[0].push_back(v);
      for (ValueIndex r = 0; r < rows.size(); ++r) {
        grid[r + 1].push_back(rows.values[r]);
        for (ValueIndex c = 0; c < cols.size(); ++c) {
          grid[r + 1].push_back(
              detail::table_marker(model, plane, Cell{r, c}, occupation));
        }
      }
      std::vector<std::size_t> width(cols.size() + 1, 0);
      for (const auto& row : grid) {
        for (std::size_t c = 0; c < row.size(); ++c) {
          width[c] = std::max(width[c], row[c].size());
        }
      }
      for (const auto& row : grid) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
          if (c > 0) line += " | ";
          line += row[c] + std::string(width[c] - row[c].size(), ' ');
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out << line << "\n";
      }
    } else {
      for_each_cell(model, plane.delta, [&](const Cell& cell) {
        out << "  " << detail::cell_label(model, plane.delta, cell) << ": "
            << detail::table_marker(model, plane, cell, occupation) << "\n";
      });
    }
    out << "\n";
  }
  return out.str();
}

inline nlohmann::ordered_json tables_json(const CategorizationModel& model,
                                          const ProjectionTables& tables) {
  OccupationChecker occupation(model);
  detail::ordered_json out = detail::ordered_json::array();
  for (const ProjectionPlane& plane : tables.planes()) {
    detail::ordered_json p;
    p["categories"] = detail::delta_label(model, plane.delta);
    p["cells"] = detail::ordered_json::array();
    for_each_cell(model, plane.delta, [&](const Cell& cell) {
      detail::ordered_json c = detail::cell_json(model, CellRef{plane.delta, cell});
      const CellStats* stats = plane.stats(cell);
      c["feasible"] = occupation.feasible(plane.delta, cell);
      c["weight"] = to_string(cell_weight(model, plane.delta, cell));
      c["count"] = stats ? stats->count : 0;
      if (stats && stats->count > 0) c["first_row"] = stats->first_row + 1;
      p["cells"].push_back(std::move(c));
    });
    out.push_back(std::move(p));
  }
  return out;
}

// Flat trace table: step 0 is the starting coverage, then one row per
// generated point.
inline std::string write_trace(const CategorizationModel& model,
                               const GenerationTrace& trace) {
  std::string out = "step";
  for (const Category& c : model.categories()) {
    out += "," + detail::csv_escape(c.name);
  }
  out += ",objective,numerator,denominator,ratio,approx\n";
  const auto tail = [&](std::int64_t objective, const BigInt& num,
                        const Rational& ratio) {
    return "," + std::to_string(objective) + "," + to_string(num) + "," +
           to_string(trace.denominator) + "," + to_string(ratio) + "," +
           to_decimal_string(ratio, 6) + "\n";
  };
  out += "0" + std::string(model.num_categories(), ',') +
         tail(0, trace.initial_numerator, trace.initial_ratio());
  for (std::size_t s = 0; s < trace.steps.size(); ++s) {
    const TraceStep& step = trace.steps[s];
    out += std::to_string(s + 1);
    for (std::size_t i = 0; i < step.point.size(); ++i) {
      out += "," + detail::csv_escape(model.category(i).values.at(step.point[i]));
    }
    out += tail(step.objective, step.numerator, step.ratio);
  }
  return out;
}

inline nlohmann::ordered_json trace_json(const CategorizationModel& model,
                                         const GenerationTrace& trace) {
  detail::ordered_json j;
  j["k"] = trace.k;
  j["reason"] = std::string(to_string(trace.reason));
  j["denominator"] = to_string(trace.denominator);
  j["initial_numerator"] = to_string(trace.initial_numerator);
  j["initial_ratio"] = to_string(trace.initial_ratio());
  j["steps"] = detail::ordered_json::array();
  for (const TraceStep& s : trace.steps) {
    detail::ordered_json step;
    detail::ordered_json point = detail::ordered_json::object();
    for (std::size_t i = 0; i < s.point.size(); ++i) {
      point[model.category(i).name] = model.category(i).values.at(s.point[i]);
    }
    step["point"] = std::move(point);
    step["objective"] = s.objective;
    step["numerator"] = to_string(s.numerator);
    step["ratio"] = to_string(s.ratio);
    step["approx"] = to_decimal_string(s.ratio, 6);
    j["steps"].push_back(std::move(step));
  }
  j["final_ratio"] = to_string(trace.final_ratio());
  return j;
}

}  // namespace kproj

#endif  // KPROJ_IO_HPP_
