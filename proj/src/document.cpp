// Copyright 2026 The qnf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <charconv>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "qnf/reporting.hpp"

namespace qnf {

namespace {

using nlohmann::json;

[[noreturn]] void ParseError(ErrorCode code, int line, int column,
                             const std::string& what) {
  std::ostringstream os;
  os << "line " << line << ", column " << column << ": " << what;
  throw Error(code, "parse_matrix", os.str());
}

struct Token {
  std::string text;
  int column;  // one-based
};

std::vector<Token> Tokenize(const std::string& line) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

bool ToDouble(const std::string& s, double* out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, *out);
  return ec == std::errc() && ptr == last && std::isfinite(*out);
}

bool ToInt(const std::string& s, int* out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

const char* const kToleranceKeys[] = {
    "structure_atol", "structure_rtol", "symplectic",    "cluster",
    "rank",           "vanishing_alpha", "max_condition", "verification"};

bool KnownTolerance(const std::string& key) {
  for (const char* k : kToleranceKeys)
    if (key == k) return true;
  return false;
}

// Line and column of a byte offset.
std::pair<int, int> Position(const std::string& text, size_t byte) {
  int line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

void CheckDimension(Eigen::Index rows, int line) {
  if (rows == 0 || rows % 2 != 0) {
    std::ostringstream os;
    os << "matrix dimension " << rows << " is not a positive even number";
    ParseError(ErrorCode::kInvalidDimension, line, 1, os.str());
  }
}

void CheckSymmetry(const MatrixDocument& doc) {
  Tolerances tol = apply_overrides(AnalysisConfig{}, doc.tolerances).tol;
  const RealMatrix& m = doc.entries;
  const double limit = tol.structure_atol + tol.structure_rtol * MaxNorm(m);
  Eigen::Index r = 0, c = 0;
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff(&r, &c);
  if (asym > limit) {
    std::ostringstream os;
    os << "matrix is not symmetric: entries (" << r + 1 << "," << c + 1
       << ") and (" << c + 1 << "," << r + 1 << ") differ by " << asym;
    throw Error(ErrorCode::kNotSymmetric, "parse_matrix", os.str());
  }
}

MatrixDocument ParseJson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = Position(text, e.byte > 0 ? e.byte - 1 : 0);
    ParseError(ErrorCode::kParse, line, col, "malformed JSON document");
  }
  if (!j.is_object()) ParseError(ErrorCode::kParse, 1, 1, "expected a JSON object");
  MatrixDocument doc;
  if (!j.contains("matrix")) ParseError(ErrorCode::kParse, 1, 1, "missing \"matrix\"");
  const json& mat = j["matrix"];
  std::vector<double> flat;
  Eigen::Index rows = 0;
  auto number = [](const json& v, size_t index) {
    if (!v.is_number()) {
      std::ostringstream os;
      os << "matrix entry " << index << " is not a number";
      throw Error(ErrorCode::kParse, "parse_matrix", os.str());
    }
    return v.get<double>();
  };
  if (!mat.is_array()) ParseError(ErrorCode::kParse, 1, 1, "\"matrix\" must be an array");
  if (!mat.empty() && mat[0].is_array()) {
    rows = static_cast<Eigen::Index>(mat.size());
    for (size_t r = 0; r < mat.size(); ++r) {
      if (!mat[r].is_array() || mat[r].size() != mat.size()) {
        std::ostringstream os;
        os << "matrix row " << r + 1 << " does not have " << mat.size() << " entries";
        throw Error(ErrorCode::kInvalidDimension, "parse_matrix", os.str());
      }
      for (size_t c = 0; c < mat[r].size(); ++c)
        flat.push_back(number(mat[r][c], r * mat.size() + c));
    }
  } else {
    for (size_t i = 0; i < mat.size(); ++i) flat.push_back(number(mat[i], i));
    rows = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
    if (rows * rows != static_cast<Eigen::Index>(flat.size())) {
      throw Error(ErrorCode::kInvalidDimension, "parse_matrix",
                  "flat matrix length is not a perfect square");
    }
  }
  if (j.contains("modes")) {
    if (!j["modes"].is_number_integer() || j["modes"].get<int>() < 1) {
      throw Error(ErrorCode::kInvalidDimension, "parse_matrix",
                  "\"modes\" must be a positive integer");
    }
    doc.n_modes = j["modes"].get<int>();
    if (rows != 2 * doc.n_modes) {
      std::ostringstream os;
      os << "matrix has dimension " << rows << " but modes = " << doc.n_modes;
      throw Error(ErrorCode::kInvalidDimension, "parse_matrix", os.str());
    }
  } else {
    CheckDimension(rows, 1);
    doc.n_modes = static_cast<int>(rows / 2);
  }
  doc.entries = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                               Eigen::RowMajor>>(flat.data(), rows, rows);
  if (j.contains("labels")) {
    for (const auto& l : j["labels"]) {
      if (!l.is_string())
        throw Error(ErrorCode::kParse, "parse_matrix", "labels must be strings");
      doc.labels.push_back(l.get<std::string>());
    }
  }
  if (j.contains("tolerances")) {
    if (!j["tolerances"].is_object())
      throw Error(ErrorCode::kParse, "parse_matrix", "\"tolerances\" must be an object");
    for (const auto& [key, value] : j["tolerances"].items()) {
      if (!KnownTolerance(key) || !value.is_number() || !(value.get<double>() > 0)) {
        throw Error(ErrorCode::kParse, "parse_matrix",
                    "invalid tolerance override \"" + key + "\"");
      }
      doc.tolerances[key] = value.get<double>();
    }
  }
  return doc;
}

MatrixDocument ParseText(const std::string& text) {
  MatrixDocument doc;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  std::vector<std::vector<double>> rows;
  int first_row_line = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<Token> tokens = Tokenize(line);
    if (tokens.empty()) continue;
    const std::string& head = tokens[0].text;
    if (rows.empty() && head == "modes") {
      if (header) ParseError(ErrorCode::kParse, line_no, 1, "duplicate modes line");
      int n = 0;
      if (tokens.size() != 2 || !ToInt(tokens[1].text, &n) || n < 1) {
        ParseError(ErrorCode::kInvalidDimension, line_no,
                   tokens.size() > 1 ? tokens[1].column : tokens[0].column,
                   "expected \"modes N\" with N a positive integer");
      }
      doc.n_modes = n;
      header = true;
      continue;
    }
    if (rows.empty() && head == "labels") {
      for (size_t t = 1; t < tokens.size(); ++t) doc.labels.push_back(tokens[t].text);
      continue;
    }
    if (rows.empty() && head == "tolerance") {
      double v = 0;
      if (tokens.size() != 3 || !KnownTolerance(tokens[1].text) ||
          !ToDouble(tokens[2].text, &v) || !(v > 0)) {
        ParseError(ErrorCode::kParse, line_no, tokens[0].column,
                   "expected \"tolerance <key> <positive value>\" with a known key");
      }
      doc.tolerances[tokens[1].text] = v;
      continue;
    }
    if (rows.empty()) first_row_line = line_no;
    std::vector<double> row;
    for (const auto& tok : tokens) {
      double v = 0;
      if (!ToDouble(tok.text, &v)) {
        ParseError(ErrorCode::kParse, line_no, tok.column,
                   "non-numeric entry \"" + tok.text + "\"");
      }
      row.push_back(v);
    }
    const size_t width = header ? static_cast<size_t>(2 * doc.n_modes)
                                : (rows.empty() ? row.size() : rows[0].size());
    if (row.size() != width) {
      std::ostringstream os;
      os << "expected " << width << " entries, found " << row.size();
      ParseError(ErrorCode::kInvalidDimension, line_no, 1, os.str());
    }
    if (header && rows.size() == width) {
      ParseError(ErrorCode::kInvalidDimension, line_no, 1, "too many matrix rows");
    }
    rows.push_back(std::move(row));
  }
  if (!header) {
    if (rows.empty()) ParseError(ErrorCode::kParse, line_no + 1, 1, "empty document");
    if (rows.size() != rows[0].size()) {
      std::ostringstream os;
      os << "matrix is " << rows.size() << "x" << rows[0].size() << ", not square";
      ParseError(ErrorCode::kInvalidDimension, first_row_line, 1, os.str());
    }
    CheckDimension(static_cast<Eigen::Index>(rows.size()), first_row_line);
    doc.n_modes = static_cast<int>(rows.size() / 2);
  } else if (rows.size() != static_cast<size_t>(2 * doc.n_modes)) {
    std::ostringstream os;
    os << "expected " << 2 * doc.n_modes << " matrix rows, found " << rows.size();
    ParseError(ErrorCode::kInvalidDimension, line_no + 1, 1, os.str());
  }
  const Eigen::Index dim = 2 * doc.n_modes;
  doc.entries.resize(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) doc.entries(r, c) = rows[r][c];
  return doc;
}

}  // namespace

MatrixDocument parse_matrix(const std::string& text) {
  size_t first = text.find_first_not_of(" \t\r\n");
  MatrixDocument doc = (first != std::string::npos && text[first] == '{')
                           ? ParseJson(text)
                           : ParseText(text);
  if (!doc.labels.empty() && static_cast<int>(doc.labels.size()) != doc.n_modes) {
    std::ostringstream os;
    os << "expected " << doc.n_modes << " labels, found " << doc.labels.size();
    throw Error(ErrorCode::kParse, "parse_matrix", os.str());
  }
  CheckSymmetry(doc);
  return doc;
}

std::string format_number(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::string serialize_matrix(const MatrixDocument& doc) {
  std::ostringstream os;
  os << "modes " << doc.n_modes << "\n";
  if (!doc.labels.empty()) {
    os << "labels";
    for (const auto& l : doc.labels) os << " " << l;
    os << "\n";
  }
  for (const auto& [key, value] : doc.tolerances)
    os << "tolerance " << key << " " << format_number(value) << "\n";
  for (Eigen::Index r = 0; r < doc.entries.rows(); ++r) {
    for (Eigen::Index c = 0; c < doc.entries.cols(); ++c) {
      if (c) os << " ";
      os << format_number(doc.entries(r, c));
    }
    os << "\n";
  }
  return os.str();
}

AnalysisConfig apply_overrides(const AnalysisConfig& config,
                               const std::map<std::string, double>& overrides) {
  AnalysisConfig out = config;
  Tolerances& t = out.tol;
  for (const auto& [key, v] : overrides) {
    if (key == "structure_atol") t.structure_atol = v;
    else if (key == "structure_rtol") t.structure_rtol = v;
    else if (key == "symplectic") t.symplectic = v;
    else if (key == "cluster") t.cluster = v;
    else if (key == "rank") t.rank = v;
    else if (key == "vanishing_alpha") t.vanishing_alpha = v;
    else if (key == "max_condition") t.max_condition = v;
    else if (key == "verification") t.verification = v;
    else
      throw Error(ErrorCode::kParse, "apply_overrides",
                  "unknown tolerance key \"" + key + "\"");
  }
  return out;
}

}  // namespace qnf
