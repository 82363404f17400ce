#include "deltamod/matrix_io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "deltamod/errors.hpp"

namespace deltamod {

namespace {

Integer parse_integer(const std::string& tok) {
  std::size_t i = (tok.size() > 1 && (tok[0] == '-' || tok[0] == '+')) ? 1 : 0;
  if (tok.empty() || i == tok.size()) throw ParseError("invalid integer '" + tok + "'");
  for (std::size_t k = i; k < tok.size(); ++k) {
    if (tok[k] < '0' || tok[k] > '9') throw ParseError("invalid integer '" + tok + "'");
  }
  return Integer(tok[0] == '+' ? tok.substr(1) : tok);
}

std::size_t parse_size(const std::string& tok) {
  Integer v = parse_integer(tok);
  if (v < 1 || v > 1'000'000) throw ParseError("invalid dimension '" + tok + "'");
  return static_cast<std::size_t>(v);
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string t;
  while (ss >> t) out.push_back(t);
  return out;
}

}  // namespace

IntMatrix read_matrix_text(std::istream& in) {
  std::vector<std::vector<std::string>> lines;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto toks = tokens(line);
    if (!toks.empty()) lines.push_back(std::move(toks));
  }
  if (lines.empty()) throw ParseError("empty matrix input");
  if (lines[0].size() != 2) throw ParseError("header must be 'rows cols'");
  const std::size_t rows = parse_size(lines[0][0]);
  const std::size_t cols = parse_size(lines[0][1]);
  if (lines.size() < rows + 1) throw ParseError("expected " + std::to_string(rows) + " matrix rows");
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& toks = lines[r + 1];
    if (toks.size() != cols) {
      throw ParseError("row " + std::to_string(r + 1) + " has " + std::to_string(toks.size()) + " entries, expected " +
                       std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = parse_integer(toks[c]);
  }
  if (lines.size() > rows + 2) throw ParseError("unexpected trailing content");
  if (lines.size() == rows + 2) {
    auto toks = lines.back();
    if (toks[0] != "labels:") throw ParseError("trailing line must start with 'labels:'");
    toks.erase(toks.begin());
    if (toks.size() != cols) throw ParseError("label count does not match column count");
    m.set_labels(std::move(toks));
  }
  return m;
}

IntMatrix parse_matrix_text(const std::string& text) {
  std::istringstream in(text);
  return read_matrix_text(in);
}

void write_matrix_text(std::ostream& out, const IntMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << m(r, c);
    out << '\n';
  }
  if (m.has_labels()) {
    out << "labels:";
    for (const auto& l : m.labels()) out << ' ' << l;
    out << '\n';
  }
}

std::string format_matrix_text(const IntMatrix& m) {
  std::ostringstream out;
  write_matrix_text(out, m);
  return out.str();
}

IntMatrix load_matrix(const std::string& path) {
  if (path == "-") return read_matrix_text(std::cin);
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_matrix_text(in);
}

Json integer_to_json(const Integer& v) {
  if (auto n = to_int64(v)) return *n;
  return to_string(v);
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw ParseError("expected an integer");
}

Json matrix_to_json(const IntMatrix& m) {
  Json entries = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(integer_to_json(m(r, c)));
    entries.push_back(std::move(row));
  }
  Json j{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
  if (m.has_labels()) j["labels"] = m.labels();
  return j;
}

IntMatrix matrix_from_json(const Json& j) {
  try {
    const std::size_t rows = j.at("rows").get<std::size_t>();
    const std::size_t cols = j.at("cols").get<std::size_t>();
    if (rows < 1 || cols < 1) throw ParseError("matrix dimensions must be positive");
    const Json& entries = j.at("entries");
    if (entries.size() != rows) throw ParseError("entries row count mismatch");
    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      if (entries[r].size() != cols) throw ParseError("entries column count mismatch");
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = integer_from_json(entries[r][c]);
    }
    if (j.contains("labels")) {
      auto labels = j.at("labels").get<std::vector<std::string>>();
      if (labels.size() != cols) throw ParseError("label count does not match column count");
      m.set_labels(std::move(labels));
    }
    return m;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("invalid matrix JSON: ") + e.what());
  }
}

Json witness_to_json(const SubmatrixWitness& w) {
  return Json{{"rows", w.rows}, {"cols", w.cols}, {"det", integer_to_json(w.det)}};
}

}  // namespace deltamod
