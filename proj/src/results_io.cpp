// Copyright 2026 The RBIU Authors.
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

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rbiu/harness.hpp"

namespace rbiu {

namespace {

const std::string kSchemaLine = "# rbiu-results schema " + std::to_string(kResultsSchemaVersion);

// Column accessors in file order. Each column is a string, count or real.
struct Column {
  const char* name;
  std::string ResultRow::*text = nullptr;
  std::size_t ResultRow::*count = nullptr;
  double ResultRow::*real = nullptr;
};

const std::vector<Column>& columns() {
  static const std::vector<Column> cols = {
      {"study", &ResultRow::study},
      {"replication", nullptr, &ResultRow::replication},
      {"u", nullptr, nullptr, &ResultRow::u},
      {"num_uncertain", nullptr, &ResultRow::num_uncertain},
      {"delta_fraction", nullptr, nullptr, &ResultRow::delta_fraction},
      {"delta", nullptr, nullptr, &ResultRow::delta},
      {"conservatism", nullptr, nullptr, &ResultRow::conservatism},
      {"gamma_cap", nullptr, &ResultRow::gamma_cap},
      {"kind", &ResultRow::kind},
      {"source", &ResultRow::source},
      {"status", &ResultRow::status},
      {"objective", nullptr, nullptr, &ResultRow::objective},
      {"robust_level", nullptr, nullptr, &ResultRow::robust_level},
      {"single_ratio", nullptr, nullptr, &ResultRow::single_ratio},
      {"violation", nullptr, nullptr, &ResultRow::violation},
      {"mean_ratio", nullptr, nullptr, &ResultRow::mean_ratio},
      {"feasibility", nullptr, nullptr, &ResultRow::feasibility},
      {"sim_mode", &ResultRow::sim_mode},
      {"theoretical", nullptr, nullptr, &ResultRow::theoretical},
      {"empirical", nullptr, nullptr, &ResultRow::empirical},
      {"difference", nullptr, nullptr, &ResultRow::difference},
  };
  return cols;
}

void append_real(std::string& out, double v) {
  if (std::isnan(v)) {
    out += "nan";
    return;
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

void append_count(std::string& out, std::size_t v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

bool same_real(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

}  // namespace

bool ResultRow::same_as(const ResultRow& other) const {
  for (const auto& c : columns()) {
    if (c.text && this->*c.text != other.*c.text) return false;
    if (c.count && this->*c.count != other.*c.count) return false;
    if (c.real && !same_real(this->*c.real, other.*c.real)) return false;
  }
  return true;
}

const std::vector<std::string>& result_columns() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& c : columns()) v.emplace_back(c.name);
    return v;
  }();
  return names;
}

ResultsParseError::ResultsParseError(const std::string& path, std::size_t line,
                                     const std::string& what)
    : std::runtime_error(path + ":" + std::to_string(line) + ": " + what), line_(line) {}

std::string format_results(const ResultsTable& table) {
  std::string out = kSchemaLine + "\n";
  const auto& cols = columns();
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (k) out += ',';
    out += cols[k].name;
  }
  out += '\n';
  for (const auto& row : table) {
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (k) out += ',';
      const auto& c = cols[k];
      if (c.text) {
        const std::string& s = row.*c.text;
        if (s.find_first_of(",\n\r") != std::string::npos) {
          throw std::invalid_argument("field '" + std::string(c.name) + "' contains a separator");
        }
        out += s;
      } else if (c.count) {
        append_count(out, row.*c.count);
      } else {
        append_real(out, row.*c.real);
      }
    }
    out += '\n';
  }
  return out;
}

ResultsTable parse_results(std::string_view text, const std::string& source) {
  ResultsTable table;
  const auto& cols = columns();
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool saw_header = false;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line_no == 1) {
      if (line != kSchemaLine) {
        throw ResultsParseError(source, line_no, "expected schema line '" + kSchemaLine + "'");
      }
      continue;
    }
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != cols.size()) {
      throw ResultsParseError(source, line_no,
                              "expected " + std::to_string(cols.size()) + " fields, found " +
                                  std::to_string(cells.size()));
    }
    if (!saw_header) {
      for (std::size_t k = 0; k < cols.size(); ++k) {
        if (cells[k] != cols[k].name) {
          throw ResultsParseError(source, line_no,
                                  "unexpected column '" + std::string(cells[k]) + "'");
        }
      }
      saw_header = true;
      continue;
    }
    ResultRow row;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const auto& c = cols[k];
      const std::string_view cell = cells[k];
      const char* b = cell.data();
      const char* e = b + cell.size();
      auto bad = [&] {
        return ResultsParseError(source, line_no,
                                 "bad value '" + std::string(cell) + "' in column " + c.name);
      };
      if (c.text) {
        row.*c.text = std::string(cell);
      } else if (c.count) {
        const auto r = std::from_chars(b, e, row.*c.count);
        if (r.ec != std::errc() || r.ptr != e) throw bad();
      } else {
        const auto r = std::from_chars(b, e, row.*c.real);
        if (cell.empty() || r.ec != std::errc() || r.ptr != e) throw bad();
      }
    }
    table.push_back(std::move(row));
  }
  if (line_no == 0) throw ResultsParseError(source, 1, "empty file");
  if (!saw_header) throw ResultsParseError(source, line_no + 1, "missing column header");
  return table;
}

void write_results(const ResultsTable& table, const std::filesystem::path& path) {
  const std::string text = format_results(table);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

ResultsTable read_results(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string() + " for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_results(buf.str(), path.string());
}

}  // namespace rbiu
