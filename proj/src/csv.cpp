#include "binreg/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "binreg/error.hpp"

namespace binreg {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::int64_t parse_count(std::string_view cell, const std::string& where) {
  std::int64_t v = 0;
  const auto* first = cell.data();
  const auto* last = cell.data() + cell.size();
  if (!cell.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (cell.empty() || ec != std::errc() || ptr != last) {
    throw ParseError(where + ": expected an integer count, got '" + std::string(cell) + "'");
  }
  return v;
}

}  // namespace

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else {
      field += ch;
    }
  }
  out.push_back(std::move(field));
  return out;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

Dataset parse_csv_text(std::string_view text, const ModelConfig& config,
                       const std::string& source) {
  std::istringstream in{std::string(text)};
  std::string line;

  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (!trim(line).empty()) {
      header = split_csv_line(line);
      break;
    }
  }
  if (header.empty()) throw ParseError(source + ": missing header row");
  for (auto& h : header) h = std::string(trim(h));
  if (header.front().starts_with("\xEF\xBB\xBF")) header.front().erase(0, 3);

  auto column = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw ParseError(source + ": missing column '" + name + "'");
  };
  const std::size_t y_col = column(config.successes_column);
  const std::size_t n_col = column(config.trials_column);
  std::vector<std::size_t> var_cols;
  for (const auto& v : config.variables) var_cols.push_back(column(v.name));

  Dataset data;
  data.variables = config.variables;
  std::size_t row_no = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++row_no;
    const auto cells = split_csv_line(line);
    const std::string where = source + ": row " + std::to_string(row_no);
    if (cells.size() < header.size()) {
      throw ParseError(where + ": expected " + std::to_string(header.size()) +
                       " fields, got " + std::to_string(cells.size()));
    }
    Observation obs;
    obs.successes = parse_count(trim(cells[y_col]), where + ", column '" +
                                                        config.successes_column + "'");
    obs.trials = parse_count(trim(cells[n_col]), where + ", column '" +
                                                     config.trials_column + "'");
    for (std::size_t c : var_cols) obs.levels.emplace_back(trim(cells[c]));
    data.rows.push_back(std::move(obs));
  }

  const auto violations = validate_dataset(data);
  if (!violations.empty()) {
    std::string msg = source + ": " + std::to_string(violations.size()) + " invalid row(s)";
    for (const auto& v : violations) {
      msg += "\n  row " + std::to_string(v.row + 1) + ": " + v.message;
    }
    throw ValidationError(msg);
  }
  return data;
}

Dataset parse_csv(const std::filesystem::path& path, const ModelConfig& config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open data file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv_text(ss.str(), config, path.string());
}

}  // namespace binreg
