#include "lpqb/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "lpqb/errors.hpp"

namespace lpqb {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

}  // namespace

int CsvTable::column_index(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

int CsvTable::require_column(const std::string& name) const {
  const int idx = column_index(name);
  if (idx < 0) throw DataError("csv: missing column '" + name + "'");
  return idx;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("read_csv: cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  if (!std::getline(in, line))
    throw DataError("read_csv: empty file '" + path + "'");
  table.header = split_line(line);
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    auto fields = split_line(line);
    if (fields.size() != table.header.size())
      throw DataError("read_csv: row " + std::to_string(table.rows.size() + 2) + " of '" + path +
                      "' has " + std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(table.header.size()));
    table.rows.push_back(std::move(fields));
  }
  return table;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path, std::ios::binary);  // binary: byte-identical across runs
  if (!out) throw DataError("write_csv: cannot open '" + path + "' for writing");
  for (std::size_t j = 0; j < header.size(); ++j)
    out << (j ? "," : "") << header[j];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j)
      out << (j ? "," : "") << row[j];
    out << '\n';
  }
  if (!out) throw DataError("write_csv: write failed for '" + path + "'");
}

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& field, const std::string& context) {
  if (field.empty())
    throw DataError("parse: missing value in " + context);
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last)
    throw DataError("parse: non-numeric value '" + field + "' in " + context);
  if (!std::isfinite(v))
    throw DataError("parse: non-finite value '" + field + "' in " + context);
  return v;
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("file_digest: cannot open '" + path + "'");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace lpqb
