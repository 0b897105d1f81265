#pragma once

#include <string>
#include <vector>

namespace lpqb {

/// Minimal CSV support: header row, comma separator, UTF-8, no quoting.
/// Numeric fields use a period decimal separator.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column, or -1.
  int column_index(const std::string& name) const;

  /// Index of a header column; throws DataError if absent.
  int require_column(const std::string& name) const;

  std::size_t n_rows() const { return rows.size(); }
};

CsvTable read_csv(const std::string& path);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// Shortest round-trip decimal representation (std::to_chars); output is
/// byte-stable for identical doubles.
std::string format_double(double v);

/// Strict double parse of a whole field; throws DataError on failure or
/// non-finite values. `context` names the column/row for the message.
double parse_double(const std::string& field, const std::string& context);

/// FNV-1a 64-bit digest of a file's bytes, hex-encoded (manifest input digests).
std::string file_digest(const std::string& path);

}  // namespace lpqb
