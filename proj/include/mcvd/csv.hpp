#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace mcvd {

// Locale-independent numeric formatting (shortest round-trip form).
std::string format_double(double v);
std::string format_int(std::int64_t v);

/// Column-oriented numeric table with a header row.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> data;  // data[c][r]

  std::size_t rows() const;
  int column_index(const std::string& name) const;  // -1 if absent
};

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);
void write_csv_file(const std::string& path,
                    const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& columns);

CsvTable read_csv_file(const std::string& path);

/// Flat key=value sidecar describing a run.
using Manifest = std::vector<std::pair<std::string, std::string>>;
void write_manifest(const std::string& path, const Manifest& manifest);

}  // namespace mcvd
