#include "mcvd/csv.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mcvd {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_int(std::int64_t v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::size_t CsvTable::rows() const {
  return data.empty() ? 0 : data.front().size();
}

int CsvTable::column_index(const std::string& name) const {
  for (std::size_t c = 0; c < columns.size(); ++c)
    if (columns[c] == name) return static_cast<int>(c);
  return -1;
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
  for (std::size_t c = 0; c < header.size(); ++c)
    os << (c ? "," : "") << header[c];
  os << '\n';
  const std::size_t n_rows = columns.empty() ? 0 : columns.front().size();
  for (std::size_t r = 0; r < n_rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c)
      os << (c ? "," : "") << format_double(columns[c][r]);
    os << '\n';
  }
}

void write_csv_file(const std::string& path,
                    const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& columns) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::ios_base::failure("cannot open for writing: " + path);
  write_csv(os, header, columns);
  if (!os) throw std::ios_base::failure("write failed: " + path);
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::ios_base::failure("cannot open for reading: " + path);
  CsvTable table;
  std::string line;
  if (!std::getline(is, line))
    throw std::ios_base::failure("empty CSV file: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::stringstream header(line);
  std::string cell;
  while (std::getline(header, cell, ',')) table.columns.push_back(cell);
  table.data.resize(table.columns.size());
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t start = 0;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      std::size_t end = line.find(',', start);
      if (end == std::string::npos) end = line.size();
      double value = 0.0;
      const auto res =
          std::from_chars(line.data() + start, line.data() + end, value);
      if (res.ec != std::errc{})
        throw std::ios_base::failure("bad numeric cell in " + path + ": " +
                                     line.substr(start, end - start));
      table.data[c].push_back(value);
      start = end + 1;
    }
  }
  return table;
}

void write_manifest(const std::string& path, const Manifest& manifest) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::ios_base::failure("cannot open for writing: " + path);
  for (const auto& [key, value] : manifest) os << key << '=' << value << '\n';
  if (!os) throw std::ios_base::failure("write failed: " + path);
}

}  // namespace mcvd
