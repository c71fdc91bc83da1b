#include "bbm/io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "bbm/errors.hpp"

namespace bbm::io {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  return is;
}

namespace {
std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}
}  // namespace

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

std::vector<double> CsvTable::numeric_column(const std::string& name) const {
  const int c = column(name);
  if (c < 0) throw MalformedInputError("CSV: missing column '" + name + "'");
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    if (static_cast<std::size_t>(c) >= r.size() || r[c].empty())
      throw MalformedInputError("CSV: empty cell in column '" + name + "'");
    out.push_back(std::stod(r[c]));
  }
  return out;
}

CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  if (!std::getline(is, line) || line.empty())
    throw MalformedInputError("CSV: missing header row");
  t.header = split(line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    t.rows.push_back(split(line));
  }
  return t;
}

CsvTable read_csv_file(const std::string& path) {
  auto is = open_in(path);
  return read_csv(is);
}

}  // namespace bbm::io
