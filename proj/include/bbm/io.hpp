#ifndef BBM_IO_HPP
#define BBM_IO_HPP

#include <fstream>
#include <string>
#include <vector>

namespace bbm::io {

/// Floating-point formatting used in every output file: 9 significant
/// digits, so repeated runs are byte-identical.
std::string fmt(double x);

/// Opens for writing, throws on failure.
std::ofstream open_out(const std::string& path);
std::ifstream open_in(const std::string& path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 if absent
  std::vector<double> numeric_column(const std::string& name) const;
};

/// Parses simple comma-separated tables (no quoting; empty cells allowed).
CsvTable read_csv(std::istream& is);
CsvTable read_csv_file(const std::string& path);

}  // namespace bbm::io

#endif
