#pragma once

#include <string>
#include <utility>
#include <vector>

namespace nri::cli {

// One emitted data file: metadata block, numeric columns, then text columns.
struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> num_cols;
  std::vector<std::string> text_cols;
  std::vector<std::vector<double>> num;
  std::vector<std::vector<std::string>> text;

  void add_row(std::vector<double> values, std::vector<std::string> texts);
  std::size_t rows() const { return num.size(); }
};

std::string format_double(double v);  // %.17g, nan/inf spelled out

enum class Format { csv, json };

std::string render(const Table& t, Format f);
// empty path writes to stdout
void write_table(const Table& t, Format f, const std::string& path);

}  // namespace nri::cli
