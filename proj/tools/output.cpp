#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace nri::cli {

void Table::add_row(std::vector<double> values, std::vector<std::string> texts) {
  if (values.size() != num_cols.size() || texts.size() != text_cols.size())
    throw std::logic_error("row does not match the column layout");
  num.push_back(std::move(values));
  text.push_back(std::move(texts));
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

// quote text fields only when they would break the row
std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c == '\n' ? ' ' : c;
  }
  return q + "\"";
}

std::string render_csv(const Table& t) {
  std::ostringstream os;
  for (const auto& [k, v] : t.meta) os << "# " << k << " = " << v << "\n";
  bool first = true;
  for (const auto& c : t.num_cols) os << (first ? "" : ",") << c, first = false;
  for (const auto& c : t.text_cols) os << (first ? "" : ",") << c, first = false;
  os << "\n";
  for (std::size_t r = 0; r < t.rows(); ++r) {
    first = true;
    for (double v : t.num[r]) os << (first ? "" : ",") << format_double(v), first = false;
    for (const auto& s : t.text[r]) os << (first ? "" : ",") << csv_text(s), first = false;
    os << "\n";
  }
  return os.str();
}

std::string render_json(const Table& t) {
  using nlohmann::ordered_json;
  ordered_json j;
  ordered_json meta = ordered_json::object();
  for (const auto& [k, v] : t.meta) meta[k] = v;
  j["metadata"] = meta;
  ordered_json cols = ordered_json::array();
  for (const auto& c : t.num_cols) cols.push_back(c);
  for (const auto& c : t.text_cols) cols.push_back(c);
  j["columns"] = cols;
  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < t.rows(); ++r) {
    ordered_json row = ordered_json::object();
    for (std::size_t c = 0; c < t.num_cols.size(); ++c) {
      const double v = t.num[r][c];
      if (std::isfinite(v))
        row[t.num_cols[c]] = v;
      else
        row[t.num_cols[c]] = nullptr;  // JSON has no nan/inf
    }
    for (std::size_t c = 0; c < t.text_cols.size(); ++c) row[t.text_cols[c]] = t.text[r][c];
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j.dump(1) + "\n";
}

}  // namespace

std::string render(const Table& t, Format f) {
  return f == Format::csv ? render_csv(t) : render_json(t);
}

void write_table(const Table& t, Format f, const std::string& path) {
  const std::string s = render(t, f);
  if (path.empty()) {
    std::cout << s;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  out << s;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace nri::cli
