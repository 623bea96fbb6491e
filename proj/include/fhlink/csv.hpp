// csv.hpp - canonical CSV emission for result tables.
//
// Byte-stable: the same table always serializes to the same bytes (12
// significant digits, fixed header, '\n' line endings, trailing newline), so
// output files can be compared directly across runs and thread counts.
#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "fhlink/analysis.hpp"

namespace fhlink {

inline std::string format_number(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string csv_text(const ResultTable& table) {
  std::string out = "x_db_or_alpha,estimate,stderr,trials\n";
  for (const auto& r : table.rows) {
    out += format_number(r.x);
    out += ',';
    out += format_number(r.estimate);
    out += ',';
    out += format_number(r.std_error);
    out += ',';
    out += std::to_string(r.trials);
    out += '\n';
  }
  return out;
}

inline void write_csv(const ResultTable& table, const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  const std::string text = csv_text(table);
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  f.flush();
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace fhlink
