#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hetero2st/point_cloud.hpp"

namespace hetero2st {

struct CsvTable {
  Matrix values;
  std::optional<std::vector<std::string>> header;  // present when detected
};

/// Comma-separated numeric matrix, UTF-8, decimal point. A non-numeric first
/// row is treated as a header. Parse errors name the 1-based row and column.
CsvTable read_csv(std::istream& in, const std::string& name = "<stream>");
CsvTable read_csv_file(const std::string& path);

/// Round-trip-exact writer: doubles are printed with up to 17 significant
/// digits so identical matrices serialize to identical bytes.
void write_csv(std::ostream& out, const Matrix& values,
               const std::vector<std::string>* header = nullptr);
void write_csv_file(const std::string& path, const Matrix& values,
                    const std::vector<std::string>* header = nullptr);

/// Format a double the way the CSV writer does.
std::string format_double(double v);

}  // namespace hetero2st
