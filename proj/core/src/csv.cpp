#include "hetero2st/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hetero2st/errors.hpp"

namespace hetero2st {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

bool parse_number(const std::string& field, double& out) {
  const std::string t = trim(field);
  if (t.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size() && errno != ERANGE;
}

}  // namespace

CsvTable read_csv(std::istream& in, const std::string& name) {
  std::vector<std::vector<double>> rows;
  std::optional<std::vector<std::string>> header;
  std::string line;
  std::size_t lineno = 0;
  std::size_t ncols = 0;
  bool first_data_row = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    std::vector<double> row(fields.size());
    bool all_numeric = true;
    std::size_t bad_col = 0;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (!parse_number(fields[c], row[c])) {
        all_numeric = false;
        bad_col = c;
        break;
      }
    }
    if (!all_numeric) {
      if (first_data_row && !header) {
        std::vector<std::string> h(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c) h[c] = trim(fields[c]);
        header = std::move(h);
        ncols = fields.size();
        continue;
      }
      throw ParseError(name + ": row " + std::to_string(lineno) + ", column " +
                       std::to_string(bad_col + 1) + ": not a number: '" +
                       trim(fields[bad_col]) + "'");
    }
    if (ncols == 0) ncols = fields.size();
    if (fields.size() != ncols) {
      throw ParseError(name + ": row " + std::to_string(lineno) + " has " +
                       std::to_string(fields.size()) + " fields, expected " +
                       std::to_string(ncols));
    }
    rows.push_back(std::move(row));
    first_data_row = false;
  }
  if (rows.empty()) {
    throw ParseError(name + ": no data rows");
  }
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(ncols));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < ncols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return CsvTable{std::move(m), std::move(header)};
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open for reading");
  return read_csv(in, path);
}

std::string format_double(double v) {
  char buf[40];
  // Shortest representation that round-trips, mirroring printf %.17g upper
  // bound but trimming when fewer digits already round-trip.
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(std::ostream& out, const Matrix& values,
               const std::vector<std::string>* header) {
  if (header) {
    for (std::size_t c = 0; c < header->size(); ++c) {
      if (c) out << ',';
      out << (*header)[c];
    }
    out << '\n';
  }
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      if (c) out << ',';
      out << format_double(values(r, c));
    }
    out << '\n';
  }
}

void write_csv_file(const std::string& path, const Matrix& values,
                    const std::vector<std::string>* header) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  write_csv(out, values, header);
}

}  // namespace hetero2st
