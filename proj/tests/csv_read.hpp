#pragma once

#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

// Minimal reader for the CSV files the library writes: "# key = value"
// metadata lines, one header line, then comma-separated rows.
struct CsvTable {
  std::map<std::string, std::string> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t k = 0; k < columns.size(); ++k)
      if (columns[k] == name) return k;
    return columns.size();
  }
  double num(std::size_t row, const std::string& name) const {
    return std::stod(rows.at(row).at(column(name)));
  }
};

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

inline CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find(" = ");
      if (eq != std::string::npos) t.meta[line.substr(2, eq - 2)] = line.substr(eq + 3);
    } else if (t.columns.empty()) {
      t.columns = split_csv(line);
    } else if (!line.empty()) {
      t.rows.push_back(split_csv(line));
    }
  }
  return t;
}

inline CsvTable read_csv_file(const std::string& path) {
  std::ifstream f(path);
  return read_csv(f);
}

inline std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}
