#pragma once

#include <string>
#include <utility>
#include <vector>

namespace strength::eval {

struct Table {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

// Experiment output: a config snapshot plus result tables, written as an
// aligned human-readable .txt and a tab-separated .tsv. Both files are a
// pure function of their contents; wall-clock data goes to the side .meta.txt
// so reruns stay byte-identical.
struct Report {
  std::string name;
  std::vector<std::pair<std::string, std::string>> config_snapshot;
  std::vector<Table> tables;

  void add_table(Table table) { tables.push_back(std::move(table)); }
  // Writes <base>.txt and <base>.tsv.
  void write(const std::string& base_path) const;
  static void write_meta(const std::string& base_path, double runtime_seconds);
};

std::string fmt_double(double value, int precision = 6);

}  // namespace strength::eval
