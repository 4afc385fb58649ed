#include "strength/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace strength::eval {

std::string fmt_double(double value, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, value);
  return buf;
}

void Report::write(const std::string& base_path) const {
  {
    std::ofstream txt(base_path + ".txt");
    if (!txt) throw std::runtime_error("cannot write report: " + base_path);
    txt << "report: " << name << "\n";
    if (!config_snapshot.empty()) {
      txt << "config:\n";
      for (const auto& [k, v] : config_snapshot) {
        txt << "  " << k << " = " << v << "\n";
      }
    }
    for (const Table& table : tables) {
      txt << "\n" << table.title << "\n";
      std::vector<size_t> widths(table.columns.size(), 0);
      for (size_t c = 0; c < table.columns.size(); ++c) {
        widths[c] = table.columns[c].size();
      }
      for (const auto& row : table.rows) {
        for (size_t c = 0; c < row.size() && c < widths.size(); ++c) {
          widths[c] = std::max(widths[c], row[c].size());
        }
      }
      auto emit_row = [&](const std::vector<std::string>& row) {
        for (size_t c = 0; c < row.size(); ++c) {
          txt << (c ? "  " : "") << row[c];
          if (c + 1 < row.size()) {
            txt << std::string(widths[c] - row[c].size(), ' ');
          }
        }
        txt << "\n";
      };
      emit_row(table.columns);
      for (const auto& row : table.rows) emit_row(row);
    }
    if (!txt) throw std::runtime_error("report write failed: " + base_path);
  }
  {
    std::ofstream tsv(base_path + ".tsv");
    if (!tsv) throw std::runtime_error("cannot write report: " + base_path);
    tsv << "#report\t" << name << "\n";
    for (const auto& [k, v] : config_snapshot) {
      tsv << "#config\t" << k << "\t" << v << "\n";
    }
    for (const Table& table : tables) {
      tsv << "#table\t" << table.title << "\n";
      tsv << "#columns";
      for (const auto& c : table.columns) tsv << "\t" << c;
      tsv << "\n";
      for (const auto& row : table.rows) {
        for (size_t c = 0; c < row.size(); ++c) {
          tsv << (c ? "\t" : "") << row[c];
        }
        tsv << "\n";
      }
    }
    if (!tsv) throw std::runtime_error("report write failed: " + base_path);
  }
}

void Report::write_meta(const std::string& base_path, double runtime_seconds) {
  std::ofstream meta(base_path + ".meta.txt");
  if (!meta) throw std::runtime_error("cannot write meta: " + base_path);
  meta << "runtime_seconds " << fmt_double(runtime_seconds, 3) << "\n";
}

}  // namespace strength::eval
