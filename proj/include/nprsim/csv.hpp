#ifndef NPRSIM_CSV_HPP
#define NPRSIM_CSV_HPP

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nprsim {

/// Minimal CSV writer with a fixed header. Numeric cells are formatted with
/// "%.12g" and checked for finiteness before they are written; a NaN or Inf
/// anywhere is a bug upstream and aborts the run.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header)
      : path_(path), columns_(header.size()) {
    out_.open(path, std::ios::binary | std::ios::trunc);
    if (!out_) throw std::runtime_error("cannot open for writing: " + path);
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out_ << ',';
      out_ << header[i];
    }
    out_ << '\n';
  }

  CsvWriter& cell(double v) {
    if (!std::isfinite(v)) {
      throw std::runtime_error("non-finite value for " + path_);
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return cell_raw(buf);
  }

  CsvWriter& cell(long long v) { return cell_raw(std::to_string(v)); }
  CsvWriter& cell(int v) { return cell_raw(std::to_string(v)); }
  CsvWriter& cell(const std::string& v) { return cell_raw(v); }

  void end_row() {
    if (in_row_ != columns_) {
      throw std::runtime_error("row width mismatch in " + path_);
    }
    out_ << '\n';
    in_row_ = 0;
  }

  void close() { out_.close(); }

 private:
  CsvWriter& cell_raw(const std::string& s) {
    if (in_row_) out_ << ',';
    out_ << s;
    ++in_row_;
    return *this;
  }

  std::string path_;
  std::ofstream out_;
  std::size_t columns_ = 0;
  std::size_t in_row_ = 0;
};

}  // namespace nprsim

#endif
