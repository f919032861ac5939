#pragma once

#include <fstream>
#include <span>
#include <string>
#include <vector>

namespace fracheat {

/// Shortest round-trip decimal representation (17 significant digits),
/// so CSV replay is byte-stable.
std::string format_full(double x);

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void write_row(std::span<const double> values);
  void close();

 private:
  std::ofstream out_;
};

}  // namespace fracheat
