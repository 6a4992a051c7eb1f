#pragma once

// Minimal CSV emission with a fixed numeric format so reports are
// byte-stable across runs.

#include <ostream>
#include <string>
#include <vector>

namespace gsc::cli {

/// 12 significant digits, "inf"/"-inf"/"nan" spelled out, -0 printed as 0.
std::string format_number(double v);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
};

}  // namespace gsc::cli
