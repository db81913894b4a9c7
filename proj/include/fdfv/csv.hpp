#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace fdfv {

// Plain comma-separated output with a one-line header. Numbers are written
// with 17 significant digits.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);

  CsvWriter& operator<<(double value);
  CsvWriter& operator<<(long value);
  CsvWriter& operator<<(int value) { return *this << static_cast<long>(value); }
  CsvWriter& operator<<(const std::string& value);
  CsvWriter& operator<<(const char* value) { return *this << std::string(value); }
  void end_row();

 private:
  void separator();

  std::ofstream out_;
  std::string path_;
  std::size_t columns_;
  std::size_t filled_ = 0;
};

std::string format_number(double value);

}  // namespace fdfv
