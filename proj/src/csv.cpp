#include "fdfv/csv.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "fdfv/errors.hpp"

namespace fdfv {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : path_(path), columns_(header.size()) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  out_.open(path);
  if (!out_) throw ValidationError("cannot open '" + path + "' for writing");
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

void CsvWriter::separator() {
  if (filled_ == columns_) throw Error("too many columns in row of '" + path_ + "'");
  if (filled_ > 0) out_ << ',';
  ++filled_;
}

CsvWriter& CsvWriter::operator<<(double value) {
  separator();
  out_ << format_number(value);
  return *this;
}

CsvWriter& CsvWriter::operator<<(long value) {
  separator();
  out_ << value;
  return *this;
}

CsvWriter& CsvWriter::operator<<(const std::string& value) {
  separator();
  out_ << value;
  return *this;
}

void CsvWriter::end_row() {
  if (filled_ != columns_) throw Error("incomplete row in '" + path_ + "'");
  out_ << '\n';
  filled_ = 0;
}

}  // namespace fdfv
