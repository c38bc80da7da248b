#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace eznav::cli {

// Nine significant digits, the precision of every number the tool prints.
std::string num(double v);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void row(const std::vector<double>& values);
  void row(const std::vector<std::string>& cells);
  std::string str() const { return text_; }

 private:
  std::size_t columns_;
  std::string text_;
};

// Writes `content` to dir/name, creating dir if needed. Throws
// std::runtime_error on I/O failure.
void write_file(const std::filesystem::path& dir, const std::string& name, const std::string& content);

}  // namespace eznav::cli
