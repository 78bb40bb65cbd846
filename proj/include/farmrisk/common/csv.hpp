#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace farmrisk {

// Fixed formatting used in every emitted table so reruns are byte-identical.
std::string format_double(double v);
// Six significant digits (p-values).
std::string format_sig6(double v);

// Minimal CSV writer: header + rows of already-formatted cells.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  [[nodiscard]] std::string str() const;
  void write(const std::filesystem::path& path) const;
  [[nodiscard]] std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace farmrisk
