// io.hpp - plot-ready output: CSV with full-precision (17 significant digit)
// decimal formatting so every emitted number re-parses to the exact double,
// plus small JSON helpers.  No locale dependence, no timestamps in data
// files (run metadata goes to a separate manifest).
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace isingbtz {

// Shortest decimal string with up to 17 significant digits ('.'-decimal,
// round-trips exactly through strtod).
std::string format_double(double x);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void row(const std::vector<std::string>& cells);
  void row_values(const std::vector<double>& values);
  const std::string& content() const { return buf_; }
  void write(const std::filesystem::path& path) const;

 private:
  std::size_t columns_ = 0;
  std::string buf_;
};

// Parsed CSV with a header row; cells kept as strings, numeric access on
// demand.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 when missing
  double value(std::size_t row, int col) const;
};

CsvTable read_csv(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace isingbtz
