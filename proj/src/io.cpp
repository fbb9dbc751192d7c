#include "dpl/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "dpl/errors.hpp"

namespace dpl {

std::string format_full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
  if (header.size() != columns.size())
    throw ValidationError("CSV header and column counts differ");
  std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns)
    if (c.size() != rows)
      throw ValidationError("CSV columns must have equal length");

  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  for (std::size_t c = 0; c < header.size(); ++c)
    out << (c ? "," : "") << header[c];
  out << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c)
      out << (c ? "," : "") << format_full(columns[c][r]);
    out << '\n';
  }
  if (!out) throw Error("write to '" + path + "' failed");
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error("write to '" + path + "' failed");
}

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw Error("cannot create directory '" + path + "': " + ec.message());
}

}  // namespace dpl
