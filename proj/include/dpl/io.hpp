#pragma once

#include <string>
#include <vector>

namespace dpl {

/// Shortest exact decimal form of a double (17 significant digits), so CSV
/// outputs are bit-comparable across runs.
std::string format_full(double v);

/// Write equal-length columns as CSV with the given header names.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

void write_text_file(const std::string& path, const std::string& content);

/// Create the directory (and parents) if needed.
void ensure_directory(const std::string& path);

}  // namespace dpl
