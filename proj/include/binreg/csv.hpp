#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "binreg/config.hpp"
#include "binreg/design.hpp"

namespace binreg {

/// Splits one CSV record. Supports double-quoted fields with "" escapes.
std::vector<std::string> split_csv_line(std::string_view line);

/// Quotes a field when it contains a comma, quote or newline.
std::string csv_escape(std::string_view field);

/// Reads grouped binomial data. Columns are located by header name; extra
/// columns are ignored and cells are whitespace-trimmed. Counts must be
/// base-10 integers. After reading, the whole dataset is validated and every
/// violation is reported in a single ValidationError. Row numbers in
/// messages are 1-based data rows (the header is not counted).
Dataset parse_csv_text(std::string_view text, const ModelConfig& config,
                       const std::string& source = "<input>");
Dataset parse_csv(const std::filesystem::path& path, const ModelConfig& config);

}  // namespace binreg
