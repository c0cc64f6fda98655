#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace slipkit::csv {

/// Formats a double with 9 significant digits ("%.9g"). This is the precision
/// used for every CSV the toolkit writes; values written at this precision
/// parse and re-format to the identical string.
std::string format_g9(double value);

/// Parses a floating point field. Throws DataError with `context` on garbage
/// or trailing characters. NaN/Inf are parsed (validation is the caller's).
double parse_double(const std::string& field, const std::string& context);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // raw fields, unparsed
};

/// Reads a comma-separated file. First line is the header. Throws DataError
/// if the file is missing or a row has a different arity than the header.
Table read_table(const std::filesystem::path& path);

/// Index of `name` in the table header; throws DataError naming the missing
/// column and the file it was expected in.
std::size_t column_index(const Table& table, const std::string& name,
                         const std::string& context);

/// Appends one row of g9-formatted values to `out`.
void append_row(std::string& out, std::span<const double> values);

/// Writes `contents` via a temporary file and rename, so readers never see a
/// partially written file.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace slipkit::csv
