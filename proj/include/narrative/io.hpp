#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace narrative::io {

// Reads a whole file; throws IoError if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

// Writes via a temp file in the same directory plus rename, so readers
// never observe a truncated file.
void atomic_write(const std::filesystem::path& path, std::string_view content);

// Picks tab if the line contains one, otherwise comma.
char detect_delimiter(std::string_view line);

// Splits one delimited record. Fields may be double-quoted; doubled quotes
// inside a quoted field are literal quotes.
std::vector<std::string> split_record(std::string_view line, char delim);

// Quotes a field if it contains the delimiter, a quote, or a newline.
std::string escape_field(std::string_view field, char delim);

struct Table {
    char delimiter = ',';
    std::vector<std::vector<std::string>> rows;  // includes any header row
};

// Reads a delimiter-separated file, auto-detecting the delimiter from the
// first line. Blank lines are skipped. Throws IoError on missing file.
Table read_delimited(const std::filesystem::path& path);

}  // namespace narrative::io
