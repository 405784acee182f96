#pragma once

#include <string>
#include <vector>

namespace dos {

// In-memory CSV: one header row plus string cells, serialized with RFC 4180
// quoting and "\n" line ends.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// Shortest representation that round-trips a double exactly (17 significant
// digits); NaN serializes as "nan".
std::string format_double(double v);
std::string format_bool(bool v);

std::string to_csv_string(const CsvTable& table);
CsvTable parse_csv(const std::string& text);
CsvTable read_csv_file(const std::string& path);

// Writes to `path + ".tmp"` then renames, so failures never leave a partial
// file at the destination.
void write_csv_atomic(const std::string& path, const CsvTable& table);

// Headers must match exactly; numeric cells compare within tol (NaN equals
// NaN), non-numeric cells compare as strings.
bool csv_near_equal(const CsvTable& a, const CsvTable& b, double tol, std::string* why = nullptr);

}  // namespace dos
