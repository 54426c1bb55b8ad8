#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace dma::csv {

// Shortest representation that parses back to the identical double.
std::string format(double value);

double parse_double(std::string_view text);
unsigned long long parse_unsigned(std::string_view text);

std::vector<std::string> split(std::string_view line, char sep = ',');

void write_row(std::ostream &out, const std::vector<std::string> &fields);

// "# generated <UTC timestamp>" line placed above every result table.
std::string timestamp_line();

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// Skips '#' comment lines; first remaining line is the header. Throws on ragged rows.
Table read(std::istream &in);

} // namespace dma::csv
