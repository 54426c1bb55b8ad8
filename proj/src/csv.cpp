#include "dma/csv.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <system_error>

namespace dma::csv {

std::string format(double value)
{
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc())
        throw std::runtime_error("csv: failed to format value");
    return std::string(buf, end);
}

double parse_double(std::string_view text)
{
    double value = 0.0;
    const char *first = text.data();
    const char *last = text.data() + text.size();
    if (first != last && *first == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    return value;
}

unsigned long long parse_unsigned(std::string_view text)
{
    unsigned long long value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw std::invalid_argument("not a non-negative integer: '" + std::string(text) + "'");
    return value;
}

std::vector<std::string> split(std::string_view line, char sep)
{
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            fields.emplace_back(line.substr(start));
            break;
        }
        fields.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

void write_row(std::ostream &out, const std::vector<std::string> &fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i)
            out << ',';
        out << fields[i];
    }
    out << '\n';
}

std::string timestamp_line()
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[64];
    std::strftime(buf, sizeof(buf), "# generated %Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

Table read(std::istream &in)
{
    Table table;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line.front() == '#')
            continue;
        auto fields = split(line);
        if (!have_header) {
            table.header = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != table.header.size())
            throw std::runtime_error("csv: row has " + std::to_string(fields.size()) + " fields, header has " +
                                     std::to_string(table.header.size()));
        table.rows.push_back(std::move(fields));
    }
    if (!have_header)
        throw std::runtime_error("csv: missing header");
    return table;
}

} // namespace dma::csv
