// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWLAB_CLI_OUTPUT_HPP
#define POWLAB_CLI_OUTPUT_HPP

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace powlab::cli {

/** Formats a real with 12 significant digits, the same on every run. */
std::string format_number(double v);

/**
 * CSV file whose first line is "# schema: <name> <version>: <columns>",
 * followed by the header row.
 */
class CsvWriter
{
public:
    using Cell = std::variant<std::string, double, long long, unsigned long long>;

    CsvWriter(const std::filesystem::path& path, const std::string& schema, std::vector<std::string> columns);

    void row(const std::vector<Cell>& cells);

private:
    std::ofstream m_out;
    std::size_t m_columns;
};

/** Named samples collected into mean / std / n for summary.json. */
class MetricSet
{
public:
    void add(const std::string& name, double value) { m_values[name].push_back(value); }
    const std::map<std::string, std::vector<double>>& values() const { return m_values; }

private:
    std::map<std::string, std::vector<double>> m_values;
};

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

/** A plain line chart with axes and a legend; no scripts or external resources. */
void write_line_chart(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
                      const std::string& y_label, const std::vector<Series>& series);

} // namespace powlab::cli

#endif // POWLAB_CLI_OUTPUT_HPP
