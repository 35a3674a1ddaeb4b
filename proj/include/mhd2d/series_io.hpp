#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "mhd2d/diagnostics.hpp"

namespace mhd2d {

/// Appends NormRecord rows to a CSV file (and optionally an NDJSON mirror).
/// Values are written with 17 significant digits, so reading them back
/// reproduces every double bitwise.
class SeriesWriter {
public:
    /// Creates (truncating) the files and writes the CSV header.
    SeriesWriter(const std::filesystem::path& csv, std::vector<std::string> columns, bool ndjson);
    /// Reopens an existing series for appending; the header must match.
    static SeriesWriter append(const std::filesystem::path& csv, std::vector<std::string> columns, bool ndjson);

    void write(const std::vector<double>& row);

private:
    SeriesWriter() = default;

    std::vector<std::string> columns_;
    std::ofstream csv_;
    std::ofstream ndjson_;
};

std::string csv_header(const std::vector<std::string>& columns);
std::string csv_row(const std::vector<double>& row);

/// Throws IoError on a missing file or ragged rows.
SeriesTable read_series_csv(const std::filesystem::path& csv);
void write_series_csv(const std::filesystem::path& csv, const SeriesTable& table);

std::filesystem::path ndjson_path_for(const std::filesystem::path& csv);

}  // namespace mhd2d
