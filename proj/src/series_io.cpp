#include "mhd2d/series_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "json.hpp"
#include "mhd2d/errors.hpp"

namespace mhd2d {

namespace {

std::string format_value(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, sep)) out.push_back(cell);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

}  // namespace

std::filesystem::path ndjson_path_for(const std::filesystem::path& csv) {
    auto p = csv;
    p.replace_extension(".ndjson");
    return p;
}

std::string csv_header(const std::vector<std::string>& columns) {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out += ',';
        out += columns[i];
    }
    return out;
}

std::string csv_row(const std::vector<double>& row) {
    std::string out;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += format_value(row[i]);
    }
    return out;
}

SeriesWriter::SeriesWriter(const std::filesystem::path& csv, std::vector<std::string> columns, bool ndjson)
    : columns_(std::move(columns)) {
    csv_.open(csv, std::ios::trunc);
    if (!csv_) throw IoError("cannot create series file " + csv.string());
    csv_ << csv_header(columns_) << '\n';
    csv_.flush();
    if (ndjson) {
        ndjson_.open(ndjson_path_for(csv), std::ios::trunc);
        if (!ndjson_) throw IoError("cannot create " + ndjson_path_for(csv).string());
    }
}

SeriesWriter SeriesWriter::append(const std::filesystem::path& csv, std::vector<std::string> columns, bool ndjson) {
    const auto existing = read_series_csv(csv);
    if (existing.columns != columns) throw IoError("series header in " + csv.string() + " does not match the run layout");
    SeriesWriter w;
    w.columns_ = std::move(columns);
    w.csv_.open(csv, std::ios::app);
    if (!w.csv_) throw IoError("cannot append to " + csv.string());
    if (ndjson) {
        w.ndjson_.open(ndjson_path_for(csv), std::ios::app);
        if (!w.ndjson_) throw IoError("cannot append to " + ndjson_path_for(csv).string());
    }
    return w;
}

void SeriesWriter::write(const std::vector<double>& row) {
    if (row.size() != columns_.size()) throw IoError("series row has the wrong number of columns");
    csv_ << csv_row(row) << '\n';
    csv_.flush();
    if (!csv_) throw IoError("failed writing series row");
    if (ndjson_.is_open()) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (std::isfinite(row[i]))
                obj[columns_[i]] = row[i];
            else
                obj[columns_[i]] = nullptr;
        }
        ndjson_ << obj.dump() << '\n';
        ndjson_.flush();
    }
}

SeriesTable read_series_csv(const std::filesystem::path& csv) {
    std::ifstream in(csv);
    if (!in) throw IoError("cannot read series file " + csv.string());
    SeriesTable table;
    std::string line;
    if (!std::getline(in, line)) throw IoError("series file " + csv.string() + " has no header");
    table.columns = split(line, ',');
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != table.columns.size())
            throw IoError(csv.string() + ":" + std::to_string(lineno) + ": expected " +
                          std::to_string(table.columns.size()) + " fields");
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) {
            char* end = nullptr;
            const double v = std::strtod(c.c_str(), &end);
            if (c.empty() || end != c.c_str() + c.size())
                throw IoError(csv.string() + ":" + std::to_string(lineno) + ": bad number '" + c + "'");
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_series_csv(const std::filesystem::path& csv, const SeriesTable& table) {
    std::ofstream out(csv, std::ios::trunc);
    if (!out) throw IoError("cannot write " + csv.string());
    out << csv_header(table.columns) << '\n';
    for (const auto& r : table.rows) out << csv_row(r) << '\n';
    if (!out) throw IoError("failed writing " + csv.string());
}

}  // namespace mhd2d
