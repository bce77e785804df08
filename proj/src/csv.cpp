#include "fns/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace fns {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
    if (header_.empty()) throw std::invalid_argument("CsvTable: empty header");
}

void CsvTable::add_row(const std::vector<double>& row) {
    std::vector<std::string> cells;
    cells.reserve(row.size());
    for (double v : row) cells.push_back(format_double(v));
    add_row_text(cells);
}

void CsvTable::add_row_text(const std::vector<std::string>& row) {
    if (row.size() != header_.size())
        throw std::invalid_argument("CsvTable: row width " + std::to_string(row.size()) +
                                    " != header width " + std::to_string(header_.size()));
    rows_.push_back(row);
}

std::string CsvTable::render() const {
    std::string out;
    auto append_line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    append_line(header_);
    for (const auto& r : rows_) append_line(r);
    return out;
}

void CsvTable::write(const std::string& path) const { write_text_file(path, render()); }

void write_text_file(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
        out.write(contents.data(), std::streamsize(contents.size()));
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("rename failed: " + path);
    }
}

}  // namespace fns
