#pragma once

#include <string>
#include <vector>

namespace fns {

// Column-oriented CSV table with deterministic formatting: doubles are
// rendered with %.17g so a rerun of the same computation produces a
// byte-identical file.
class CsvTable {
  public:
    explicit CsvTable(std::vector<std::string> header);

    void add_row(const std::vector<double>& row);
    void add_row_text(const std::vector<std::string>& row);

    std::size_t rows() const { return rows_.size(); }
    std::string render() const;

    // Writes atomically (temp file + rename) so readers never observe a
    // partial table.
    void write(const std::string& path) const;

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace fns
