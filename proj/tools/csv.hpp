#pragma once

#include <fstream>
#include <iosfwd>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace idd::cli {

using Cell = std::variant<double, long long, std::string>;

// Writes '#'-prefixed metadata, one header row and data rows. Doubles are
// printed with 17 significant digits so they round-trip exactly.
class CsvWriter {
public:
    // An empty path or "-" writes to stdout.
    explicit CsvWriter(const std::string& path);

    void comment(const std::string& text);
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<Cell>& cells);

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* out_;
    std::size_t columns_ = 0;
};

std::string format_double(double v);

}  // namespace idd::cli
