#include "csv.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <stdexcept>

namespace idd::cli {

CsvWriter::CsvWriter(const std::string& path) : out_(&std::cout) {
    if (!path.empty() && path != "-") {
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_) throw std::runtime_error("cannot open output file " + path);
        out_ = file_.get();
    }
}

void CsvWriter::comment(const std::string& text) { *out_ << "# " << text << '\n'; }

void CsvWriter::header(const std::vector<std::string>& columns) {
    columns_ = columns.size();
    for (std::size_t i = 0; i < columns.size(); ++i) *out_ << (i ? "," : "") << columns[i];
    *out_ << '\n';
}

void CsvWriter::row(const std::vector<Cell>& cells) {
    if (columns_ != 0 && cells.size() != columns_) throw std::logic_error("CSV row width does not match header");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) *out_ << ',';
        if (const double* d = std::get_if<double>(&cells[i])) {
            *out_ << format_double(*d);
        } else if (const long long* k = std::get_if<long long>(&cells[i])) {
            *out_ << *k;
        } else {
            *out_ << std::get<std::string>(cells[i]);
        }
    }
    *out_ << '\n';
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace idd::cli
