#include "siltlab/io.hpp"

#include <cstdio>
#include <stdexcept>

namespace siltlab {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : out_(path, std::ios::binary), n_columns_(columns.size()) {
    if (!out_) throw std::runtime_error("cannot open " + path);
    for (size_t i = 0; i < columns.size(); ++i) {
        if (i) out_ << ',';
        out_ << columns[i];
    }
    out_ << '\n';
}

CsvWriter::Row& CsvWriter::Row::col(double v) { return col(format_double(v)); }

CsvWriter::Row& CsvWriter::Row::col_int(int64_t v) { return col(std::to_string(v)); }

CsvWriter::Row& CsvWriter::Row::col(uint64_t v) { return col(std::to_string(v)); }

CsvWriter::Row& CsvWriter::Row::col(const std::string& s) {
    if (count_) line_ += ',';
    line_ += s;
    ++count_;
    return *this;
}

void CsvWriter::Row::end() {
    if (count_ != w_.n_columns_)
        throw std::runtime_error("csv row has wrong number of columns");
    w_.out_ << line_ << '\n';
}

}  // namespace siltlab
