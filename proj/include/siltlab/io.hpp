#pragma once
// CSV emission with a fixed dialect: comma separator, '.' decimal point,
// header row, LF line endings, no quoting (writers never emit commas in
// cells).  Doubles are printed with %.17g so re-runs are byte-identical.

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

namespace siltlab {

std::string format_double(double v);

class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns);

    class Row {
      public:
        explicit Row(CsvWriter& w) : w_(w) {}
        Row& col(double v);
        Row& col(int v) { return col_int(v); }
        Row& col(int64_t v) { return col_int(v); }
        Row& col(uint64_t v);
        Row& col(const std::string& s);
        void end();

      private:
        Row& col_int(int64_t v);
        CsvWriter& w_;
        size_t count_ = 0;
        std::string line_;
        friend class CsvWriter;
    };

    Row row() { return Row(*this); }
    void flush() { out_.flush(); }

  private:
    std::ofstream out_;
    size_t n_columns_;
    friend class Row;
};

}  // namespace siltlab
