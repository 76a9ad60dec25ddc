#include "bsl/csv.hpp"
#include "bsl/errors.hpp"

#include <charconv>
#include <cmath>

namespace bsl {

std::string fmt17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header) : out_(path) {
    if (!out_) throw ConfigError("cannot write " + path);
    for (auto& h : header) str(h);
    end_row();
}

void CsvWriter::sep() {
    if (!first_) out_ << ',';
    first_ = false;
}

CsvWriter& CsvWriter::num(double v) {
    sep();
    out_ << fmt17(v);
    return *this;
}

CsvWriter& CsvWriter::integer(long long v) {
    sep();
    out_ << v;
    return *this;
}

CsvWriter& CsvWriter::str(const std::string& v) {
    sep();
    out_ << v;
    return *this;
}

void CsvWriter::end_row() {
    out_ << '\n';
    first_ = true;
}

} // namespace bsl
