#pragma once
#include <fstream>
#include <string>
#include <vector>

namespace bsl {

// comma separated, header row, numbers as %.17g independent of locale
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);
    CsvWriter& num(double v);
    CsvWriter& integer(long long v);
    CsvWriter& str(const std::string& v);
    void end_row();

private:
    std::ofstream out_;
    bool first_ = true;
    void sep();
};

std::string fmt17(double v);

} // namespace bsl
