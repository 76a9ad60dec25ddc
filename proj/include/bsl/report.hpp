#pragma once
#include <string>
#include <vector>

namespace bsl {

struct Check {
    std::string name;
    double value = 0;
    double threshold = 0;
    bool pass = true;
    std::string note;
};

class SuiteReport {
public:
    // value < threshold passes
    void below(const std::string& name, double value, double threshold, const std::string& note = "");
    void flag(const std::string& name, bool pass, double value = 0, double threshold = 0, const std::string& note = "");
    bool ok() const;
    const std::vector<Check>& checks() const { return checks_; }
    std::string text() const;   // one line per check, fixed formatting
    std::string json() const;

private:
    std::vector<Check> checks_;
};

} // namespace bsl
