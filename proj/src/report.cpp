#include "bsl/report.hpp"

#include <cstdio>
#include <json.hpp>

namespace bsl {

void SuiteReport::below(const std::string& name, double value, double threshold, const std::string& note) {
    checks_.push_back({name, value, threshold, value < threshold, note});
}

void SuiteReport::flag(const std::string& name, bool pass, double value, double threshold, const std::string& note) {
    checks_.push_back({name, value, threshold, pass, note});
}

bool SuiteReport::ok() const {
    for (auto& c : checks_)
        if (!c.pass) return false;
    return true;
}

std::string SuiteReport::text() const {
    std::string out;
    char buf[512];
    for (auto& c : checks_) {
        std::snprintf(buf, sizeof buf, "%-4s %-44s value=%.6e threshold=%.3e%s%s\n", c.pass ? "PASS" : "FAIL",
                      c.name.c_str(), c.value, c.threshold, c.note.empty() ? "" : "  ", c.note.c_str());
        out += buf;
    }
    out += ok() ? "overall PASS\n" : "overall FAIL\n";
    return out;
}

std::string SuiteReport::json() const {
    nlohmann::ordered_json j;
    j["overall"] = ok() ? "pass" : "fail";
    for (auto& c : checks_) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["value"] = c.value;
        e["threshold"] = c.threshold;
        e["pass"] = c.pass;
        if (!c.note.empty()) e["note"] = c.note;
        j["checks"].push_back(e);
    }
    return j.dump(2) + "\n";
}

} // namespace bsl
