#pragma once
#include "bsl/fuchsian.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace bsl {

struct ScanRange {
    double t_min = 0.0;
    double t_max = 10.0;
    double step = 0.01;
};

struct RunConfig {
    std::string group = "octagon-genus2";
    std::vector<Mobius> generators;   // used when group == "generators"
    int nodes_per_arc = 16;
    ScanRange scan;
    std::map<std::string, double> tolerances;
    std::string output_dir = "out";
    std::uint64_t seed = 12345;

    double tol(const std::string& name) const;   // override or built-in default
};

// built-in tolerance names and defaults
const std::map<std::string, double>& default_tolerances();

RunConfig parse_config(const std::string& json_text);   // throws ConfigError
RunConfig load_config(const std::string& path);
RunConfig default_config();
// builds the regular 4g-gon for "<name>-genus<g>" (only g = 2 is supported) or the given generators
FuchsianGroup build_group(const RunConfig& cfg);
int genus_of(const std::string& group);

} // namespace bsl
