#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace superopt {

struct RunConfig {
    std::string command;
    std::string input;
    std::string output;     // empty: stdout
    int grid_size = 256;    // SUPEROPT_GRID overrides the default; --grid overrides both
    int t_grid = 100;
    unsigned long long seed = 1;
    bool text = false;      // human-readable summary instead of JSON
};

/// Exit code: 0 pass, 1 input error, 2 theorem or certificate violation.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace superopt
