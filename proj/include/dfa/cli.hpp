// Command-line front end: parse, run, analyze, check, opt and fuzz over .imp
// files. Exit codes: 0 success, 1 usage or parse error, 2 stuck execution,
// 3 budget exhausted, 4 check failure.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dfa {

enum ExitCode : int {
    ExitSuccess = 0,
    ExitUsage = 1,
    ExitStuck = 2,
    ExitBudget = 3,
    ExitCheckFailed = 4,
};

/// `args` excludes the executable name. Color is only emitted when `color` is set.
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color = false);

} // namespace dfa
