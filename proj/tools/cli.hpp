#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace curvehedge::cli {

enum ExitCode : int { kOk = 0, kIoError = 1, kDomainError = 2, kVerificationFailed = 3 };

/// Runs one invocation; `args` excludes the program name. Output goes to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main_entry(int argc, char** argv);

}  // namespace curvehedge::cli
