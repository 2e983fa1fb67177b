#pragma once

// Command-line front end shared by the abcx tool and the tests.

#include <iosfwd>
#include <string>
#include <vector>

namespace abc::cli {

// Exit codes.
inline constexpr int kOk = 0;           // success or verdict pass
inline constexpr int kVerdictFail = 1;  // a verification ran and failed
inline constexpr int kUsageError = 2;   // bad arguments, missing files, budget refusals

// Environment variable holding the default enumeration budget.
inline constexpr const char* kBudgetVariable = "ABC_BUDGET";

// args excludes the program name. Writes one document to out and
// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace abc::cli
