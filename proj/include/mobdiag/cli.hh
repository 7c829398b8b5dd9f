#ifndef MOBDIAG_CLI_HH
#define MOBDIAG_CLI_HH

#include <ostream>
#include <string>
#include <vector>

namespace mobdiag {

namespace exit_code {
constexpr int kSuccess = 0;
constexpr int kNotMinimal = 1; // `check`: candidate is not a minimal diagnosis
constexpr int kPartial = 10;
constexpr int kNoDiagnosis = 20;
constexpr int kUsage = 64;
constexpr int kParse = 65;
} // namespace exit_code

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace mobdiag

#endif
