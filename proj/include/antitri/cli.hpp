#pragma once

// Command-line front end.  `run` holds all of it so tests can drive the tool
// in-process; tools/antitri.cpp only forwards argv and the standard streams.
//
// Exit codes: 0 success, 1 other failure (I/O, internal), 2 command-line or
// matrix-file parse error, 3 input is not skew-symmetric / Hermitian or has
// the wrong structure, 4 a numerical post-condition check failed (or the
// experiment failed its acceptance bands), 5 definite skew-Hermitian input.

#include <iosfwd>
#include <string>
#include <vector>

namespace antitri::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitOther = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitStructure = 3;
inline constexpr int kExitNumerical = 4;
inline constexpr int kExitDefinite = 5;

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace antitri::cli
