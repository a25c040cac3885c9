// slogic :: cli
//
//   slogic decide   FILE QUERY [--engine E] [--format text|json] [--model] [--proof]
//   slogic check    FILE [--engine E] [--format F] [--model]
//   slogic saturate FILE [--max-ante N] [--format F] [--out PATH] [--cached PATH]
//   slogic tableau  FILE [QUERY] [--format F]
//   slogic matrix   FILE [--engine E] [--format F] [--dot] [--out PATH]
//
// Exit status: 0 proved / consistent / success, 1 refuted or independent
// (decide) / inconsistent, 2 usage or input error, 3 internal invariant failure.

#ifndef SLOGIC_CLI_HPP_
#define SLOGIC_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace slogic::cli {

  enum ExitCode : int { kSuccess = 0, kNegative = 1, kUsage = 2, kInternal = 3 };

  // `args` excludes the program name.
  int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace slogic::cli

#endif // SLOGIC_CLI_HPP_
