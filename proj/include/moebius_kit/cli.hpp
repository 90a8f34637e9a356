#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "moebius_kit/classifier.hpp"

namespace moebius_kit::cli {

/// Exit codes: 0 success, 1 domain error (or a failed fuzz assertion),
/// 2 usage, I/O or parse error. Errors are printed as
/// {"error": {"kind": ..., "message": ...}} on `out`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct ZooEntry {
  std::string name;
  SampledMap map;
};

/// Built-in non-Möbius maps exercised by the fuzz subcommand.
std::vector<ZooEntry> non_moebius_zoo();

}  // namespace moebius_kit::cli
