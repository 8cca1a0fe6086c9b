#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rbm::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kCapacity = 3, kNumerical = 4 };

struct RunConfig {
  std::string command;  // spectrum, moments, clt, coherence, opcount, materialize
  std::string ensemble = "simple";
  std::string randomizer = "hbdct";
  std::string matrix = "hilbert";
  int n = 0;
  std::size_t m = 100;
  unsigned k = 1;
  std::optional<int> subsample_k;  // opcount only
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::string out;     // empty: write to the output stream
  std::string format;  // csv, json or hist; empty picks the command default
  int threads = 0;
  bool fix_base = false;
  double bin_width = 0.005;
};

/// Canonical argument list for a config, omitting --out and --threads (neither
/// changes the output bytes). Feeding it back to run() replays the command.
std::vector<std::string> canonical_args(const RunConfig& c);

/// "rbm <version> <canonical args>", the first line of every output file.
std::string header_line(const RunConfig& c);

/// Parses argv-style arguments (without the program name), runs the command and
/// writes the result to `out` or to --out. Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rbm::cli
