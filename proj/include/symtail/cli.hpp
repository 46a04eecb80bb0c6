#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace symtail::cli {

enum class Command { bound, sweep, kleitman, compare, tighten };

/// Exit-code contract shared by every subcommand.
enum ExitCode : int {
  kOk = 0,         // every asserted inequality held
  kViolation = 1,  // at least one inequality failed
  kUsage = 2,      // bad flags, unreadable or malformed input, cap exceeded
};

struct RunSpec {
  Command command = Command::bound;
  std::string input_path;
  std::string output_path;  // "-" writes to stdout
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> max_n;
  std::optional<std::size_t> max_width;  // atom pairs per convolution step
};

int cmd_bound(const RunSpec& spec, std::ostream& diag);
int cmd_sweep(const RunSpec& spec, std::ostream& diag);
int cmd_kleitman(const RunSpec& spec, std::ostream& diag);
int cmd_compare(const RunSpec& spec, std::ostream& diag);
int cmd_tighten(const RunSpec& spec, std::ostream& diag);

/// Dispatches on spec.command and maps exceptions to kUsage.
int run(const RunSpec& spec, std::ostream& diag);

/// Parses argv (subcommand plus flags) and runs it.
int main(int argc, char** argv);

}  // namespace symtail::cli
