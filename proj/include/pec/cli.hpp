// Command-line front end. Kept in the library so tests can drive it without
// spawning processes.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pec::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,     // I/O, assembler, ROM image or config errors
  kExitIllegalOpcode = 2,
  kExitOverflow = 3,       // peripheral FIFO overflow
  kExitUsage = 64,
};

struct RunConfig {
  std::string rom_path;
  std::uint64_t max_cycles = 100000;
  bool halt_on_self_loop = true;
  std::optional<int> osc_control_word;
  bool gating = true;
  std::string config_path;
  std::string trace_out;
  std::string report_out;
  std::string report_csv_out;
  std::string io_out;
  std::string inject_path;
  bool timestamp = true;
};

int cmd_asm(const std::string& source_path, const std::string& out_path, std::ostream& out,
            std::ostream& err);
int cmd_disasm(const std::string& image_path, std::ostream& out, std::ostream& err);
int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pec::cli
