#include "pec/cli.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/chrono.h>
#include <fmt/format.h>

#include "pec/assembler.hpp"
#include "pec/clocking.hpp"
#include "pec/config.hpp"
#include "pec/power.hpp"
#include "pec/simulator.hpp"

namespace pec::cli {

namespace {

class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError(fmt::format("{}: cannot open", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw FileError(fmt::format("{}: cannot write", path));
}

std::string default_output_path(const std::string& source) {
  const auto slash = source.find_last_of('/');
  const auto dot = source.find_last_of('.');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
    return source.substr(0, dot) + ".hex";
  return source + ".hex";
}

std::string utc_timestamp() {
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}",
                     fmt::gmtime(std::chrono::system_clock::to_time_t(
                         std::chrono::system_clock::now())));
}

}  // namespace

int cmd_asm(const std::string& source_path, const std::string& out_path, std::ostream& out,
            std::ostream& err) {
  try {
    const Assembly a = assemble(read_file(source_path));
    const std::string target = out_path.empty() ? default_output_path(source_path) : out_path;
    write_file(target, format_rom_image(a.image));
    out << fmt::format("{}: {} symbols\n", target, a.symbols.size());
    return kExitOk;
  } catch (const AsmError& e) {
    err << fmt::format("{}: {}\n", source_path, e.what());
  } catch (const FileError& e) {
    err << e.what() << '\n';
  }
  return kExitInputError;
}

int cmd_disasm(const std::string& image_path, std::ostream& out, std::ostream& err) {
  try {
    out << disassemble(parse_rom_image(read_file(image_path)));
    return kExitOk;
  } catch (const RomFormatError& e) {
    err << fmt::format("{}: {}\n", image_path, e.what());
  } catch (const FileError& e) {
    err << e.what() << '\n';
  }
  return kExitInputError;
}

namespace {

struct Loaded {
  RomImage rom;
  Config config;
  std::vector<Injection> injections;
};

Loaded load_inputs(const RunConfig& rc) {
  Loaded l;
  try {
    l.rom = parse_rom_image(read_file(rc.rom_path));
  } catch (const RomFormatError& e) {
    throw FileError(fmt::format("{}: {}", rc.rom_path, e.what()));
  }
  if (!rc.config_path.empty()) {
    try {
      l.config = parse_config(read_file(rc.config_path));
    } catch (const ConfigError& e) {
      throw FileError(fmt::format("{}: {}", rc.config_path, e.what()));
    }
  }
  if (!rc.inject_path.empty()) {
    try {
      l.injections = parse_injection_script(read_file(rc.inject_path));
    } catch (const ConfigError& e) {
      throw FileError(fmt::format("{}: {}", rc.inject_path, e.what()));
    }
  }
  if (rc.osc_control_word) l.config.osc_control_word = rc.osc_control_word;
  if (l.config.osc_control_word)
    l.config.power.frequency_hz = frequency_of(*l.config.osc_control_word);
  return l;
}

}  // namespace

int cmd_run(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  if (rc.max_cycles < 1) {
    err << "run: --max-cycles must be at least 1\n";
    return kExitUsage;
  }
  try {
    Loaded in = load_inputs(rc);
    Simulator sim(in.rom, in.config.sim_options(rc.gating));
    sim.schedule(std::move(in.injections));
    const RunResult result = sim.run(rc.max_cycles, rc.halt_on_self_loop);

    const PowerReport report = estimate(ActivityTrace::from_records(result.trace), in.config.power);

    if (!rc.trace_out.empty()) write_file(rc.trace_out, format_trace_csv(result.trace));
    if (!rc.io_out.empty()) write_file(rc.io_out, format_io_csv(result.io_events));
    if (!rc.report_out.empty()) {
      ReportHeader header;
      if (rc.timestamp) header.timestamp = utc_timestamp();
      header.osc_control_word = in.config.osc_control_word;
      header.gating = rc.gating;
      write_file(rc.report_out, format_report_text(report, header));
    }
    if (!rc.report_csv_out.empty()) write_file(rc.report_csv_out, format_report_csv(report));

    out << fmt::format("gated={:.2f} ungated={:.2f} savings={:.2f}%\n", report.total_gated_mw,
                       report.total_ungated_mw, report.savings_percent);
    return kExitOk;
  } catch (const SimulationError& e) {
    err << "run: " << e.what() << '\n';
    return e.kind() == SimulationError::Kind::IllegalOpcode ? kExitIllegalOpcode : kExitOverflow;
  } catch (const FileError& e) {
    err << "run: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "run: " << e.what() << '\n';
  }
  return kExitInputError;
}

namespace {

struct CalibrateArgs {
  std::string rom_path;
  std::string out_path;
  double ungated_mw = kReferenceUngatedMw;
  double gated_mw = kReferenceGatedMw;
  double freq_mhz = kReferenceFrequencyHz / 1e6;
  std::uint64_t max_cycles = 100000;
};

int cmd_calibrate(const CalibrateArgs& a, std::ostream& out, std::ostream& err) {
  try {
    const RomImage rom = parse_rom_image(read_file(a.rom_path));
    Simulator sim(rom);
    const RunResult result = sim.run(a.max_cycles, true);
    const ActivityTrace trace = ActivityTrace::from_records(result.trace);
    const PowerConfig cfg =
        calibrate(trace, {a.ungated_mw, a.gated_mw}, prior_power_config(a.freq_mhz * 1e6));
    const PowerReport report = estimate(trace, cfg);

    std::string note = fmt::format(
        "Calibrated on {} ({} cycles{}) for ungated {} mW, gated {} mW at {:.6g} MHz.\n"
        "Module split from the clocked-element prior; control share solved.\n",
        a.rom_path, trace.total_cycles(), result.halted ? ", halted" : "", a.ungated_mw,
        a.gated_mw, a.freq_mhz);
    write_file(a.out_path, format_power_config(cfg, note));
    out << fmt::format("gated={:.2f} ungated={:.2f} savings={:.2f}% mw_per_mhz={:.4f}\n",
                       report.total_gated_mw, report.total_ungated_mw, report.savings_percent,
                       report.mw_per_mhz_ungated);
    return kExitOk;
  } catch (const PowerError& e) {
    err << "calibrate: " << e.what() << '\n';
  } catch (const SimulationError& e) {
    err << "calibrate: " << e.what() << '\n';
    return e.kind() == SimulationError::Kind::IllegalOpcode ? kExitIllegalOpcode : kExitOverflow;
  } catch (const std::exception& e) {
    err << "calibrate: " << e.what() << '\n';
  }
  return kExitInputError;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Programmable embedded controller toolchain and simulator", "pec"};
  app.require_subcommand(1);

  std::string asm_source, asm_out;
  auto* asm_cmd = app.add_subcommand("asm", "Assemble a source file into a ROM image");
  asm_cmd->add_option("source", asm_source, "Assembly source")->required();
  asm_cmd->add_option("-o,--out", asm_out, "Output ROM image (default: <source>.hex)");

  std::string disasm_image;
  auto* disasm_cmd = app.add_subcommand("disasm", "Disassemble a ROM image to stdout");
  disasm_cmd->add_option("image", disasm_image, "ROM image")->required();

  RunConfig rc;
  int osc = -1;
  bool no_gating = false, no_timestamp = false, no_halt = false;
  auto* run_cmd = app.add_subcommand("run", "Simulate a ROM image and report power");
  run_cmd->add_option("--rom", rc.rom_path, "ROM image")->required();
  run_cmd->add_option("--max-cycles", rc.max_cycles, "Cycle budget")
      ->check(CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()));
  run_cmd->add_flag("--no-gating", no_gating, "Clock every module every cycle");
  run_cmd->add_option("--osc", osc, "Oscillator control word")->check(CLI::Range(0, 15));
  run_cmd->add_option("--config", rc.config_path, "Configuration file");
  run_cmd->add_option("--trace-out", rc.trace_out, "Per-cycle trace CSV");
  run_cmd->add_option("--report-out", rc.report_out, "Power report (text)");
  run_cmd->add_option("--report-csv", rc.report_csv_out, "Power report (CSV)");
  run_cmd->add_option("--io-out", rc.io_out, "I/O event log CSV");
  run_cmd->add_option("--inject", rc.inject_path, "Host injection script");
  run_cmd->add_flag("--no-timestamp", no_timestamp, "Omit the report timestamp");
  run_cmd->add_flag("--no-halt", no_halt, "Do not stop at a branch to itself");

  CalibrateArgs ca;
  auto* cal_cmd = app.add_subcommand("calibrate", "Fit the capacitance table to power targets");
  cal_cmd->add_option("--rom", ca.rom_path, "Reference benchmark ROM image")->required();
  cal_cmd->add_option("-o,--out", ca.out_path, "Output configuration file")->required();
  cal_cmd->add_option("--ungated", ca.ungated_mw, "Ungated total, mW");
  cal_cmd->add_option("--gated", ca.gated_mw, "Gated total, mW");
  cal_cmd->add_option("--freq-mhz", ca.freq_mhz, "Clock of the targets, MHz");
  cal_cmd->add_option("--max-cycles", ca.max_cycles, "Cycle budget")
      ->check(CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  if (*asm_cmd) return cmd_asm(asm_source, asm_out, out, err);
  if (*disasm_cmd) return cmd_disasm(disasm_image, out, err);
  if (*cal_cmd) return cmd_calibrate(ca, out, err);

  if (osc >= 0) rc.osc_control_word = osc;
  rc.gating = !no_gating;
  rc.timestamp = !no_timestamp;
  rc.halt_on_self_loop = !no_halt;
  return cmd_run(rc, out, err);
}

}  // namespace pec::cli
