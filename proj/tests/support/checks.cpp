#include "support/checks.hpp"

#include <array>
#include <optional>
#include <sstream>

#include "support/reference_interpreter.hpp"

namespace pec::test {

std::string oracle_mismatch(const RomImage& rom, int length, std::uint8_t port1_pins) {
  Simulator sim(rom);
  sim.set_port1(port1_pins);
  for (int i = 0; i < length; ++i) sim.step();

  ReferenceState ref;
  ref.port1_pins = port1_pins;
  std::vector<std::uint16_t> words(rom.words.begin(), rom.words.begin() + length);
  if (!reference_run(ref, words)) return "program is not branch-free";

  std::ostringstream diff;
  const MachineState& s = sim.state();
  for (int r = 0; r < kRegisterCount; ++r)
    if (s.regs[r] != ref.regs[r])
      diff << "R" << r << ": sim " << s.regs[r] << " ref " << ref.regs[r] << "; ";
  if (s.flags.z != ref.z) diff << "z differs; ";
  if (s.flags.l != ref.l) diff << "l differs; ";
  for (int a = 0; a < kRamWords; ++a)
    if (s.ram[a] != ref.ram[a]) {
      diff << "ram[" << a << "] differs; ";
      break;
    }
  if (sim.io().ports.port0_latch != ref.port0) diff << "port0 differs; ";
  if (sim.io().display.segments != ref.segments) diff << "display differs; ";
  if (s.pc != static_cast<std::uint8_t>(length)) diff << "pc differs; ";

  std::vector<std::uint8_t> uart;
  for (const auto& e : sim.io_log())
    if (e.device == IoDevice::Uart) uart.push_back(e.value);
  uart.insert(uart.end(), sim.io().uart.tx_queue.begin(), sim.io().uart.tx_queue.end());
  if (uart != ref.uart_sent) diff << "uart bytes differ; ";
  return diff.str();
}

namespace {

struct Outcome {
  MachineState state;
  Peripherals io;
  std::vector<IoEvent> log;
  std::optional<SimulationError::Kind> error;
  std::uint64_t error_cycle = 0;
};

Outcome run_once(const RomImage& rom, std::uint64_t cycles, SimOptions options,
                 const std::vector<Injection>& injections) {
  Simulator sim(rom, std::move(options));
  sim.schedule(injections);
  Outcome o;
  try {
    sim.run(cycles, false);
  } catch (const SimulationError& e) {
    o.error = e.kind();
    o.error_cycle = e.cycle();
  }
  o.state = sim.state();
  o.io = sim.io();
  o.log = sim.io_log();
  return o;
}

}  // namespace

std::string gating_mismatch(const RomImage& rom, std::uint64_t cycles, const SimOptions& options,
                            const std::vector<Injection>& injections) {
  SimOptions gated = options;
  gated.gating = true;
  SimOptions ungated = options;
  ungated.gating = false;
  const Outcome a = run_once(rom, cycles, gated, injections);
  const Outcome b = run_once(rom, cycles, ungated, injections);

  std::ostringstream diff;
  if (a.state.regs != b.state.regs) diff << "registers differ; ";
  if (a.state.ram != b.state.ram) diff << "RAM differs; ";
  if (!(a.state.flags == b.state.flags)) diff << "flags differ; ";
  if (a.state.pc != b.state.pc) diff << "pc differs; ";
  if (a.state.cycles != b.state.cycles) diff << "cycle counts differ; ";
  if (!(a.io.ports.port0_latch == b.io.ports.port0_latch)) diff << "port0 differs; ";
  if (!(a.io.display == b.io.display)) diff << "display differs; ";
  if (a.io.uart.tx_queue != b.io.uart.tx_queue) diff << "uart queue differs; ";
  if (a.log != b.log) diff << "I/O logs differ (" << a.log.size() << " vs " << b.log.size() << "); ";
  if (a.error != b.error || a.error_cycle != b.error_cycle) diff << "run endings differ; ";
  return diff.str();
}

std::string gated_module_change(const RomImage& rom, std::uint64_t cycles,
                                const SimOptions& options,
                                const std::vector<Injection>& injections) {
  Simulator sim(rom, options);
  sim.schedule(injections);
  for (std::uint64_t c = 0; c < cycles; ++c) {
    sim.deliver_injections();
    std::array<std::uint64_t, kModuleCount> before{};
    for (Module m : kAllModules) before[bit(m)] = sim.module_hash(m);
    CycleRecord rec;
    try {
      rec = sim.tick();
    } catch (const SimulationError&) {
      return {};
    }
    for (Module m : kAllModules) {
      if (rec.enables.test(bit(m))) continue;
      if (sim.module_hash(m) != before[bit(m)]) {
        std::ostringstream out;
        out << "cycle " << rec.cycle << ": " << to_string(m) << " changed while gated ("
            << to_string(rec.state) << ")";
        return out.str();
      }
    }
  }
  return {};
}

}  // namespace pec::test
