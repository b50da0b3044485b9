// Cycle-level model of the controller. Each clock the control unit computes
// its outputs from the latched FSM state, the datapath acts on them, and the
// next state is latched. An instruction takes three clocks: fetch, decode,
// execute.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pec/control.hpp"
#include "pec/isa.hpp"
#include "pec/machine.hpp"
#include "pec/peripherals.hpp"

namespace pec {

inline constexpr int kCyclesPerInstruction = 3;

struct SimOptions {
  GatingPolicy policy = GatingPolicy::defaults();
  // When false every module is clocked every cycle.
  bool gating = true;
  std::uint32_t baud_divisor = kDefaultBaudDivisor;
  Port1Source port1_source = Port1Source::Pins;
};

class SimulationError : public std::runtime_error {
 public:
  enum class Kind { IllegalOpcode, TxOverflow, RxOverflow };

  SimulationError(Kind kind, std::uint64_t cycle, std::uint8_t pc, const std::string& what);

  Kind kind() const { return kind_; }
  std::uint64_t cycle() const { return cycle_; }
  std::uint8_t pc() const { return pc_; }

 private:
  Kind kind_;
  std::uint64_t cycle_;
  std::uint8_t pc_;
};

struct CycleRecord {
  std::uint64_t cycle = 0;
  std::uint8_t pc = 0;
  FsmState state = FsmState::Reset1;
  std::optional<Opcode> opcode;
  ModuleMask enables;

  friend bool operator==(const CycleRecord&, const CycleRecord&) = default;
};

struct StepOutcome {
  Instruction executed;
  std::uint8_t pc_before = 0;
  std::uint8_t pc_after = 0;
  // Clock enables of the execute cycle.
  ModuleMask modules_active;
  std::vector<IoEvent> io_events;
  bool self_loop = false;
};

// Host-side stimulus applied between clocks, before the named cycle runs.
struct Injection {
  enum class Kind { Port1, UartRx, Idle, Interrupt, Reset };

  std::uint64_t cycle = 0;
  Kind kind = Kind::Port1;
  std::uint8_t value = 0;

  friend bool operator==(const Injection&, const Injection&) = default;
};

struct RunResult {
  std::vector<CycleRecord> trace;
  std::vector<IoEvent> io_events;
  std::uint64_t cycles_run = 0;
  bool halted = false;
};

class Simulator {
 public:
  explicit Simulator(const RomImage& rom, SimOptions options = {});

  // Immediate reset: architectural reset and FSM back to reset1.
  void reset();
  // Holds the reset input high for the next clock edge.
  void assert_reset() { reset_input_ = true; }
  void request_idle() { sleep_input_ = true; }
  void raise_interrupt() { interrupt_input_ = true; }
  void set_port1(std::uint8_t value) { io_.ports.port1_input = value; }
  void inject_uart_rx(std::uint8_t byte);

  // Replaces pending injections; they need not be sorted.
  void schedule(std::vector<Injection> injections);
  // Applies injections due at the current cycle. tick() calls this first.
  void deliver_injections();

  // One clock. Throws SimulationError.
  CycleRecord tick();
  // Clocks until the next instruction finishes its execute cycle.
  // Precondition: the controller is not idle waiting for an interrupt.
  StepOutcome step();
  RunResult run(std::uint64_t max_cycles, bool halt_on_self_loop);

  const MachineState& state() const { return state_; }
  MachineState& state() { return state_; }
  const Peripherals& io() const { return io_; }
  const Datapath& datapath() const { return datapath_; }
  FsmState fsm_state() const { return fsm_.current(); }
  const std::vector<IoEvent>& io_log() const { return io_log_; }
  const SimOptions& options() const { return options_; }

  // Digest of everything a module's clock can change.
  std::uint64_t module_hash(Module m) const;

 private:
  ModuleMask effective_enables(const ControlSignals& signals) const;

  SimOptions options_;
  MachineState state_;
  Datapath datapath_;
  Peripherals io_;
  StateRegister fsm_;
  Word ir_ = 0;
  Instruction current_;
  bool reset_input_ = false;
  bool sleep_input_ = false;
  bool interrupt_input_ = false;
  bool last_self_loop_ = false;
  std::vector<Injection> pending_;
  std::vector<IoEvent> io_log_;
  // io_log_ entries produced by the most recent tick start here.
  std::size_t tick_events_begin_ = 0;
};

}  // namespace pec
