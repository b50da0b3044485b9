// Architectural state and the execute-cycle semantics of every instruction.
//
// Execution is clock-enable aware: a module whose enable is low keeps its
// state for the cycle. Register reads are combinational and need no clock.
// The flags live in the control path with the FSM and are never gated.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pec/control.hpp"
#include "pec/isa.hpp"
#include "pec/peripherals.hpp"

namespace pec {

inline constexpr int kRamWords = 1024;

struct Flags {
  bool z = false;  // last ALU result was zero
  bool l = false;  // last SUB/DEC borrowed (minuend < subtrahend, unsigned)

  friend bool operator==(const Flags&, const Flags&) = default;
};

struct MachineState {
  std::array<Word, kRegisterCount> regs{};
  std::uint8_t pc = 0;
  Flags flags;
  std::array<Word, kRamWords> ram{};
  RomImage rom;
  std::uint64_t cycles = 0;

  friend bool operator==(const MachineState&, const MachineState&) = default;
};

// pc, flags and registers cleared; RAM, ROM and the cycle count kept.
void reset(MachineState& state);

// Output latches of the clocked blocks.
struct Datapath {
  Word alu_result = 0;
  bool alu_borrow = false;
  Word ram_data = 0;
  Word rom_data = 0;

  friend bool operator==(const Datapath&, const Datapath&) = default;
};

struct ExecuteResult {
  std::uint8_t next_pc = 0;
  bool branch_taken = false;
  // BI or BCH whose target is its own address.
  bool self_loop = false;
  std::vector<IoEvent> events;
};

// Performs the execute cycle of `instr` at state.pc under `signals`. Does not
// touch state.pc or state.cycles; the caller commits next_pc. Throws
// TxOverflow when UARTS finds the transmit FIFO full.
ExecuteResult execute(const Instruction& instr, const ControlSignals& signals,
                      MachineState& state, Datapath& datapath, Peripherals& io);

}  // namespace pec
