// Control unit: a combinational next-state/output function and a latched
// state register. The output function drives the datapath and one clock
// enable per gated module; the FSM and decoder themselves are never gated.

#pragma once

#include <array>
#include <bitset>
#include <cstdint>
#include <optional>
#include <string_view>

#include "pec/isa.hpp"

namespace pec {

enum class FsmState : std::uint8_t { Reset1, Reset2, Fetch, Decode, Execute, Idle };

inline constexpr int kFsmStateCount = 6;
inline constexpr std::array<FsmState, kFsmStateCount> kAllFsmStates{
    FsmState::Reset1, FsmState::Reset2, FsmState::Fetch,
    FsmState::Decode, FsmState::Execute, FsmState::Idle};

std::string_view to_string(FsmState s);

enum class Module : std::uint8_t { RegFile, Alu, Ram, Rom, Port0, Port1, Uart, SevenSeg };

inline constexpr int kModuleCount = 8;
inline constexpr std::array<Module, kModuleCount> kAllModules{
    Module::RegFile, Module::Alu,   Module::Ram,  Module::Rom,
    Module::Port0,   Module::Port1, Module::Uart, Module::SevenSeg};

// Lower-case names used in config keys and CSV headers.
std::string_view to_string(Module m);
std::optional<Module> module_from_name(std::string_view name);

using ModuleMask = std::bitset<kModuleCount>;

constexpr std::size_t bit(Module m) { return static_cast<std::size_t>(m); }

ModuleMask mask_of(std::initializer_list<Module> modules);

struct ControlSignals {
  ModuleMask clock_enable;
  bool reg_write = false;
  bool mem_read = false;
  bool mem_write = false;
  bool pc_load = false;
  bool flag_write = false;

  bool enabled(Module m) const { return clock_enable.test(bit(m)); }
  friend bool operator==(const ControlSignals&, const ControlSignals&) = default;
};

// Which modules receive a clock in each (state, opcode). Fetch always clocks
// the ROM; reset, decode and idle clock nothing. Only the execute rows are
// configurable.
class GatingPolicy {
 public:
  static GatingPolicy defaults();

  ModuleMask enabled(FsmState state, Opcode op) const;
  ModuleMask execute_row(Opcode op) const { return execute_[code_of(op)]; }
  void set_execute(Opcode op, Module m, bool on);

  friend bool operator==(const GatingPolicy&, const GatingPolicy&) = default;

 private:
  std::array<ModuleMask, 32> execute_{};
};

// `sleep` is the host-driven idle request; it takes effect at an
// instruction boundary (execute -> idle instead of fetch).
FsmState next_state(FsmState current, Opcode opcode, bool reset, bool interrupt,
                    bool sleep = false);

ControlSignals output_signals(FsmState current, Opcode opcode, const GatingPolicy& policy);

// The sequential half: the value presented at the clock edge becomes the
// stored state.
class StateRegister {
 public:
  FsmState current() const { return current_; }
  FsmState latch(FsmState next) {
    current_ = next;
    return current_;
  }

 private:
  FsmState current_ = FsmState::Reset1;
};

inline FsmState latch_state(FsmState next) { return next; }

}  // namespace pec
