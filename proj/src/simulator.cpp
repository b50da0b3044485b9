#include "pec/simulator.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace pec {

SimulationError::SimulationError(Kind kind, std::uint64_t cycle, std::uint8_t pc,
                                 const std::string& what)
    : std::runtime_error(fmt::format("cycle {}, pc 0x{:02X}: {}", cycle, pc, what)),
      kind_(kind),
      cycle_(cycle),
      pc_(pc) {}

Simulator::Simulator(const RomImage& rom, SimOptions options) : options_(std::move(options)) {
  state_.rom = rom;
  io_.uart.baud_divisor = options_.baud_divisor;
  io_.port1_source = options_.port1_source;
}

void Simulator::reset() {
  pec::reset(state_);
  datapath_ = {};
  io_.ports.port0_latch = 0;
  io_.ports.port1_sample = 0;
  io_.uart.tx_queue.clear();
  io_.uart.rx_queue.clear();
  io_.uart.tx_busy_cycles = 0;
  io_.display = {};
  ir_ = 0;
  current_ = {};
  sleep_input_ = false;
  interrupt_input_ = false;
  reset_input_ = false;
  fsm_.latch(FsmState::Reset1);
}

void Simulator::inject_uart_rx(std::uint8_t byte) {
  try {
    uart_inject_rx(io_.uart, byte);
  } catch (const RxOverflow& e) {
    throw SimulationError(SimulationError::Kind::RxOverflow, state_.cycles, state_.pc, e.what());
  }
}

void Simulator::schedule(std::vector<Injection> injections) {
  std::stable_sort(injections.begin(), injections.end(),
                   [](const Injection& a, const Injection& b) { return a.cycle < b.cycle; });
  pending_ = std::move(injections);
  std::reverse(pending_.begin(), pending_.end());
}

void Simulator::deliver_injections() {
  while (!pending_.empty() && pending_.back().cycle <= state_.cycles) {
    const Injection inj = pending_.back();
    pending_.pop_back();
    switch (inj.kind) {
      case Injection::Kind::Port1: set_port1(inj.value); break;
      case Injection::Kind::UartRx: inject_uart_rx(inj.value); break;
      case Injection::Kind::Idle: request_idle(); break;
      case Injection::Kind::Interrupt: raise_interrupt(); break;
      case Injection::Kind::Reset: assert_reset(); break;
    }
  }
}

ModuleMask Simulator::effective_enables(const ControlSignals& signals) const {
  if (!options_.gating) return ModuleMask{}.set();
  ModuleMask enables = signals.clock_enable;
  // A transmitting UART keeps its clock until the FIFO drains, except in idle.
  if (fsm_.current() != FsmState::Idle && io_.uart.busy()) enables.set(bit(Module::Uart));
  return enables;
}

CycleRecord Simulator::tick() {
  deliver_injections();
  tick_events_begin_ = io_log_.size();
  last_self_loop_ = false;

  const FsmState now = fsm_.current();
  CycleRecord rec;
  rec.cycle = state_.cycles;
  rec.pc = state_.pc;
  rec.state = now;

  ControlSignals signals = output_signals(now, current_.opcode, options_.policy);
  signals.clock_enable = effective_enables(signals);
  rec.enables = signals.clock_enable;

  switch (now) {
    case FsmState::Fetch:
      if (signals.enabled(Module::Rom)) datapath_.rom_data = state_.rom.words[state_.pc];
      ir_ = datapath_.rom_data;
      rec.opcode = opcode_from_code(static_cast<std::uint8_t>(ir_ >> 11));
      break;
    case FsmState::Decode:
      try {
        current_ = decode(ir_);
      } catch (const IllegalOpcode& e) {
        throw SimulationError(SimulationError::Kind::IllegalOpcode, state_.cycles, state_.pc,
                              e.what());
      }
      rec.opcode = current_.opcode;
      break;
    case FsmState::Execute: {
      rec.opcode = current_.opcode;
      ExecuteResult r;
      try {
        r = execute(current_, signals, state_, datapath_, io_);
      } catch (const TxOverflow& e) {
        throw SimulationError(SimulationError::Kind::TxOverflow, state_.cycles, state_.pc,
                              e.what());
      }
      io_log_.insert(io_log_.end(), r.events.begin(), r.events.end());
      state_.pc = r.next_pc;
      last_self_loop_ = r.self_loop;
      break;
    }
    case FsmState::Reset1:
    case FsmState::Reset2:
    case FsmState::Idle:
      break;
  }

  if (signals.enabled(Module::Uart)) {
    for (std::uint8_t b : uart_tick(io_.uart, 1))
      io_log_.push_back({state_.cycles, IoDevice::Uart, IoDirection::Out, b});
  }

  const FsmState next =
      next_state(now, current_.opcode, reset_input_, interrupt_input_, sleep_input_);
  if (next == FsmState::Idle && now == FsmState::Execute) sleep_input_ = false;
  interrupt_input_ = false;
  if (reset_input_) {
    reset_input_ = false;
    const auto cycles = state_.cycles;
    reset();
    state_.cycles = cycles;
  }
  fsm_.latch(next);
  ++state_.cycles;
  return rec;
}

StepOutcome Simulator::step() {
  const std::size_t events_begin = io_log_.size();
  // reset1, reset2, fetch, decode, execute plus an idle wake.
  for (int guard = 0; guard < 8; ++guard) {
    if (fsm_.current() == FsmState::Idle && !interrupt_input_ && !reset_input_)
      throw std::logic_error("step() while idle with no pending interrupt or reset");
    const FsmState before = fsm_.current();
    const CycleRecord rec = tick();
    if (before == FsmState::Execute) {
      StepOutcome out;
      out.executed = current_;
      out.pc_before = rec.pc;
      out.pc_after = state_.pc;
      out.modules_active = rec.enables;
      out.io_events.assign(io_log_.begin() + static_cast<std::ptrdiff_t>(events_begin),
                           io_log_.end());
      out.self_loop = last_self_loop_;
      return out;
    }
  }
  throw std::logic_error("step() did not reach an execute cycle");
}

RunResult Simulator::run(std::uint64_t max_cycles, bool halt_on_self_loop) {
  RunResult result;
  const std::size_t events_begin = io_log_.size();
  result.trace.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(max_cycles, 1u << 20)));
  while (result.cycles_run < max_cycles) {
    result.trace.push_back(tick());
    ++result.cycles_run;
    if (halt_on_self_loop && last_self_loop_) {
      result.halted = true;
      break;
    }
  }
  result.io_events.assign(io_log_.begin() + static_cast<std::ptrdiff_t>(events_begin),
                          io_log_.end());
  return result;
}

namespace {

class Fnv1a {
 public:
  template <typename T>
  Fnv1a& add(const T& value) {
    const auto* p = reinterpret_cast<const unsigned char*>(&value);
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      hash_ ^= p[i];
      hash_ *= 0x100000001b3ULL;
    }
    return *this;
  }
  template <typename Range>
  Fnv1a& add_range(const Range& r) {
    add(r.size());
    for (const auto& v : r) add(v);
    return *this;
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

}  // namespace

std::uint64_t Simulator::module_hash(Module m) const {
  Fnv1a h;
  switch (m) {
    case Module::RegFile: h.add_range(state_.regs); break;
    case Module::Alu: h.add(datapath_.alu_result).add(datapath_.alu_borrow); break;
    case Module::Ram: h.add_range(state_.ram).add(datapath_.ram_data); break;
    case Module::Rom: h.add_range(state_.rom.words).add(datapath_.rom_data); break;
    case Module::Port0: h.add(io_.ports.port0_latch); break;
    case Module::Port1: h.add(io_.ports.port1_sample); break;
    case Module::Uart:
      h.add_range(io_.uart.tx_queue).add_range(io_.uart.rx_queue).add(io_.uart.tx_busy_cycles);
      break;
    case Module::SevenSeg: h.add(io_.display.segments).add(io_.display.last_digit); break;
  }
  return h.value();
}

}  // namespace pec
