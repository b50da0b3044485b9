#include "pec/control.hpp"

namespace pec {

std::string_view to_string(FsmState s) {
  switch (s) {
    case FsmState::Reset1: return "reset1";
    case FsmState::Reset2: return "reset2";
    case FsmState::Fetch: return "fetch";
    case FsmState::Decode: return "decode";
    case FsmState::Execute: return "execute";
    case FsmState::Idle: return "idle";
  }
  return "?";
}

std::string_view to_string(Module m) {
  switch (m) {
    case Module::RegFile: return "regfile";
    case Module::Alu: return "alu";
    case Module::Ram: return "ram";
    case Module::Rom: return "rom";
    case Module::Port0: return "port0";
    case Module::Port1: return "port1";
    case Module::Uart: return "uart";
    case Module::SevenSeg: return "sevenseg";
  }
  return "?";
}

std::optional<Module> module_from_name(std::string_view name) {
  for (Module m : kAllModules)
    if (to_string(m) == name) return m;
  return std::nullopt;
}

ModuleMask mask_of(std::initializer_list<Module> modules) {
  ModuleMask mask;
  for (Module m : modules) mask.set(bit(m));
  return mask;
}

GatingPolicy GatingPolicy::defaults() {
  GatingPolicy p;
  for (const auto& entry : opcode_table()) {
    const Opcode op = entry.opcode;
    ModuleMask row;
    if (is_alu_op(op)) {
      row = mask_of({Module::RegFile, Module::Alu});
    } else if (is_register_branch(op)) {
      row = mask_of({Module::RegFile});
    } else {
      switch (op) {
        case Opcode::LOAD:
        case Opcode::STORE: row = mask_of({Module::RegFile, Module::Ram}); break;
        case Opcode::LOADI:
        case Opcode::MOVE:
        case Opcode::ZERO: row = mask_of({Module::RegFile}); break;
        case Opcode::PORT0: row = mask_of({Module::RegFile, Module::Port0}); break;
        case Opcode::PORT1: row = mask_of({Module::RegFile, Module::Port1}); break;
        case Opcode::B7S: row = mask_of({Module::RegFile, Module::SevenSeg}); break;
        case Opcode::UARTS: row = mask_of({Module::RegFile, Module::Uart}); break;
        default: break;  // NOP, BI, BGTI
      }
    }
    p.execute_[code_of(op)] = row;
  }
  return p;
}

ModuleMask GatingPolicy::enabled(FsmState state, Opcode op) const {
  switch (state) {
    case FsmState::Fetch: return mask_of({Module::Rom});
    case FsmState::Execute: return execute_[code_of(op)];
    default: return {};
  }
}

void GatingPolicy::set_execute(Opcode op, Module m, bool on) {
  execute_[code_of(op)].set(bit(m), on);
}

FsmState next_state(FsmState current, Opcode /*opcode*/, bool reset, bool interrupt, bool sleep) {
  if (reset) return FsmState::Reset1;
  switch (current) {
    case FsmState::Reset1: return FsmState::Reset2;
    case FsmState::Reset2: return FsmState::Fetch;
    case FsmState::Fetch: return FsmState::Decode;
    case FsmState::Decode: return FsmState::Execute;
    case FsmState::Execute: return sleep ? FsmState::Idle : FsmState::Fetch;
    case FsmState::Idle: return interrupt ? FsmState::Fetch : FsmState::Idle;
  }
  return FsmState::Reset1;
}

namespace {

bool writes_register(Opcode op) {
  switch (op) {
    case Opcode::LOAD:
    case Opcode::MOVE:
    case Opcode::LOADI:
    case Opcode::ZERO:
    case Opcode::PORT1:
      return true;
    default:
      return is_alu_op(op);
  }
}

}  // namespace

ControlSignals output_signals(FsmState current, Opcode opcode, const GatingPolicy& policy) {
  ControlSignals s;
  s.clock_enable = policy.enabled(current, opcode);
  if (current == FsmState::Execute) {
    s.reg_write = writes_register(opcode);
    s.mem_read = opcode == Opcode::LOAD;
    s.mem_write = opcode == Opcode::STORE;
    s.pc_load = is_branch(opcode);
    s.flag_write = is_alu_op(opcode) || opcode == Opcode::ZERO;
  }
  return s;
}

}  // namespace pec
