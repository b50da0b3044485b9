#include "pec/machine.hpp"

namespace pec {

void reset(MachineState& state) {
  state.pc = 0;
  state.flags = {};
  state.regs.fill(0);
}

namespace {

struct AluOut {
  Word value;
  bool borrow;
};

AluOut alu(Opcode op, Word a, Word b) {
  switch (op) {
    case Opcode::INC: return {static_cast<Word>(a + 1), false};
    case Opcode::DEC: return {static_cast<Word>(a - 1), a == 0};
    case Opcode::AND: return {static_cast<Word>(a & b), false};
    case Opcode::OR: return {static_cast<Word>(a | b), false};
    case Opcode::XOR: return {static_cast<Word>(a ^ b), false};
    case Opcode::NOT: return {static_cast<Word>(~a), false};
    case Opcode::ADD: return {static_cast<Word>(a + b), false};
    case Opcode::SUB: return {static_cast<Word>(a - b), a < b};
    case Opcode::SHL: return {static_cast<Word>(a << 1), false};
    case Opcode::SHR: return {static_cast<Word>(a >> 1), false};
    case Opcode::ROR: return {static_cast<Word>((a >> 1) | (a << 15)), false};
    case Opcode::ROL: return {static_cast<Word>((a << 1) | (a >> 15)), false};
    default: return {0, false};
  }
}

bool branch_condition(Opcode op, const Flags& f) {
  switch (op) {
    case Opcode::BI:
    case Opcode::BCH: return true;
    case Opcode::BGTI:
    case Opcode::BGT: return !f.z && !f.l;
    case Opcode::BEQ: return f.z;
    case Opcode::BNEQ: return !f.z;
    case Opcode::BLT: return f.l;
    case Opcode::BLTE: return f.l || f.z;
    default: return false;
  }
}

}  // namespace

ExecuteResult execute(const Instruction& instr, const ControlSignals& signals,
                      MachineState& state, Datapath& datapath, Peripherals& io) {
  ExecuteResult out;
  out.next_pc = static_cast<std::uint8_t>(state.pc + 1);

  const Opcode op = instr.opcode;
  const Word a = state.regs[instr.rd];
  const Word b = state.regs[instr.rs];
  const bool regfile_on = signals.enabled(Module::RegFile);
  auto write_rd = [&](Word v) {
    if (signals.reg_write && regfile_on) state.regs[instr.rd] = v;
  };

  if (is_alu_op(op)) {
    if (signals.enabled(Module::Alu)) {
      const AluOut r = alu(op, a, b);
      datapath.alu_result = r.value;
      if (op == Opcode::SUB || op == Opcode::DEC) datapath.alu_borrow = r.borrow;
    }
    if (signals.flag_write) {
      state.flags.z = datapath.alu_result == 0;
      if (op == Opcode::SUB || op == Opcode::DEC) state.flags.l = datapath.alu_borrow;
    }
    write_rd(datapath.alu_result);
    return out;
  }

  if (is_branch(op)) {
    if (signals.pc_load && branch_condition(op, state.flags)) {
      const auto target = is_register_branch(op) ? static_cast<std::uint8_t>(a & 0xFF)
                                                 : instr.operand8;
      out.next_pc = target;
      out.branch_taken = true;
      out.self_loop = (op == Opcode::BI || op == Opcode::BCH) && target == state.pc;
    }
    return out;
  }

  const std::uint64_t now = state.cycles;
  switch (op) {
    case Opcode::NOP:
      break;
    case Opcode::LOAD:
      if (signals.mem_read && signals.enabled(Module::Ram)) datapath.ram_data = state.ram[instr.operand8];
      write_rd(datapath.ram_data);
      break;
    case Opcode::STORE:
      if (signals.mem_write && signals.enabled(Module::Ram)) state.ram[instr.operand8] = a;
      break;
    case Opcode::MOVE:
      write_rd(b);
      break;
    case Opcode::LOADI:
      write_rd(instr.operand8);
      break;
    case Opcode::ZERO:
      if (signals.flag_write) state.flags.z = true;
      write_rd(0);
      break;
    case Opcode::PORT0:
      if (signals.enabled(Module::Port0)) {
        const auto v = port_io(io.ports, PortAccess::Write0, static_cast<std::uint8_t>(a & 0xFF));
        out.events.push_back({now, IoDevice::Port0, IoDirection::Out, v});
      }
      break;
    case Opcode::PORT1:
      if (signals.enabled(Module::Port1)) {
        if (io.port1_source == Port1Source::Pins) {
          port_io(io.ports, PortAccess::Read1);
        } else if (signals.enabled(Module::Uart)) {
          io.ports.port1_sample = uart_read_rx(io.uart);
        }
        out.events.push_back({now, IoDevice::Port1, IoDirection::In, io.ports.port1_sample});
      }
      write_rd(io.ports.port1_sample);
      break;
    case Opcode::B7S:
      if (signals.enabled(Module::SevenSeg)) {
        drive_7seg(io.display, static_cast<std::uint8_t>(a & 0xFF));
        out.events.push_back({now, IoDevice::SevenSeg, IoDirection::Out, io.display.segments});
      }
      break;
    case Opcode::UARTS:
      if (signals.enabled(Module::Uart)) uart_send(io.uart, static_cast<std::uint8_t>(a & 0xFF));
      break;
    default:
      break;
  }
  return out;
}

}  // namespace pec
