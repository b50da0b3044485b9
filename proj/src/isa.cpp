#include "pec/isa.hpp"

#include <algorithm>
#include <cctype>

#include <fmt/format.h>

namespace pec {

namespace {

constexpr std::array<OpcodeInfo, kOpcodeCount> kOpcodes{{
    {Opcode::NOP, "NOP", Format::Imm},
    {Opcode::LOAD, "LOAD", Format::RegImm},
    {Opcode::STORE, "STORE", Format::RegImm},
    {Opcode::MOVE, "MOVE", Format::RegReg},
    {Opcode::LOADI, "LOADI", Format::RegImm},
    {Opcode::BI, "BI", Format::Imm},
    {Opcode::BGTI, "BGTI", Format::Imm},
    {Opcode::INC, "INC", Format::Reg},
    {Opcode::DEC, "DEC", Format::Reg},
    {Opcode::AND, "AND", Format::RegReg},
    {Opcode::OR, "OR", Format::RegReg},
    {Opcode::XOR, "XOR", Format::RegReg},
    {Opcode::NOT, "NOT", Format::Reg},
    {Opcode::ADD, "ADD", Format::RegReg},
    {Opcode::SUB, "SUB", Format::RegReg},
    {Opcode::ZERO, "ZERO", Format::Reg},
    {Opcode::PORT0, "PORT0", Format::Reg},
    {Opcode::BLT, "BLT", Format::Reg},
    {Opcode::BNEQ, "BNEQ", Format::Reg},
    {Opcode::PORT1, "PORT1", Format::Reg},
    {Opcode::BGT, "BGT", Format::Reg},
    {Opcode::BCH, "BCH", Format::Reg},
    {Opcode::BEQ, "BEQ", Format::Reg},
    {Opcode::B7S, "B7S", Format::Reg},
    {Opcode::BLTE, "BLTE", Format::Reg},
    {Opcode::SHL, "SHL", Format::Reg},
    {Opcode::SHR, "SHR", Format::Reg},
    {Opcode::ROR, "ROR", Format::Reg},
    {Opcode::ROL, "ROL", Format::Reg},
    {Opcode::UARTS, "UARTS", Format::Reg},
}};

// code -> index into kOpcodes, -1 for the gap
constexpr std::array<int, 32> kByCode = [] {
  std::array<int, 32> t{};
  t.fill(-1);
  for (int i = 0; i < kOpcodeCount; ++i) t[code_of(kOpcodes[i].opcode)] = i;
  return t;
}();

}  // namespace

const std::array<OpcodeInfo, kOpcodeCount>& opcode_table() { return kOpcodes; }

const OpcodeInfo& info(Opcode op) { return kOpcodes[kByCode[code_of(op)]]; }

std::string_view mnemonic(Opcode op) { return info(op).mnemonic; }

Format format_of(Opcode op) { return info(op).format; }

std::optional<Opcode> opcode_from_mnemonic(std::string_view name) {
  for (const auto& entry : kOpcodes) {
    if (entry.mnemonic.size() != name.size()) continue;
    if (std::equal(name.begin(), name.end(), entry.mnemonic.begin(), [](char a, char b) {
          return std::toupper(static_cast<unsigned char>(a)) == b;
        })) {
      return entry.opcode;
    }
  }
  return std::nullopt;
}

std::optional<Opcode> opcode_from_code(std::uint8_t code) {
  if (code >= 32 || kByCode[code] < 0) return std::nullopt;
  return kOpcodes[kByCode[code]].opcode;
}

bool is_branch(Opcode op) {
  switch (op) {
    case Opcode::BI:
    case Opcode::BGTI:
    case Opcode::BCH:
    case Opcode::BEQ:
    case Opcode::BNEQ:
    case Opcode::BGT:
    case Opcode::BLT:
    case Opcode::BLTE:
      return true;
    default:
      return false;
  }
}

bool is_register_branch(Opcode op) {
  return is_branch(op) && op != Opcode::BI && op != Opcode::BGTI;
}

bool is_alu_op(Opcode op) {
  switch (op) {
    case Opcode::INC:
    case Opcode::DEC:
    case Opcode::AND:
    case Opcode::OR:
    case Opcode::XOR:
    case Opcode::NOT:
    case Opcode::ADD:
    case Opcode::SUB:
    case Opcode::SHL:
    case Opcode::SHR:
    case Opcode::ROR:
    case Opcode::ROL:
      return true;
    default:
      return false;
  }
}

IllegalOpcode::IllegalOpcode(Word word)
    : std::runtime_error(fmt::format("illegal opcode in word 0x{:04X}", word)), word_(word) {}

Instruction canonical(Instruction instr) {
  switch (format_of(instr.opcode)) {
    case Format::RegReg:
      instr.operand8 = 0;
      break;
    case Format::Reg:
      instr.rs = 0;
      instr.operand8 = 0;
      break;
    case Format::RegImm:
      instr.rs = 0;
      break;
    case Format::Imm:
      instr.rd = 0;
      instr.rs = 0;
      break;
  }
  return instr;
}

Word encode(const Instruction& instr) {
  const Instruction c = canonical(instr);
  unsigned word = static_cast<unsigned>(code_of(c.opcode)) << 11;
  switch (format_of(c.opcode)) {
    case Format::RegReg:
      word |= (c.rd & 7u) << 8 | (c.rs & 7u) << 5;
      break;
    case Format::Reg:
      word |= (c.rd & 7u) << 8;
      break;
    case Format::RegImm:
      word |= (c.rd & 7u) << 8 | c.operand8;
      break;
    case Format::Imm:
      word |= c.operand8;
      break;
  }
  return static_cast<Word>(word);
}

Instruction decode(Word word) {
  const auto op = opcode_from_code(static_cast<std::uint8_t>(word >> 11));
  if (!op) throw IllegalOpcode(word);
  Instruction instr;
  instr.opcode = *op;
  instr.rd = static_cast<std::uint8_t>((word >> 8) & 7);
  instr.rs = static_cast<std::uint8_t>((word >> 5) & 7);
  instr.operand8 = static_cast<std::uint8_t>(word & 0xFF);
  return canonical(instr);
}

bool is_canonical(Word word) {
  const auto op = opcode_from_code(static_cast<std::uint8_t>(word >> 11));
  return op && encode(decode(word)) == word;
}

std::string to_string(const Instruction& instr) {
  const auto name = mnemonic(instr.opcode);
  switch (format_of(instr.opcode)) {
    case Format::RegReg:
      return fmt::format("{} R{}, R{}", name, instr.rd, instr.rs);
    case Format::Reg:
      return fmt::format("{} R{}", name, instr.rd);
    case Format::RegImm:
      return fmt::format("{} R{}, 0x{:02X}", name, instr.rd, instr.operand8);
    case Format::Imm:
      if (instr.opcode == Opcode::NOP && instr.operand8 == 0) return std::string(name);
      return fmt::format("{} 0x{:02X}", name, instr.operand8);
  }
  return std::string(name);
}

}  // namespace pec
