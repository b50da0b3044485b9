// Instruction set of the programmable embedded controller: opcodes, the
// 16-bit encoding, and the ROM image type shared by the assembler and the
// simulator.
//
// Word layout:
//
//   15    11 10   8 7    5 4      0
//  +--------+------+------+--------+
//  | opcode |  rd  |  rs  |  zero  |   register-register
//  +--------+------+------+--------+
//  | opcode |  rd  |     zero      |   register only
//  +--------+------+---------------+
//  | opcode |  rd  |   operand8    |   register + operand8
//  +--------+------+---------------+
//  | opcode | zero |   operand8    |   operand8 only
//  +--------+------+---------------+

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pec {

using Word = std::uint16_t;

inline constexpr int kRegisterCount = 8;
inline constexpr int kRomWords = 256;

enum class Opcode : std::uint8_t {
  NOP = 0b00000,
  LOAD = 0b00001,
  STORE = 0b00010,
  MOVE = 0b00011,
  LOADI = 0b00100,
  BI = 0b00101,
  BGTI = 0b00110,
  INC = 0b00111,
  DEC = 0b01000,
  AND = 0b01001,
  OR = 0b01010,
  XOR = 0b01011,
  NOT = 0b01100,
  ADD = 0b01101,
  SUB = 0b01110,
  ZERO = 0b01111,
  PORT0 = 0b10000,
  BLT = 0b10001,
  BNEQ = 0b10010,
  PORT1 = 0b10011,
  BGT = 0b10100,
  // 0b10101 is unassigned and decodes as an illegal instruction.
  BCH = 0b10110,
  BEQ = 0b10111,
  B7S = 0b11000,
  BLTE = 0b11001,
  SHL = 0b11010,
  SHR = 0b11011,
  ROR = 0b11100,
  ROL = 0b11101,
  UARTS = 0b11110,
};

inline constexpr std::uint8_t kIllegalOpcodeCode = 0b10101;
inline constexpr int kOpcodeCount = 30;

// Which instruction fields an opcode uses.
enum class Format : std::uint8_t {
  RegReg,   // rd, rs
  Reg,      // rd
  RegImm,   // rd, operand8
  Imm,      // operand8
};

struct OpcodeInfo {
  Opcode opcode;
  std::string_view mnemonic;
  Format format;
};

// The 30 opcodes in code order.
const std::array<OpcodeInfo, kOpcodeCount>& opcode_table();

const OpcodeInfo& info(Opcode op);
std::string_view mnemonic(Opcode op);
Format format_of(Opcode op);

// Case-insensitive mnemonic lookup.
std::optional<Opcode> opcode_from_mnemonic(std::string_view name);
std::optional<Opcode> opcode_from_code(std::uint8_t code);

constexpr std::uint8_t code_of(Opcode op) { return static_cast<std::uint8_t>(op); }

bool is_branch(Opcode op);
// True for branches whose target is the low byte of rd.
bool is_register_branch(Opcode op);
// INC..ROL (excluding ZERO): operations that go through the ALU.
bool is_alu_op(Opcode op);

struct Instruction {
  Opcode opcode = Opcode::NOP;
  std::uint8_t rd = 0;
  std::uint8_t rs = 0;
  std::uint8_t operand8 = 0;

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

// Thrown when a word's opcode field holds the unassigned code.
class IllegalOpcode : public std::runtime_error {
 public:
  explicit IllegalOpcode(Word word);
  Word word() const { return word_; }

 private:
  Word word_;
};

// Clears the fields the opcode's format does not use.
Instruction canonical(Instruction instr);

// Precondition: rd, rs < 8 (operand8 is 8-bit by type).
Word encode(const Instruction& instr);

// Ignores bits outside the opcode's format; throws IllegalOpcode.
Instruction decode(Word word);

// True when the word decodes and re-encodes to itself.
bool is_canonical(Word word);

// "ADD R1, R2", "LOADI R3, 0xFF", "BI 0x05", "NOP".
std::string to_string(const Instruction& instr);

struct RomImage {
  std::array<Word, kRomWords> words{};

  friend bool operator==(const RomImage&, const RomImage&) = default;
};

}  // namespace pec
