// Two-pass assembler, disassembler and the ROM image text format.
//
// Source grammar, one statement per line:
//
//   [label:] [MNEMONIC [operand[, operand]]] [; comment]
//   [label:] .org <address>
//   [label:] .word <value>
//
// Registers are R0..R7. Numbers are decimal or 0x-prefixed hex. Any operand8
// or .word value may be a label. Mnemonics and register names are
// case-insensitive; labels are not.

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pec/isa.hpp"

namespace pec {

enum class AsmErrorKind {
  Syntax,
  UnknownMnemonic,
  UndefinedLabel,
  DuplicateLabel,
  OperandOutOfRange,
  ProgramTooLarge,
  OverlappingCode,
};

std::string_view to_string(AsmErrorKind kind);

class AsmError : public std::runtime_error {
 public:
  AsmError(AsmErrorKind kind, int line, int column, const std::string& detail);

  AsmErrorKind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  AsmErrorKind kind_;
  int line_;
  int column_;
};

using SymbolTable = std::map<std::string, int, std::less<>>;

struct Assembly {
  RomImage image;
  SymbolTable symbols;
};

Assembly assemble(std::string_view source);

// One line per ROM word. Words that do not decode to a canonical instruction
// are written as ".word 0xNNNN" so that assemble(disassemble(img)) == img.
std::string disassemble(const RomImage& image);

// ROM image file: exactly 256 lines of four hex digits, MSB nibble first.
std::string format_rom_image(const RomImage& image);

class RomFormatError : public std::runtime_error {
 public:
  RomFormatError(int line, const std::string& detail);
  int line() const { return line_; }

 private:
  int line_;
};

RomImage parse_rom_image(std::string_view text);

}  // namespace pec
