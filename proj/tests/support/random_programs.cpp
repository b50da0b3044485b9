#include "support/random_programs.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace pec::test {

std::string source_path(const std::string& relative) {
  return std::string(PEC_SOURCE_DIR) + "/" + relative;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Instruction random_instruction(std::mt19937_64& rng, bool allow_branches) {
  static const std::vector<Opcode> with = [] {
    std::vector<Opcode> v;
    for (const auto& e : opcode_table()) v.push_back(e.opcode);
    return v;
  }();
  static const std::vector<Opcode> without = [] {
    std::vector<Opcode> v;
    for (const auto& e : opcode_table())
      if (!is_branch(e.opcode)) v.push_back(e.opcode);
    return v;
  }();
  const auto& pool = allow_branches ? with : without;
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> reg(0, 7);
  std::uniform_int_distribution<int> byte(0, 255);
  Instruction i;
  i.opcode = pool[pick(rng)];
  i.rd = static_cast<std::uint8_t>(reg(rng));
  i.rs = static_cast<std::uint8_t>(reg(rng));
  i.operand8 = static_cast<std::uint8_t>(byte(rng));
  return canonical(i);
}

RomImage random_program(std::mt19937_64& rng, int length, bool allow_branches) {
  RomImage img;
  for (int a = 0; a < length && a < kRomWords; ++a)
    img.words[a] = encode(random_instruction(rng, allow_branches));
  return img;
}

RomImage random_image(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> word(0, 0xFFFF);
  RomImage img;
  for (auto& w : img.words) w = static_cast<Word>(word(rng));
  return img;
}

}  // namespace pec::test
