// Straight-line reference interpreter used as a test oracle. It works on raw
// words with its own field extraction and semantics table, and shares no
// code with the simulator's fetch/decode/execute path. Branches are not
// supported: programs must be branch-free.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace pec::test {

struct ReferenceState {
  std::array<std::uint32_t, 8> regs{};
  bool z = false;
  bool l = false;
  std::array<std::uint32_t, 1024> ram{};
  std::uint32_t port0 = 0;
  std::uint32_t port1_pins = 0;
  std::uint32_t segments = 0;
  std::vector<std::uint8_t> uart_sent;
};

// Executes `words` in order. Returns false on a branch or unassigned opcode.
bool reference_run(ReferenceState& s, const std::vector<std::uint16_t>& words);

}  // namespace pec::test
