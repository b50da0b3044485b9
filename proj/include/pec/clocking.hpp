// Programmable on-chip oscillator. The 4-bit control word held in r_osc
// selects the cycle time; cycle time grows linearly with the word, from
// 1/134 MHz at 0 to 1/44 MHz at 15.

#pragma once

#include <cstdint>
#include <stdexcept>

namespace pec {

inline constexpr double kOscMaxHz = 134e6;
inline constexpr double kOscMinHz = 44e6;
inline constexpr int kOscControlWords = 16;

struct OscillatorSetting {
  std::uint8_t control_word = 0;
  double frequency_hz = 0;
  double cycle_time_s = 0;
};

// Throws std::out_of_range for control_word > 15.
double cycle_time_of(int control_word);
double frequency_of(int control_word);
OscillatorSetting oscillator_setting(int control_word);

}  // namespace pec
