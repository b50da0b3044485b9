#include "pec/clocking.hpp"

#include <fmt/format.h>

namespace pec {

double cycle_time_of(int control_word) {
  if (control_word < 0 || control_word >= kOscControlWords)
    throw std::out_of_range(fmt::format("oscillator control word {} not in 0..15", control_word));
  constexpr double fastest = 1.0 / kOscMaxHz;
  constexpr double slowest = 1.0 / kOscMinHz;
  return fastest + control_word * (slowest - fastest) / (kOscControlWords - 1);
}

double frequency_of(int control_word) { return 1.0 / cycle_time_of(control_word); }

OscillatorSetting oscillator_setting(int control_word) {
  const double t = cycle_time_of(control_word);
  return {static_cast<std::uint8_t>(control_word), 1.0 / t, t};
}

}  // namespace pec
