// Plain-text run configuration (`key = value`, `#` comments), host injection
// scripts, and the CSV writers for traces and I/O logs.
//
// Recognised keys:
//   osc.control_word       0..15; selects the clock from the oscillator
//   power.freq_mhz         clock used when no oscillator word is given
//   power.vdd, power.vswing
//   power.cap.<module>     farads; <module> is a gated module or `control`
//   gate.<OPCODE>.<module> on|off; execute-cycle clock enable
//   uart.divisor           clocks per transmitted byte, >= 1
//   port1.source           pins|uart_rx

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pec/control.hpp"
#include "pec/peripherals.hpp"
#include "pec/power.hpp"
#include "pec/simulator.hpp"

namespace pec {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& detail);
  int line() const { return line_; }

 private:
  int line_;
};

struct Config {
  PowerConfig power = default_power_config();
  GatingPolicy policy = GatingPolicy::defaults();
  std::optional<int> osc_control_word;
  std::uint32_t baud_divisor = kDefaultBaudDivisor;
  Port1Source port1_source = Port1Source::Pins;

  SimOptions sim_options(bool gating) const;
};

// Applies the settings in `text` on top of `base`.
Config parse_config(std::string_view text, Config base = {});

// Writes the power table and oscillator choice in parse_config's syntax.
std::string format_power_config(const PowerConfig& power, std::string_view comment = {});

// Lines: `<cycle> port1 <hex>`, `<cycle> uart_rx <hex>`, and the controller
// pins `<cycle> idle`, `<cycle> irq`, `<cycle> reset`. `#` starts a comment.
std::vector<Injection> parse_injection_script(std::string_view text);

// Columns: cycle, pc, fsm_state, opcode, then one 0/1 column per module.
std::string format_trace_csv(const std::vector<CycleRecord>& trace);
// Columns: cycle, device, direction, value (hex).
std::string format_io_csv(const std::vector<IoEvent>& events);

}  // namespace pec
