#include "pec/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

#include <fmt/format.h>

namespace pec {

ConfigError::ConfigError(int line, const std::string& detail)
    : std::runtime_error(line > 0 ? fmt::format("line {}: {}", line, detail) : detail),
      line_(line) {}

SimOptions Config::sim_options(bool gating) const {
  SimOptions o;
  o.policy = policy;
  o.gating = gating;
  o.baud_divisor = baud_divisor;
  o.port1_source = port1_source;
  return o;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename F>
void for_each_line(std::string_view text, F&& f) {
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) f(line, line_no);
  }
}

double parse_double(std::string_view v, int line) {
  const std::string s(v);
  char* end = nullptr;
  const double d = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    throw ConfigError(line, fmt::format("expected a number, got '{}'", v));
  return d;
}

long parse_integer(std::string_view v, int line, int base = 10) {
  if (base == 16 && v.size() > 2 && v[0] == '0' && (v[1] == 'x' || v[1] == 'X')) v.remove_prefix(2);
  long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out, base);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError(line, fmt::format("expected an integer, got '{}'", v));
  return out;
}

}  // namespace

Config parse_config(std::string_view text, Config base) {
  Config c = std::move(base);
  bool explicit_port1_uart_gate = false;

  for_each_line(text, [&](std::string_view line, int n) {
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(n, "expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));

    if (key == "osc.control_word") {
      const long w = parse_integer(value, n);
      if (w < 0 || w > 15) throw ConfigError(n, "osc.control_word must be 0..15");
      c.osc_control_word = static_cast<int>(w);
    } else if (key == "power.freq_mhz") {
      c.power.frequency_hz = parse_double(value, n) * 1e6;
    } else if (key == "power.vdd") {
      c.power.vdd = parse_double(value, n);
    } else if (key == "power.vswing") {
      c.power.vswing = parse_double(value, n);
    } else if (key.starts_with("power.cap.")) {
      const auto name = key.substr(10);
      const double cap = parse_double(value, n);
      if (name == "control") {
        c.power.control_cap = cap;
      } else if (auto m = module_from_name(name)) {
        c.power.module_cap[bit(*m)] = cap;
      } else {
        throw ConfigError(n, fmt::format("unknown module '{}'", name));
      }
    } else if (key.starts_with("gate.")) {
      const auto rest = key.substr(5);
      const auto dot = rest.find('.');
      if (dot == std::string_view::npos) throw ConfigError(n, "expected gate.<OPCODE>.<module>");
      const auto op = opcode_from_mnemonic(rest.substr(0, dot));
      if (!op) throw ConfigError(n, fmt::format("unknown opcode '{}'", rest.substr(0, dot)));
      const auto m = module_from_name(rest.substr(dot + 1));
      if (!m) throw ConfigError(n, fmt::format("unknown module '{}'", rest.substr(dot + 1)));
      if (value != "on" && value != "off") throw ConfigError(n, "gate value must be on or off");
      c.policy.set_execute(*op, *m, value == "on");
      if (*op == Opcode::PORT1 && *m == Module::Uart) explicit_port1_uart_gate = true;
    } else if (key == "uart.divisor") {
      const long d = parse_integer(value, n);
      if (d < 1) throw ConfigError(n, "uart.divisor must be at least 1");
      c.baud_divisor = static_cast<std::uint32_t>(d);
    } else if (key == "port1.source") {
      if (value == "pins") {
        c.port1_source = Port1Source::Pins;
      } else if (value == "uart_rx") {
        c.port1_source = Port1Source::UartRx;
      } else {
        throw ConfigError(n, "port1.source must be pins or uart_rx");
      }
    } else {
      throw ConfigError(n, fmt::format("unknown key '{}'", key));
    }
  });

  // Reading port 1 from the receive FIFO pops it, so the UART needs a clock.
  if (c.port1_source == Port1Source::UartRx && !explicit_port1_uart_gate)
    c.policy.set_execute(Opcode::PORT1, Module::Uart, true);

  try {
    validate(c.power);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(0, e.what());
  }
  return c;
}

std::string format_power_config(const PowerConfig& p, std::string_view comment) {
  std::string out;
  if (!comment.empty()) {
    for_each_line(comment, [&](std::string_view line, int) { out += fmt::format("# {}\n", line); });
  }
  out += fmt::format("power.freq_mhz = {:.9g}\n", p.frequency_hz / 1e6);
  out += fmt::format("power.vdd = {:g}\n", p.vdd);
  out += fmt::format("power.vswing = {:g}\n", p.vswing);
  out += fmt::format("power.cap.control = {:.9e}\n", p.control_cap);
  for (Module m : kAllModules)
    out += fmt::format("power.cap.{} = {:.9e}\n", to_string(m), p.module_cap[bit(m)]);
  return out;
}

std::vector<Injection> parse_injection_script(std::string_view text) {
  std::vector<Injection> out;
  for_each_line(text, [&](std::string_view line, int n) {
    std::vector<std::string_view> fields;
    while (!line.empty()) {
      const auto sp = line.find_first_of(" \t");
      fields.push_back(line.substr(0, sp));
      line = sp == std::string_view::npos ? std::string_view{} : trim(line.substr(sp));
    }
    Injection inj;
    const long cycle = parse_integer(fields[0], n);
    if (cycle < 0) throw ConfigError(n, "negative cycle");
    inj.cycle = static_cast<std::uint64_t>(cycle);
    if (fields.size() < 2) throw ConfigError(n, "missing injection kind");
    const std::string_view kind = fields[1];
    const bool takes_value = kind == "port1" || kind == "uart_rx";
    if (fields.size() != (takes_value ? 3u : 2u))
      throw ConfigError(n, fmt::format("wrong field count for '{}'", kind));
    if (takes_value) {
      const long v = parse_integer(fields[2], n, 16);
      if (v < 0 || v > 0xFF) throw ConfigError(n, "injected value must be one byte");
      inj.value = static_cast<std::uint8_t>(v);
      inj.kind = kind == "port1" ? Injection::Kind::Port1 : Injection::Kind::UartRx;
    } else if (kind == "idle") {
      inj.kind = Injection::Kind::Idle;
    } else if (kind == "irq") {
      inj.kind = Injection::Kind::Interrupt;
    } else if (kind == "reset") {
      inj.kind = Injection::Kind::Reset;
    } else {
      throw ConfigError(n, fmt::format("unknown injection '{}'", kind));
    }
    out.push_back(inj);
  });
  return out;
}

std::string format_trace_csv(const std::vector<CycleRecord>& trace) {
  std::string out = "cycle,pc,fsm_state,opcode";
  for (Module m : kAllModules) {
    out += ',';
    out += to_string(m);
  }
  out += '\n';
  for (const auto& r : trace) {
    out += fmt::format("{},{},{},{}", r.cycle, r.pc, to_string(r.state),
                       r.opcode ? mnemonic(*r.opcode) : std::string_view("-"));
    for (Module m : kAllModules) {
      out += r.enables.test(bit(m)) ? ",1" : ",0";
    }
    out += '\n';
  }
  return out;
}

std::string format_io_csv(const std::vector<IoEvent>& events) {
  std::string out = "cycle,device,direction,value\n";
  for (const auto& e : events)
    out += fmt::format("{},{},{},0x{:02X}\n", e.cycle, to_string(e.device), to_string(e.direction),
                       e.value);
  return out;
}

}  // namespace pec
