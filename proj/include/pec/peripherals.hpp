// I/O blocks: output port 0, input port 1, a byte-level UART and the BCD to
// 7-segment driver.

#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace pec {

struct PortState {
  std::uint8_t port0_latch = 0;
  // Pin level driven by the host. Level-sensitive: reads do not consume it.
  std::uint8_t port1_input = 0;
  // Value captured by the last clocked PORT1 read.
  std::uint8_t port1_sample = 0;

  friend bool operator==(const PortState&, const PortState&) = default;
};

enum class PortAccess { Write0, Read1 };

// Write0 latches `value` and returns it; Read1 samples and returns the pins.
std::uint8_t port_io(PortState& ports, PortAccess access, std::uint8_t value = 0);

inline constexpr std::size_t kUartFifoDepth = 256;
inline constexpr std::uint32_t kDefaultBaudDivisor = 16;

class PeripheralOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TxOverflow : public PeripheralOverflow {
 public:
  TxOverflow();
};

class RxOverflow : public PeripheralOverflow {
 public:
  RxOverflow();
};

// Byte-granular UART. The byte at the head of tx_queue is on the wire; it is
// emitted once baud_divisor clocked cycles have elapsed since it started.
struct UartModel {
  std::deque<std::uint8_t> tx_queue;
  std::deque<std::uint8_t> rx_queue;
  std::uint32_t baud_divisor = kDefaultBaudDivisor;
  std::uint32_t tx_busy_cycles = 0;

  bool busy() const { return !tx_queue.empty(); }
  friend bool operator==(const UartModel&, const UartModel&) = default;
};

void uart_send(UartModel& uart, std::uint8_t byte);
std::vector<std::uint8_t> uart_tick(UartModel& uart, std::uint64_t elapsed_cycles);
// Host side of the receive path.
void uart_inject_rx(UartModel& uart, std::uint8_t byte);
// Pops the oldest received byte; 0 when nothing is pending.
std::uint8_t uart_read_rx(UartModel& uart);

// Segment bit i is segment 'a' + i (gfedcba, common cathode). Non-BCD
// digits 10..15 blank the display.
std::uint8_t bcd_to_7seg(std::uint8_t digit);

struct SevenSegState {
  std::uint8_t segments = 0;
  std::uint8_t last_digit = 0;

  friend bool operator==(const SevenSegState&, const SevenSegState&) = default;
};

void drive_7seg(SevenSegState& display, std::uint8_t value);

enum class IoDevice : std::uint8_t { Port0, Port1, Uart, SevenSeg };
enum class IoDirection : std::uint8_t { In, Out };

std::string_view to_string(IoDevice d);
std::string_view to_string(IoDirection d);

struct IoEvent {
  std::uint64_t cycle = 0;
  IoDevice device = IoDevice::Port0;
  IoDirection direction = IoDirection::Out;
  std::uint8_t value = 0;

  friend bool operator==(const IoEvent&, const IoEvent&) = default;
};

// Where a PORT1 read takes its byte from.
enum class Port1Source : std::uint8_t { Pins, UartRx };

struct Peripherals {
  PortState ports;
  UartModel uart;
  SevenSegState display;
  Port1Source port1_source = Port1Source::Pins;

  friend bool operator==(const Peripherals&, const Peripherals&) = default;
};

}  // namespace pec
