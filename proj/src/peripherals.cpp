#include "pec/peripherals.hpp"

#include <algorithm>
#include <array>

namespace pec {

std::uint8_t port_io(PortState& ports, PortAccess access, std::uint8_t value) {
  if (access == PortAccess::Write0) {
    ports.port0_latch = value;
    return value;
  }
  ports.port1_sample = ports.port1_input;
  return ports.port1_sample;
}

TxOverflow::TxOverflow() : PeripheralOverflow("UART transmit FIFO overflow") {}
RxOverflow::RxOverflow() : PeripheralOverflow("UART receive FIFO overflow") {}

void uart_send(UartModel& uart, std::uint8_t byte) {
  if (uart.tx_queue.size() >= kUartFifoDepth) throw TxOverflow();
  uart.tx_queue.push_back(byte);
}

std::vector<std::uint8_t> uart_tick(UartModel& uart, std::uint64_t elapsed_cycles) {
  std::vector<std::uint8_t> emitted;
  const std::uint32_t divisor = std::max<std::uint32_t>(uart.baud_divisor, 1);
  while (elapsed_cycles > 0 && !uart.tx_queue.empty()) {
    if (uart.tx_busy_cycles == 0) uart.tx_busy_cycles = divisor;
    const auto step = std::min<std::uint64_t>(elapsed_cycles, uart.tx_busy_cycles);
    uart.tx_busy_cycles -= static_cast<std::uint32_t>(step);
    elapsed_cycles -= step;
    if (uart.tx_busy_cycles == 0) {
      emitted.push_back(uart.tx_queue.front());
      uart.tx_queue.pop_front();
    }
  }
  return emitted;
}

void uart_inject_rx(UartModel& uart, std::uint8_t byte) {
  if (uart.rx_queue.size() >= kUartFifoDepth) throw RxOverflow();
  uart.rx_queue.push_back(byte);
}

std::uint8_t uart_read_rx(UartModel& uart) {
  if (uart.rx_queue.empty()) return 0;
  const std::uint8_t b = uart.rx_queue.front();
  uart.rx_queue.pop_front();
  return b;
}

std::uint8_t bcd_to_7seg(std::uint8_t digit) {
  static constexpr std::array<std::uint8_t, 10> kSegments{
      0x3F, 0x06, 0x5B, 0x4F, 0x66, 0x6D, 0x7D, 0x07, 0x7F, 0x6F};
  digit &= 0x0F;
  return digit < kSegments.size() ? kSegments[digit] : 0;
}

void drive_7seg(SevenSegState& display, std::uint8_t value) {
  display.last_digit = value & 0x0F;
  display.segments = bcd_to_7seg(display.last_digit);
}

std::string_view to_string(IoDevice d) {
  switch (d) {
    case IoDevice::Port0: return "port0";
    case IoDevice::Port1: return "port1";
    case IoDevice::Uart: return "uart";
    case IoDevice::SevenSeg: return "sevenseg";
  }
  return "?";
}

std::string_view to_string(IoDirection d) { return d == IoDirection::In ? "in" : "out"; }

}  // namespace pec
