#include <doctest.h>

#include <random>

#include "pec/assembler.hpp"
#include "pec/simulator.hpp"
#include "support/checks.hpp"
#include "support/random_programs.hpp"

using namespace pec;

namespace {

Simulator sim_for(const std::string& source, SimOptions options = {}) {
  return Simulator(assemble(source).image, options);
}

std::vector<FsmState> states(const RunResult& r) {
  std::vector<FsmState> out;
  for (const auto& rec : r.trace) out.push_back(rec.state);
  return out;
}

}  // namespace

TEST_CASE("power-on walks reset1, reset2, then fetch/decode/execute") {
  Simulator sim = sim_for("NOP\nNOP");
  CHECK(sim.fsm_state() == FsmState::Reset1);
  const RunResult r = sim.run(8, true);
  using S = FsmState;
  CHECK(states(r) == std::vector<S>{S::Reset1, S::Reset2, S::Fetch, S::Decode, S::Execute,
                                    S::Fetch, S::Decode, S::Execute});
  CHECK(r.trace[2].pc == 0);
  CHECK(r.trace[5].pc == 1);
  CHECK_FALSE(r.trace[0].opcode.has_value());
  CHECK(r.trace[3].opcode == Opcode::NOP);
}

TEST_CASE("every instruction takes three clocks") {
  Simulator sim = sim_for("ADD R1, R2\nLOAD R0, 3\nBI next\nnext: UARTS R0\nh: BI h");
  sim.run(2, false);
  for (int i = 0; i < 4; ++i) {
    const std::uint64_t before = sim.state().cycles;
    sim.step();
    CHECK(sim.state().cycles - before == kCyclesPerInstruction);
  }
}

TEST_CASE("fetch clocks only the ROM and decode clocks nothing") {
  Simulator sim = sim_for("ADD R1, R2\nSTORE R1, 4\nB7S R1");
  const RunResult r = sim.run(11, false);
  for (const auto& rec : r.trace) {
    if (rec.state == FsmState::Fetch) CHECK(rec.enables == mask_of({Module::Rom}));
    if (rec.state == FsmState::Decode || rec.state == FsmState::Reset1 ||
        rec.state == FsmState::Reset2)
      CHECK(rec.enables.none());
  }
  CHECK(r.trace[4].enables == mask_of({Module::RegFile, Module::Alu}));
  CHECK(r.trace[7].enables == mask_of({Module::RegFile, Module::Ram}));
  CHECK(r.trace[10].enables == mask_of({Module::RegFile, Module::SevenSeg}));
}

TEST_CASE("with gating off every module is clocked every cycle") {
  SimOptions o;
  o.gating = false;
  Simulator sim = sim_for("ADD R1, R2\nNOP\nh: BI h", o);
  sim.schedule({{8, Injection::Kind::Idle, 0}});
  const RunResult r = sim.run(40, false);
  bool saw_idle = false;
  for (const auto& rec : r.trace) {
    CHECK(rec.enables.all());
    saw_idle |= rec.state == FsmState::Idle;
  }
  CHECK(saw_idle);
}

TEST_CASE("idle request and interrupt wake-up") {
  Simulator sim = sim_for("INC R0\nINC R0\nINC R0\nh: BI h");
  // The request is seen during the first instruction; the controller parks
  // after its execute cycle.
  sim.schedule({{3, Injection::Kind::Idle, 0}, {20, Injection::Kind::Interrupt, 0}});
  const RunResult r = sim.run(30, false);
  for (std::uint64_t c = 5; c < 20; ++c) {
    CHECK(r.trace[c].state == FsmState::Idle);
    CHECK(r.trace[c].enables.none());
  }
  CHECK(r.trace[20].state == FsmState::Idle);
  CHECK(r.trace[21].state == FsmState::Fetch);
  CHECK(r.trace[21].pc == 1);
  CHECK(sim.state().regs[0] == 3);
}

TEST_CASE("step refuses to wait forever in idle") {
  Simulator sim = sim_for("NOP");
  sim.request_idle();
  sim.step();
  CHECK(sim.fsm_state() == FsmState::Idle);
  CHECK_THROWS_AS(sim.step(), std::logic_error);
  sim.raise_interrupt();
  CHECK_NOTHROW(sim.step());
}

TEST_CASE("reset input restarts the program") {
  Simulator sim = sim_for("INC R0\nINC R0\nh: BI h");
  sim.schedule({{9, Injection::Kind::Reset, 0}});
  const RunResult r = sim.run(14, false);
  CHECK(r.trace[10].state == FsmState::Reset1);
  CHECK(r.trace[11].state == FsmState::Reset2);
  CHECK(r.trace[12].state == FsmState::Fetch);
  CHECK(r.trace[12].pc == 0);
  CHECK(sim.state().cycles == 14);
}

TEST_CASE("illegal opcode is reported with cycle and pc") {
  Simulator sim = sim_for("NOP\n.word 0xA800");
  try {
    sim.run(100, true);
    FAIL("expected an illegal opcode");
  } catch (const SimulationError& e) {
    CHECK(e.kind() == SimulationError::Kind::IllegalOpcode);
    CHECK(e.pc() == 1);
    CHECK(e.cycle() == 6);  // decode of the second word
  }
}

TEST_CASE("transmit FIFO overflow") {
  Simulator sim = sim_for("loop: UARTS R0\nBI loop");
  try {
    sim.run(100000, false);
    FAIL("expected an overflow");
  } catch (const SimulationError& e) {
    CHECK(e.kind() == SimulationError::Kind::TxOverflow);
    CHECK(e.pc() == 0);
  }
}

TEST_CASE("receive FIFO overflow from injections") {
  Simulator sim = sim_for("h: BI h");
  std::vector<Injection> inj;
  for (int i = 0; i < 300; ++i) inj.push_back({1, Injection::Kind::UartRx, 0x41});
  sim.schedule(inj);
  sim.tick();
  try {
    sim.tick();
    FAIL("expected an overflow");
  } catch (const SimulationError& e) {
    CHECK(e.kind() == SimulationError::Kind::RxOverflow);
  }
}

TEST_CASE("the UART stays clocked until its FIFO drains") {
  SimOptions o;
  o.baud_divisor = 4;
  Simulator sim = sim_for("LOADI R0, 0x41\nUARTS R0\nUARTS R0\nNOP\nNOP\nNOP\nh: BI h", o);
  const RunResult r = sim.run(100, true);
  std::vector<std::uint8_t> sent;
  for (const auto& e : r.io_events)
    if (e.device == IoDevice::Uart) sent.push_back(e.value);
  CHECK(sent == std::vector<std::uint8_t>{0x41, 0x41});

  // From the first UARTS execute cycle the clock is on until the last byte
  // leaves; after that only UARTS rows would enable it.
  const std::uint64_t first = 2 + 3 + 2;
  std::uint64_t last_uart = 0;
  for (const auto& e : r.io_events)
    if (e.device == IoDevice::Uart) last_uart = e.cycle;
  for (std::uint64_t c = first; c <= last_uart; ++c) CHECK(r.trace[c].enables.test(bit(Module::Uart)));
  for (std::uint64_t c = last_uart + 1; c < r.trace.size(); ++c)
    CHECK_FALSE(r.trace[c].enables.test(bit(Module::Uart)));
  CHECK(last_uart == first + 2 * 4 - 1);
}

TEST_CASE("port1 reads pins or the UART receive FIFO") {
  SUBCASE("pins") {
    Simulator sim = sim_for("PORT1 R1\nh: BI h");
    sim.schedule({{0, Injection::Kind::Port1, 0x5A}});
    sim.run(50, true);
    CHECK(sim.state().regs[1] == 0x5A);
    REQUIRE(sim.io_log().size() == 1);
    CHECK(sim.io_log()[0] == IoEvent{4, IoDevice::Port1, IoDirection::In, 0x5A});
  }
  SUBCASE("uart_rx") {
    SimOptions o;
    o.port1_source = Port1Source::UartRx;
    o.policy.set_execute(Opcode::PORT1, Module::Uart, true);
    Simulator sim = sim_for("PORT1 R1\nPORT1 R2\nPORT1 R3\nh: BI h", o);
    sim.schedule({{0, Injection::Kind::UartRx, 0x31}, {0, Injection::Kind::UartRx, 0x32},
                  {0, Injection::Kind::Port1, 0xEE}});
    sim.run(50, true);
    CHECK(sim.state().regs[1] == 0x31);
    CHECK(sim.state().regs[2] == 0x32);
    CHECK(sim.state().regs[3] == 0);
    CHECK(sim.io().uart.rx_queue.empty());
  }
}

TEST_CASE("injections arrive before their cycle and in order") {
  Simulator sim = sim_for("PORT1 R1\nPORT1 R2\nh: BI h");
  // unsorted on purpose; the second instruction's execute cycle is 7
  sim.schedule({{7, Injection::Kind::Port1, 0x22}, {0, Injection::Kind::Port1, 0x11},
                {8, Injection::Kind::Port1, 0x33}});
  sim.run(50, true);
  CHECK(sim.state().regs[1] == 0x11);
  CHECK(sim.state().regs[2] == 0x22);
}

TEST_CASE("run records one trace row per clock") {
  Simulator sim = sim_for("INC R0\nh: BI h");
  const RunResult r = sim.run(1000, true);
  CHECK(r.halted);
  CHECK(r.cycles_run == r.trace.size());
  for (std::size_t i = 0; i < r.trace.size(); ++i) CHECK(r.trace[i].cycle == i);
}

TEST_CASE("gating does not change what a program computes") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> byte(0, 255);
  for (int p = 0; p < 60; ++p) {
    const RomImage rom = test::random_program(rng, 50, true);
    const std::vector<Injection> inj{
        {10, Injection::Kind::Port1, static_cast<std::uint8_t>(byte(rng))},
        {30, Injection::Kind::UartRx, 0x42}};
    const std::string diff = test::gating_mismatch(rom, 2000, SimOptions{}, inj);
    REQUIRE_MESSAGE(diff.empty(), "program " << p << ": " << diff);
  }
}

TEST_CASE("idle periods are transparent for programs that do not transmit") {
  std::mt19937_64 rng(23);
  int tried = 0;
  while (tried < 40) {
    RomImage rom = test::random_program(rng, 50, true);
    for (Word& w : rom.words)
      if (w >> 11 == code_of(Opcode::UARTS)) w = 0;
    ++tried;
    const std::vector<Injection> inj{{200, Injection::Kind::Idle, 0},
                                     {260, Injection::Kind::Interrupt, 0}};
    const std::string diff = test::gating_mismatch(rom, 2000, SimOptions{}, inj);
    REQUIRE_MESSAGE(diff.empty(), "program " << tried << ": " << diff);
  }
}

TEST_CASE("idle stops a gated UART mid-byte; an ungated one keeps sending") {
  const RomImage rom = assemble("LOADI R0, 0x41\nUARTS R0\nh: BI h").image;
  const std::vector<Injection> inj{{5, Injection::Kind::Idle, 0},
                                   {40, Injection::Kind::Interrupt, 0}};
  auto sent_at = [&](bool gating) {
    SimOptions o;
    o.gating = gating;
    Simulator sim(rom, o);
    sim.schedule(inj);
    sim.run(200, false);
    REQUIRE(sim.io_log().size() == 1);
    return sim.io_log()[0].cycle;
  };
  // UARTS executes at cycle 7 and the controller then parks until 40.
  CHECK(sent_at(false) == 7 + kDefaultBaudDivisor - 1);
  CHECK(sent_at(true) > 40);
}

TEST_CASE("a module with its clock off keeps its state") {
  std::mt19937_64 rng(22);
  for (int p = 0; p < 30; ++p) {
    const RomImage rom = test::random_program(rng, 50, true);
    const std::vector<Injection> inj{{25, Injection::Kind::UartRx, 0x42},
                                     {300, Injection::Kind::Idle, 0},
                                     {340, Injection::Kind::Interrupt, 0}};
    const std::string diff = test::gated_module_change(rom, 1500, SimOptions{}, inj);
    REQUIRE_MESSAGE(diff.empty(), "program " << p << ": " << diff);
  }
}

TEST_CASE("module hash sees the state it claims to cover") {
  Simulator sim = sim_for("LOADI R0, 7\nSTORE R0, 9\nh: BI h");
  const auto ram0 = sim.module_hash(Module::Ram);
  const auto reg0 = sim.module_hash(Module::RegFile);
  sim.step();
  CHECK(sim.module_hash(Module::RegFile) != reg0);
  CHECK(sim.module_hash(Module::Ram) == ram0);
  sim.step();
  CHECK(sim.module_hash(Module::Ram) != ram0);
}

TEST_CASE("the whole-run checks catch a policy that starves a module") {
  const RomImage rom = assemble("LOADI R1, 3\nINC R1\nSTORE R1, 5\nh: BI h").image;
  SimOptions broken;
  broken.policy.set_execute(Opcode::INC, Module::Alu, false);
  CHECK_FALSE(test::gating_mismatch(rom, 100, broken).empty());
  CHECK(test::gating_mismatch(rom, 100, SimOptions{}).empty());

  // A module written without its clock would show up as a gated change; the
  // datapath honours enables, so the check stays quiet even with a bad policy.
  CHECK(test::gated_module_change(rom, 100, broken).empty());
}
