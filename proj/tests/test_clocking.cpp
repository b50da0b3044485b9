#include <doctest.h>

#include <cmath>

#include "pec/clocking.hpp"

using namespace pec;

TEST_CASE("oscillator endpoints") {
  CHECK(frequency_of(0) == doctest::Approx(134e6).epsilon(1e-12));
  CHECK(frequency_of(15) == doctest::Approx(44e6).epsilon(1e-12));
}

TEST_CASE("interior word interpolates linearly in cycle time") {
  // T(7) = 1/134 MHz + 7/15 (1/44 MHz - 1/134 MHz), computed by hand:
  // 7.462687 ns + 7/15 * 15.264586 ns = 14.586160 ns -> 68.5581 MHz
  CHECK(cycle_time_of(7) == doctest::Approx(14.586160e-9).epsilon(1e-6));
  CHECK(frequency_of(7) / 1e6 == doctest::Approx(68.5581).epsilon(1e-5));
}

TEST_CASE("frequency strictly decreases with the control word") {
  for (int w = 0; w < 15; ++w) CHECK(frequency_of(w + 1) < frequency_of(w));
}

TEST_CASE("cycle time steps are uniform") {
  const double step = cycle_time_of(1) - cycle_time_of(0);
  for (int w = 1; w < 15; ++w)
    CHECK(cycle_time_of(w + 1) - cycle_time_of(w) == doctest::Approx(step).epsilon(1e-9));
}

TEST_CASE("setting is self-consistent and in range") {
  for (int w = 0; w < 16; ++w) {
    const auto s = oscillator_setting(w);
    CHECK(s.control_word == w);
    CHECK(std::abs(s.frequency_hz * s.cycle_time_s - 1.0) < 1e-12);
    CHECK(std::abs(1.0 / s.frequency_hz - cycle_time_of(w)) < 1e-12);
    CHECK(s.frequency_hz >= 44e6 * (1 - 1e-12));
    CHECK(s.frequency_hz <= 134e6 * (1 + 1e-12));
  }
}

TEST_CASE("out-of-range control word") {
  CHECK_THROWS_AS(frequency_of(16), std::out_of_range);
  CHECK_THROWS_AS(frequency_of(-1), std::out_of_range);
}
