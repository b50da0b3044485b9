// Activity-based dynamic power: each clocked block dissipates
//
//   P = f * C * Vdd * Vswing * duty
//
// where duty is the fraction of cycles its clock was enabled. The control
// path (FSM, decoder, clock tree root) is always clocked. The ungated figure
// is the same sum with every duty at 1.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pec/control.hpp"
#include "pec/simulator.hpp"

namespace pec {

struct PowerConfig {
  double vdd = 2.4;
  double vswing = 2.4;
  double frequency_hz = 0;
  // Effective switched capacitance, farads.
  std::array<double, kModuleCount> module_cap{};
  double control_cap = 0;

  double total_cap() const;
  friend bool operator==(const PowerConfig&, const PowerConfig&) = default;
};

// Throws std::invalid_argument unless voltages and frequency are positive,
// vswing <= vdd, and capacitances are non-negative with a positive sum.
void validate(const PowerConfig& config);

class PowerError : public std::runtime_error {
 public:
  enum class Kind { EmptyTrace, InfeasibleTargets };
  PowerError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class ActivityTrace {
 public:
  ActivityTrace() = default;
  explicit ActivityTrace(std::vector<ModuleMask> cycles) : cycles_(std::move(cycles)) {}
  static ActivityTrace from_records(const std::vector<CycleRecord>& records);

  void push(ModuleMask enables) { cycles_.push_back(enables); }
  std::uint64_t total_cycles() const { return cycles_.size(); }
  const std::vector<ModuleMask>& cycles() const { return cycles_; }

  std::array<std::uint64_t, kModuleCount> enabled_counts() const;
  std::array<double, kModuleCount> duties() const;

 private:
  std::vector<ModuleMask> cycles_;
};

struct ModulePower {
  double duty = 0;
  double gated_mw = 0;
  double ungated_mw = 0;
};

struct PowerReport {
  std::array<ModulePower, kModuleCount> modules{};
  ModulePower control;
  double total_gated_mw = 0;
  double total_ungated_mw = 0;
  double savings_percent = 0;
  double mw_per_mhz_ungated = 0;
  double frequency_hz = 0;
  double vdd = 0;
  double vswing = 0;
  std::uint64_t cycles = 0;
};

PowerReport estimate(const ActivityTrace& trace, const PowerConfig& config);

// Sum of C * Vdd * Vswing expressed as mW per MHz of clock.
double power_per_mhz(const PowerConfig& config);

struct CalibrationTargets {
  double ungated_mw = 0;
  double gated_mw = 0;
};

// Rescales `base` so that estimate() on `reference` yields both targets at
// base.frequency_hz. The relative split among the eight gated modules is
// taken from base.module_cap; the control share is solved for. Throws
// PowerError::InfeasibleTargets when no non-negative split exists.
PowerConfig calibrate(const ActivityTrace& reference, CalibrationTargets targets,
                      const PowerConfig& base);

// Uncalibrated starting point: 2.4 V full swing, relative module sizes
// estimated from block contents (flip-flop and bit-cell counts), control
// share zero.
PowerConfig prior_power_config(double frequency_hz);

// Clock at which the 273 mW ungated figure equals 3.62 mW/MHz.
inline constexpr double kReferenceUngatedMw = 273.0;
inline constexpr double kReferenceGatedMw = 182.0;
inline constexpr double kReferenceMwPerMhz = 3.62;
inline constexpr double kReferenceFrequencyHz = kReferenceUngatedMw / kReferenceMwPerMhz * 1e6;

// The calibrated table committed with the project.
PowerConfig default_power_config();

struct ReportHeader {
  std::optional<std::string> timestamp;
  std::optional<int> osc_control_word;
  bool gating = true;
};

std::string format_report_text(const PowerReport& report, const ReportHeader& header);
// Columns: module, duty, mw_gated, mw_ungated. Rows per module, control, total.
std::string format_report_csv(const PowerReport& report);

}  // namespace pec
