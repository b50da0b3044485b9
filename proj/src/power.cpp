#include "pec/power.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace pec {

double PowerConfig::total_cap() const {
  return std::accumulate(module_cap.begin(), module_cap.end(), control_cap);
}

void validate(const PowerConfig& c) {
  if (!(c.vdd > 0) || !(c.vswing > 0))
    throw std::invalid_argument("power: voltages must be positive");
  if (c.vswing > c.vdd) throw std::invalid_argument("power: vswing exceeds vdd");
  if (!(c.frequency_hz > 0)) throw std::invalid_argument("power: frequency must be positive");
  if (!(c.control_cap >= 0)) throw std::invalid_argument("power: negative control capacitance");
  for (Module m : kAllModules)
    if (!(c.module_cap[bit(m)] >= 0))
      throw std::invalid_argument(fmt::format("power: negative capacitance for {}", to_string(m)));
  if (!(c.total_cap() > 0)) throw std::invalid_argument("power: total capacitance is zero");
}

ActivityTrace ActivityTrace::from_records(const std::vector<CycleRecord>& records) {
  std::vector<ModuleMask> cycles;
  cycles.reserve(records.size());
  for (const auto& r : records) cycles.push_back(r.enables);
  return ActivityTrace(std::move(cycles));
}

std::array<std::uint64_t, kModuleCount> ActivityTrace::enabled_counts() const {
  std::array<std::uint64_t, kModuleCount> counts{};
  for (const ModuleMask& e : cycles_)
    for (std::size_t i = 0; i < kModuleCount; ++i) counts[i] += e.test(i);
  return counts;
}

std::array<double, kModuleCount> ActivityTrace::duties() const {
  std::array<double, kModuleCount> d{};
  if (cycles_.empty()) return d;
  const auto counts = enabled_counts();
  const auto n = static_cast<double>(cycles_.size());
  for (std::size_t i = 0; i < kModuleCount; ++i) d[i] = static_cast<double>(counts[i]) / n;
  return d;
}

namespace {

// mW dissipated by capacitance `cap` switching every cycle.
double full_activity_mw(const PowerConfig& c, double cap) {
  return c.frequency_hz * cap * c.vdd * c.vswing * 1e3;
}

}  // namespace

PowerReport estimate(const ActivityTrace& trace, const PowerConfig& config) {
  if (trace.total_cycles() == 0) throw PowerError(PowerError::Kind::EmptyTrace, "empty activity trace");
  validate(config);

  PowerReport r;
  r.frequency_hz = config.frequency_hz;
  r.vdd = config.vdd;
  r.vswing = config.vswing;
  r.cycles = trace.total_cycles();

  const auto duties = trace.duties();
  r.control = {1.0, full_activity_mw(config, config.control_cap),
               full_activity_mw(config, config.control_cap)};
  r.total_gated_mw = r.control.gated_mw;
  r.total_ungated_mw = r.control.ungated_mw;
  for (std::size_t i = 0; i < kModuleCount; ++i) {
    auto& mp = r.modules[i];
    mp.duty = duties[i];
    mp.ungated_mw = full_activity_mw(config, config.module_cap[i]);
    mp.gated_mw = mp.ungated_mw * mp.duty;
    r.total_gated_mw += mp.gated_mw;
    r.total_ungated_mw += mp.ungated_mw;
  }
  r.savings_percent = 100.0 * (1.0 - r.total_gated_mw / r.total_ungated_mw);
  r.mw_per_mhz_ungated = power_per_mhz(config);
  return r;
}

double power_per_mhz(const PowerConfig& config) {
  return config.total_cap() * config.vdd * config.vswing * 1e9;
}

PowerConfig calibrate(const ActivityTrace& reference, CalibrationTargets targets,
                      const PowerConfig& base) {
  if (reference.total_cycles() == 0)
    throw PowerError(PowerError::Kind::EmptyTrace, "empty reference trace");
  if (!(targets.ungated_mw > 0) || !(targets.gated_mw > 0))
    throw PowerError(PowerError::Kind::InfeasibleTargets, "targets must be positive");

  PowerConfig out = base;
  if (!(out.frequency_hz > 0)) throw std::invalid_argument("calibrate: base frequency not set");

  std::array<double, kModuleCount> weights = base.module_cap;
  double weight_sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(weight_sum > 0)) {
    weights = prior_power_config(base.frequency_hz).module_cap;
    weight_sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  }

  // Weighted duty of the gated part; the control share alpha then satisfies
  // gated/ungated = alpha + (1 - alpha) * weighted_duty.
  const auto duties = reference.duties();
  double weighted_duty = 0;
  for (std::size_t i = 0; i < kModuleCount; ++i) weighted_duty += weights[i] * duties[i];
  weighted_duty /= weight_sum;

  const double ratio = targets.gated_mw / targets.ungated_mw;
  constexpr double kEps = 1e-12;
  double alpha = 0;
  if (ratio > 1 + kEps || ratio < weighted_duty - kEps) {
    throw PowerError(PowerError::Kind::InfeasibleTargets,
                     fmt::format("gated/ungated ratio {:.4f} outside [{:.4f}, 1] reachable with "
                                 "this trace",
                                 ratio, weighted_duty));
  }
  if (1 - weighted_duty < kEps) {
    // Every weighted module always on: only equal targets are reachable, and
    // any split works; put everything on the control path.
    alpha = 1;
  } else {
    alpha = std::clamp((ratio - weighted_duty) / (1 - weighted_duty), 0.0, 1.0);
  }

  const double total_cap =
      targets.ungated_mw / (1e3 * out.frequency_hz * out.vdd * out.vswing);
  out.control_cap = alpha * total_cap;
  for (std::size_t i = 0; i < kModuleCount; ++i)
    out.module_cap[i] = (1 - alpha) * total_cap * weights[i] / weight_sum;
  return out;
}

PowerConfig prior_power_config(double frequency_hz) {
  PowerConfig c;
  c.frequency_hz = frequency_hz;
  // Relative clock load: clocked storage bits per block, with the RAM and ROM
  // counted by their row/column periphery rather than bit cells.
  c.module_cap[bit(Module::RegFile)] = 128;
  c.module_cap[bit(Module::Alu)] = 96;
  c.module_cap[bit(Module::Ram)] = 256;
  c.module_cap[bit(Module::Rom)] = 128;
  c.module_cap[bit(Module::Port0)] = 8;
  c.module_cap[bit(Module::Port1)] = 8;
  c.module_cap[bit(Module::Uart)] = 40;
  c.module_cap[bit(Module::SevenSeg)] = 12;
  const double sum = std::accumulate(c.module_cap.begin(), c.module_cap.end(), 0.0);
  // Normalise so the table sums to 1 pF.
  for (double& v : c.module_cap) v = v / sum * 1e-12;
  c.control_cap = 0;
  return c;
}

std::string format_report_text(const PowerReport& r, const ReportHeader& header) {
  std::string out = "PEC dynamic power report\n";
  if (header.timestamp) out += fmt::format("generated:  {}\n", *header.timestamp);
  if (header.osc_control_word)
    out += fmt::format("clock:      {:.3f} MHz (oscillator control word {})\n",
                       r.frequency_hz / 1e6, *header.osc_control_word);
  else
    out += fmt::format("clock:      {:.3f} MHz (reference)\n", r.frequency_hz / 1e6);
  out += fmt::format("supply:     vdd {:.3f} V, swing {:.3f} V\n", r.vdd, r.vswing);
  out += fmt::format("cycles:     {} ({} clocks per instruction)\n", r.cycles,
                     kCyclesPerInstruction);
  out += fmt::format("gating:     {}\n\n", header.gating ? "on" : "off");
  out += fmt::format("{:<10} {:>8} {:>12} {:>12}\n", "module", "duty", "gated mW", "ungated mW");
  for (Module m : kAllModules) {
    const auto& mp = r.modules[bit(m)];
    out += fmt::format("{:<10} {:>8.4f} {:>12.3f} {:>12.3f}\n", to_string(m), mp.duty,
                       mp.gated_mw, mp.ungated_mw);
  }
  out += fmt::format("{:<10} {:>8.4f} {:>12.3f} {:>12.3f}\n", "control", r.control.duty,
                     r.control.gated_mw, r.control.ungated_mw);
  out += fmt::format("{:<10} {:>8} {:>12.3f} {:>12.3f}\n\n", "total", "", r.total_gated_mw,
                     r.total_ungated_mw);
  out += fmt::format("savings:    {:.2f}%\n", r.savings_percent);
  out += fmt::format("ungated:    {:.4f} mW/MHz\n", r.mw_per_mhz_ungated);
  return out;
}

std::string format_report_csv(const PowerReport& r) {
  std::string out = "module,duty,mw_gated,mw_ungated\n";
  for (Module m : kAllModules) {
    const auto& mp = r.modules[bit(m)];
    out += fmt::format("{},{:.6f},{:.6f},{:.6f}\n", to_string(m), mp.duty, mp.gated_mw,
                       mp.ungated_mw);
  }
  out += fmt::format("control,{:.6f},{:.6f},{:.6f}\n", r.control.duty, r.control.gated_mw,
                     r.control.ungated_mw);
  out += fmt::format("total,,{:.6f},{:.6f}\n", r.total_gated_mw, r.total_ungated_mw);
  return out;
}

}  // namespace pec
