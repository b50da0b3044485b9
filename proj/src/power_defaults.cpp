#include "pec/power.hpp"

namespace pec {

// Produced by `pec calibrate --rom benchmarks/reference.hex` against the
// 273 mW ungated / 182 mW gated targets at 273/3.62 MHz (1322-cycle trace of
// benchmarks/reference.asm under the default gating policy). Mirrors
// config/default.cfg; the power tests recalibrate and compare against both.
PowerConfig default_power_config() {
  PowerConfig c;
  c.vdd = 2.4;
  c.vswing = 2.4;
  c.frequency_hz = kReferenceFrequencyHz;
  c.control_cap = 3.835328117e-10;
  c.module_cap[bit(Module::RegFile)] = 4.637905998e-11;
  c.module_cap[bit(Module::Alu)] = 3.478429498e-11;
  c.module_cap[bit(Module::Ram)] = 9.275811995e-11;
  c.module_cap[bit(Module::Rom)] = 4.637905998e-11;
  c.module_cap[bit(Module::Port0)] = 2.898691248e-12;
  c.module_cap[bit(Module::Port1)] = 2.898691248e-12;
  c.module_cap[bit(Module::Uart)] = 1.449345624e-11;
  c.module_cap[bit(Module::SevenSeg)] = 4.348036873e-12;
  return c;
}

}  // namespace pec
