#pragma once

// Conversions between the config file's units and the SI values used
// internally. Presets and the config parser share these functions.

#include "mstirap/linalg.hpp"

namespace mstirap::units {

inline double from_ns(double v) { return v * 1e-9; }
inline double to_ns(double seconds) { return seconds / 1e-9; }

/// f/2pi in MHz -> angular frequency in rad/s
inline double from_mhz_over_2pi(double v) { return v * kTwoPi * 1e6; }
inline double to_mhz_over_2pi(double rad_per_s) { return rad_per_s / (kTwoPi * 1e6); }

/// rate in 1/us (no 2pi) -> 1/s
inline double from_per_us(double v) { return v * 1e6; }
inline double to_per_us(double per_s) { return per_s / 1e6; }

}  // namespace mstirap::units
