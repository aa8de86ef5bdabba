#pragma once

namespace hetnet {

/// Power-law path loss (d / d0)^(-alpha), distances clamped below at d0.
struct PathLossModel {
  double reference_distance = 0.01;  // d0
  double exponent = 3.58;            // alpha

  /// Throws ParameterError unless d0 > 0 and alpha > 0.
  void validate() const;
};

/// Received signal strength in dB(m): tx - 10 alpha log10(max(d, d0) / d0).
double rss_db(double tx_power_dbm, double distance, const PathLossModel& model);

}  // namespace hetnet
