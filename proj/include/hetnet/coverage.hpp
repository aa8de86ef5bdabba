#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "hetnet/hetnet_model.hpp"
#include "hetnet/path_loss.hpp"

namespace hetnet {

/// Best received signal per pixel. Row 0 is the northern (max y) row; pixel
/// values are sampled at pixel centres.
struct RssGrid {
  GridSpec spec;
  std::vector<double> best_rss;          // dB(m)
  std::vector<std::uint8_t> best_tier;   // 1..4
  std::vector<std::int32_t> best_index;  // index into the tier's PointSet

  std::size_t size() const { return best_rss.size(); }
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(spec.nx) +
           static_cast<std::size_t>(col);
  }
  Point pixel_center(int row, int col) const;
};

struct CoverageReport {
  double threshold_db = 0.0;
  double uncovered_fraction = 0.0;
  /// Pixels covered at the threshold whose strongest signal is from tier t.
  std::array<double, kTierCount> covered_fraction{};
  /// Pixels whose strongest signal is from tier t, regardless of threshold.
  std::array<double, kTierCount> strongest_fraction{};
  double realized_power_w = 0.0;

  double covered_total() const { return 1.0 - uncovered_fraction; }
};

/// Max-RSS association over every base station of every layer (including
/// those in the buffer outside the grid window). Ties go to the lower tier,
/// then the lower index. Throws EmptyNetworkError without base stations.
RssGrid compute_rss_grid(std::span<const TierLayer> layers, const GridSpec& grid,
                         const PathLossModel& model);
RssGrid compute_rss_grid(const NetworkRealization& realization, const GridSpec& grid,
                         const PathLossModel& model);

CoverageReport coverage_report(const RssGrid& grid, double threshold_db);
/// As above, with the realization's in-window transmit power attached.
CoverageReport coverage_report(const RssGrid& grid, double threshold_db,
                               const NetworkRealization& realization);

/// Distance at which a transmitter of `tx_power_dbm` is received exactly at
/// `threshold_db`: d0 * 10^((tx - threshold) / (10 alpha)).
double coverage_radius(double tx_power_dbm, double threshold_db, const PathLossModel& model);

/// Macro-only homogeneous PPP used to pin down the path loss exponent.
struct MacroCalibration {
  double intensity = 0.25;
  double power_dbm = 50.0;
  double threshold_db = -30.0;
  double reference_distance = 0.01;
};

/// Exponent alpha for which a macro-only PPP covers `target` of the plane:
/// solves exp(-lambda pi d^2) = 1 - target for d, then inverts the path loss
/// at the threshold. Throws ParameterError for target outside (0, 1) and
/// CalibrationError when the critical distance does not exceed d0 or the
/// transmit power does not exceed the threshold.
double calibrate_alpha(double target_covered_fraction, const MacroCalibration& macro);

}  // namespace hetnet
