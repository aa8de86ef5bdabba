#pragma once

#include <iosfwd>
#include <span>

#include "hetnet/coverage.hpp"
#include "hetnet/hetnet_model.hpp"
#include "hetnet/statistics.hpp"

namespace hetnet {

/// Every base station of the sampling window, tier by tier.
/// Header: `tier,index,x,y,tx_power_dbm,in_window`. The zero-based data row
/// number is the transmitter id used by write_association_csv.
void write_points_csv(const NetworkRealization& realization, std::ostream& out);

/// Best RSS raster: one `#` comment line describing the grid, then ny rows of
/// nx comma-separated values, north row first.
void write_rss_csv(const RssGrid& grid, std::ostream& out);

/// Association raster in the same layout as write_rss_csv; each value is the
/// transmitter id (points CSV row) of the strongest base station.
void write_association_csv(const RssGrid& grid, const NetworkRealization& realization,
                           std::ostream& out);

/// Binary PGM (P5, maxval 4): tier id of the strongest base station where the
/// best RSS reaches the threshold, 0 where uncovered. North row first.
void write_coverage_pgm(const RssGrid& grid, double threshold_db, std::ostream& out);

/// Header: `metric,count,mean,std_dev,std_error,ci99_low,ci99_high`.
void write_summary_csv(std::span<const McSummary> summaries, std::ostream& out);

}  // namespace hetnet
